import logging
import sys

from src.core.config import config

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"


def get_logger(name: str) -> logging.Logger:
    """
    Получить логгер. Вывод идет в stderr, stdout остается под отчеты CLI
    :param name: название логгера
    :return: логгер
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        logger.setLevel(config.LOG_LEVEL)
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(config.LOG_LEVEL)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
        logger.propagate = False
    return logger
