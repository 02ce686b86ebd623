import time
from functools import wraps
from typing import Callable

from src.core.exceptions import GenerationFailureError, GenerationRetryError
from src.core.logging import get_logger

logger = get_logger(__name__)


class RetryConfig:
    """Конфигурация для retry логики."""

    def __init__(
        self,
        max_attempts: int = 3,
        base_delay: float = 0.0,
        max_delay: float = 0.0,
        exponential_base: float = 2.0,
        retryable_exceptions: tuple = (GenerationRetryError,),
    ):
        self.max_attempts = max_attempts
        self.base_delay = base_delay
        self.max_delay = max_delay
        self.exponential_base = exponential_base
        self.retryable_exceptions = retryable_exceptions


def calculate_delay(attempt: int, config: RetryConfig) -> float:
    """
    Вычисляет задержку для повторной попытки с экспоненциальным backoff.

    :param attempt: номер попытки (начиная с 1)
    :param config: конфигурация retry
    :return: время задержки в секундах
    """
    delay = config.base_delay * (config.exponential_base ** (attempt - 1))
    return min(delay, config.max_delay)


def retry_with_backoff(config: RetryConfig):
    """
    Декоратор для повторения отклоненных попыток случайной генерации.
    Исчерпание попыток превращается в GenerationFailureError.

    :param config: конфигурация retry
    """

    def decorator(func: Callable):
        @wraps(func)
        def wrapper(*args, **kwargs):
            last_exception = None

            for attempt in range(1, config.max_attempts + 1):
                try:
                    return func(*args, **kwargs)
                except config.retryable_exceptions as e:
                    last_exception = e
                    logger.debug(
                        f"попытка {attempt}/{config.max_attempts} для "
                        f"{func.__name__} отклонена: {e}"
                    )
                    delay = calculate_delay(attempt, config)
                    if delay > 0:
                        time.sleep(delay)

            logger.error(
                f"все {config.max_attempts} попыток исчерпаны для {func.__name__}."
            )
            raise GenerationFailureError(
                f"{func.__name__}: исчерпано {config.max_attempts} попыток, "
                f"последняя ошибка: {last_exception}"
            )

        return wrapper

    return decorator
