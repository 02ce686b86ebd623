from enum import Enum


class SigningStrategy(str, Enum):
    """
    Enum со стратегиями поиска знаковой разметки
    """

    RANDOM = "random"
    DERANDOMIZED = "derandomized"
    SAMPLE_SPACE = "sample-space"
    LOCAL_REFINE = "local-refine"


class RoundingMode(str, Enum):
    """
    Enum с режимами диадического округления
    """

    DETERMINISTIC = "deterministic"
    RANDOM = "random"


class SpaceObjective(str, Enum):
    """
    Что минимизируется при обходе выборочного пространства
    """

    X_VALUE = "x"
    GOODNESS = "goodness"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
