from typing import Any, Optional


class LiftExpanderError(Exception):
    """Базовое исключение библиотеки"""

    pass


class InvalidParameterError(LiftExpanderError, ValueError):
    """Некорректные входные параметры операции"""

    pass


class ParseError(LiftExpanderError, ValueError):
    """Ошибка разбора файла графа, разметки или цепочки лифтов"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"строка {line_number}: {message}"
        super().__init__(message)


class SizeLimitError(LiftExpanderError):
    """Перебор превышает настроенный предел"""

    def __init__(self, message: str, limit: int, actual: int, partial: Any = None):
        self.limit = limit
        self.actual = actual
        self.partial = partial
        super().__init__(f"{message} (предел {limit}, требуется {actual})")


class SolverFailureError(LiftExpanderError):
    """Собственные значения не сошлись с требуемой невязкой"""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (невязка {residual:.3e})")


class GenerationFailureError(LiftExpanderError):
    """Случайная генерация исчерпала число попыток"""

    pass


class GenerationRetryError(LiftExpanderError):
    """Одна попытка случайной генерации отклонена, можно повторить"""

    pass


class InternalConsistencyError(LiftExpanderError):
    """Нарушена внутренняя согласованность вычислений (ошибка решателя или лифта)"""

    pass


class PropertyViolationError(LiftExpanderError):
    """Нарушено свойство, которое обязано выполняться"""

    def __init__(self, message: str, report: Any = None):
        self.report = report
        super().__init__(message)
