from abc import ABC, abstractmethod

from src.core.models.graph import Graph, Signing


class SigningSource(ABC):
    """
    Базовый класс источника знаков одного уровня цепочки лифтов
    """

    @abstractmethod
    def sign_of(self, u: int, v: int) -> int:
        """
        Знак ребра (u, v) графа уровня
        :param u: вершина
        :param v: вершина
        :return: +1 или -1
        """
        pass

    @abstractmethod
    def describe(self) -> str:
        """
        Строка описания источника для файла цепочки (без номера уровня)
        """
        pass

    def signing_for(self, graph: Graph) -> Signing:
        """
        Разметка, выровненная по ребрам графа уровня
        :param graph: граф уровня
        :return: разметка
        """
        return Signing(signs=tuple(self.sign_of(u, v) for u, v in graph.edges))
