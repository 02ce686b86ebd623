from pathlib import Path
from typing import List, Optional, Tuple, Union

from src.application.services.sample_space import (
    ExplicitSigningSource,
    SpaceSigningSource,
    pair_space,
)
from src.core.abstractions.signing_source import SigningSource
from src.core.exceptions import InvalidParameterError, ParseError
from src.core.logging import get_logger
from src.core.models.graph import Graph, Signing
from src.core.models.signing import LiftChain

logger = get_logger(__name__)

PathLike = Union[str, Path]

_SIGN_TOKENS = {"+1": 1, "1": 1, "-1": -1}


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    """Непустые строки без комментариев с номерами (с 1)"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((number, body.split()))
    return lines


def _parse_int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} должно быть целым, получено {token!r}.", number)


def parse_graph_text(text: str) -> Tuple[Graph, Optional[Signing]]:
    """
    Разобрать текст графа: заголовок `n m [d]`, затем m строк `u v` или
    `u v s`, s ∈ {+1, -1}. Комментарии начинаются с #.
    :param text: содержимое файла
    :return: граф и разметка (None, если знаков нет)
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("пустой файл графа.", 1)

    number, header = lines[0]
    if len(header) not in (2, 3):
        raise ParseError("заголовок должен иметь вид `n m [d]`.", number)
    n, m = (_parse_int(t, number, "заголовок") for t in header[:2])
    d = _parse_int(header[2], number, "заголовок") if len(header) == 3 else None
    if n < 0 or m < 0:
        raise ParseError("n и m не могут быть отрицательными.", number)

    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else number
        raise ParseError(f"заявлено {m} ребер, найдено {len(body)}.", last)

    edges: List[Tuple[int, int]] = []
    signs: List[int] = []
    seen = set()
    signed: Optional[bool] = None
    for number, tokens in body:
        if len(tokens) not in (2, 3):
            raise ParseError("строка ребра должна иметь вид `u v [s]`.", number)
        if signed is None:
            signed = len(tokens) == 3
        elif signed != (len(tokens) == 3):
            raise ParseError("знаки заданы не у всех ребер.", number)
        u, v = (_parse_int(t, number, "вершина") for t in tokens[:2])
        if u == v:
            raise ParseError(f"петля в вершине {u}.", number)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"ребро ({u}, {v}) вне диапазона [0, {n}).", number)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"кратное ребро ({u}, {v}).", number)
        seen.add(key)
        edges.append((u, v))
        if signed:
            if tokens[2] not in _SIGN_TOKENS:
                raise ParseError(
                    f"знак должен быть +1 или -1, получено {tokens[2]}.", number
                )
            signs.append(_SIGN_TOKENS[tokens[2]])

    graph = Graph.from_edges(n, edges)
    if d is not None and not graph.is_regular(d):
        raise ParseError(f"граф не является {d}-регулярным.", lines[0][0])
    return graph, (Signing(signs=tuple(signs)) if signed else None)


def format_graph(graph: Graph, signing: Optional[Signing] = None) -> str:
    """
    Текст графа в формате parse_graph_text; степень пишется для регулярных графов
    :param graph: граф
    :param signing: разметка, если нужен знаковый файл
    :return: текст
    """
    header = [str(graph.n), str(graph.m)]
    if graph.n and graph.m and graph.is_regular():
        header.append(str(graph.regular_degree()))
    lines = [" ".join(header)]
    if signing is None:
        lines.extend(f"{u} {v}" for u, v in graph.edges)
    else:
        signing.check_aligned(graph)
        lines.extend(
            f"{u} {v} {'+1' if s > 0 else '-1'}"
            for (u, v), s in zip(graph.edges, signing.signs)
        )
    return "\n".join(lines) + "\n"


def _read_text(path: PathLike) -> str:
    path = Path(path)
    if not path.is_file():
        raise InvalidParameterError(f"файл {path} не найден.")
    return path.read_text(encoding="utf-8")


def read_graph_file(path: PathLike) -> Tuple[Graph, Optional[Signing]]:
    """Граф и разметка, если в файле заданы знаки"""
    return parse_graph_text(_read_text(path))


def read_graph(path: PathLike) -> Graph:
    graph, _ = read_graph_file(path)
    return graph


def read_signed_graph(path: PathLike) -> Tuple[Graph, Signing]:
    """
    Прочитать знаковый граф
    :param path: путь
    :return: граф и разметка
    """
    graph, signing = parse_graph_text(_read_text(path))
    if signing is None:
        raise ParseError(f"в файле {path} нет знаков ребер.", 1)
    return graph, signing


def read_signing(path: PathLike, graph: Optional[Graph] = None) -> Signing:
    """
    Прочитать разметку; если передан граф, ребра файла должны совпадать с ним
    по порядку
    """
    file_graph, signing = read_signed_graph(path)
    if graph is not None and (file_graph.n, file_graph.edges) != (graph.n, graph.edges):
        raise InvalidParameterError(f"ребра в {path} не совпадают с ребрами графа.")
    return signing


def write_graph(
    path: PathLike, graph: Graph, signing: Optional[Signing] = None
) -> Path:
    path = Path(path)
    path.write_text(format_graph(graph, signing), encoding="utf-8")
    logger.debug(f"граф n={graph.n}, m={graph.m} записан в {path}")
    return path


def read_chain(path: PathLike) -> LiftChain:
    """
    Прочитать цепочку лифтов: строка `base <путь>`, затем по строке на уровень
    `level s x y` или `level explicit <путь к знаковому графу>`.
    Относительные пути берутся от каталога файла цепочки.
    :param path: путь
    :return: LiftChain
    """
    path = Path(path)
    lines = _content_lines(_read_text(path))
    if not lines or lines[0][1][0] != "base" or len(lines[0][1]) != 2:
        raise ParseError("первая строка должна иметь вид `base <путь>`.", 1)
    base = read_graph(path.parent / lines[0][1][1])

    sources: List[SigningSource] = []
    for expected, (number, tokens) in enumerate(lines[1:], start=1):
        level = _parse_int(tokens[0], number, "уровень")
        if level != expected:
            raise ParseError(f"ожидался уровень {expected}, получен {level}.", number)
        level_n = base.n << (level - 1)
        if len(tokens) == 3 and tokens[1] == "explicit":
            graph, signing = read_signed_graph(path.parent / tokens[2])
            if graph.n != level_n:
                raise ParseError(
                    f"граф уровня {level} должен иметь {level_n} вершин.", number
                )
            source: SigningSource = ExplicitSigningSource(graph, signing, tokens[2])
        elif len(tokens) == 4:
            s, x, y = (_parse_int(t, number, "параметр") for t in tokens[1:])
            try:
                source = SpaceSigningSource(pair_space(level_n, s), (x, y), level_n)
            except InvalidParameterError as e:
                raise ParseError(str(e), number)
        else:
            raise ParseError(
                "уровень должен иметь вид `level s x y` или `level explicit <путь>`.",
                number,
            )
        sources.append(source)
    return LiftChain(base=base, sources=tuple(sources))


def write_chain(path: PathLike, chain: LiftChain) -> Path:
    """
    Записать цепочку лифтов рядом с базовым графом и знаковыми графами уровней.
    Явные разметки без сохраненного пути пишутся в `<имя>.level<i>.sg`.
    :param path: путь файла цепочки
    :param chain: цепочка
    :return: путь файла цепочки
    """
    path = Path(path)
    base_name = f"{path.stem}.base.g"
    write_graph(path.parent / base_name, chain.base)

    lines = [f"base {base_name}"]
    for level, source in enumerate(chain.sources, start=1):
        if isinstance(source, ExplicitSigningSource):
            name = source.path or f"{path.stem}.level{level}.sg"
            if source.path is None:
                write_graph(path.parent / name, source.graph, source.signing)
            lines.append(f"{level} explicit {name}")
        else:
            lines.append(f"{level} {source.describe()}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug(f"цепочка глубины {chain.depth} записана в {path}")
    return path
