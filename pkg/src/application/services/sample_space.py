from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from src.application.services.graphs import two_lift
from src.core.abstractions.signing_source import SigningSource
from src.core.config import config
from src.core.exceptions import InvalidParameterError, SizeLimitError
from src.core.logging import get_logger
from src.core.models.graph import Graph, Signing
from src.core.models.signing import LiftChain, SampleSpace

logger = get_logger(__name__)

SeedPair = Tuple[int, int]


def _clmul(a: int, b: int) -> int:
    """Умножение многочленов над GF(2) в битовой записи"""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def _poly_mod(a: int, f: int) -> int:
    deg_f = f.bit_length() - 1
    while a and a.bit_length() - 1 >= deg_f:
        a ^= f << (a.bit_length() - 1 - deg_f)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def gf_mul(a: int, b: int, modulus: int) -> int:
    return _poly_mod(_clmul(a, b), modulus)


def gf_pow(x: int, e: int, modulus: int) -> int:
    """x^e в GF(2^s); 0^0 = 1"""
    result = 1
    while e:
        if e & 1:
            result = gf_mul(result, x, modulus)
        x = gf_mul(x, x, modulus)
        e >>= 1
    return result


def _is_irreducible(f: int) -> bool:
    # f неприводим, если gcd(f, x^(2^i) - x) = 1 для всех i <= deg/2
    s = f.bit_length() - 1
    h = 2
    for _ in range(s // 2):
        h = gf_mul(h, h, f)
        if _poly_gcd(f, h ^ 2) != 1:
            return False
    return True


@lru_cache(maxsize=64)
def irreducible_polynomial(s: int) -> int:
    """
    Лексикографически наименьший неприводимый многочлен степени s с ненулевым
    свободным членом
    :param s: степень, не меньше 1
    :return: многочлен в битовой записи
    """
    if s < 1:
        raise InvalidParameterError("степень поля должна быть не меньше 1.")
    for low in range(1, 1 << s, 2):
        f = (1 << s) | low
        if _is_irreducible(f):
            return f
    raise InvalidParameterError(f"не найден неприводимый многочлен степени {s}.")


def epsilon_biased_space(m: int, s: int, k: int = 4) -> SampleSpace:
    """
    Пространство строк длины m: бит позиции i для зерна (x, y) равен
    скалярному произведению битовых записей x^i и y в GF(2^s).
    Смещение любой непустой четности не больше (m-1)/2^s.
    :param m: длина строки
    :param s: логарифм размера поля
    :param k: глубина независимости для аудита
    :return: SampleSpace
    """
    if m < 1 or s < 1:
        raise InvalidParameterError("m и s должны быть положительными.")
    if (1 << s) <= m:
        raise InvalidParameterError(f"поле 2^{s} слишком мало для m={m}.")
    return SampleSpace(m=m, field_log=s, modulus=irreducible_polynomial(s), k=k)


def _check_seed(space: SampleSpace, seedpair: SeedPair) -> None:
    limit = 1 << space.field_log
    x, y = seedpair
    if not (0 <= x < limit and 0 <= y < limit):
        raise InvalidParameterError(f"зерно {seedpair} вне поля 2^{space.field_log}.")


def raw_bit(space: SampleSpace, seedpair: SeedPair, position: int) -> int:
    _check_seed(space, seedpair)
    if not 0 <= position < space.m:
        raise InvalidParameterError(f"позиция {position} вне [0, {space.m}).")
    x, y = seedpair
    return (gf_pow(x, position, space.modulus) & y).bit_count() & 1


def bit_at(space: SampleSpace, seedpair: SeedPair, position: int) -> int:
    """
    Знак позиции без материализации строки: бит 1 дает -1
    :param space: пространство
    :param seedpair: зерно (x, y)
    :param position: позиция в [0, m)
    :return: +1 или -1
    """
    return -1 if raw_bit(space, seedpair, position) else 1


def materialize_string(space: SampleSpace, seedpair: SeedPair) -> np.ndarray:
    """Все биты строки зерна, последовательными умножениями"""
    _check_seed(space, seedpair)
    x, y = seedpair
    bits = np.zeros(space.m, dtype=np.int8)
    power = 1
    for i in range(space.m):
        bits[i] = (power & y).bit_count() & 1
        power = gf_mul(power, x, space.modulus)
    return bits


def _check_space_size(space: SampleSpace) -> None:
    if space.size > config.SAMPLE_SPACE_MAX_POINTS:
        logger.error(f"пространство из {space.size} точек больше предела")
        raise SizeLimitError(
            "перебор выборочного пространства",
            config.SAMPLE_SPACE_MAX_POINTS,
            space.size,
        )


def space_bits(space: SampleSpace, positions: Optional[List[int]] = None) -> np.ndarray:
    """
    Биты всех точек пространства в выбранных позициях
    :param space: пространство
    :param positions: позиции (по умолчанию все)
    :return: массив (2^{2s}, len(positions)) из 0/1, строки в порядке (x, y)
    """
    _check_space_size(space)
    positions = list(range(space.m)) if positions is None else positions
    field = 1 << space.field_log

    powers = np.zeros((field, len(positions)), dtype=np.int64)
    for x in range(field):
        powers[x] = [gf_pow(x, p, space.modulus) for p in positions]
    ys = np.arange(field, dtype=np.int64)
    masked = powers[:, None, :] & ys[None, :, None]
    bits = np.bitwise_count(masked) & 1
    return bits.reshape(field * field, len(positions)).astype(np.int8)


def seedpair_of(space: SampleSpace, index: int) -> SeedPair:
    return divmod(index, 1 << space.field_log)


def max_bias(space: SampleSpace, k: Optional[int] = None) -> float:
    """
    Наибольшее смещение |P[четность=0] - P[четность=1]| по всем непустым
    наборам позиций размера <= k, полным перебором пространства
    :param space: пространство
    :param k: предельный размер набора (по умолчанию space.k)
    :return: смещение
    """
    k = space.k if k is None else k
    if space.m > 62:
        raise InvalidParameterError("аудит смещения поддерживает m <= 62.")
    bits = space_bits(space).astype(np.int64)
    words = (bits << np.arange(space.m, dtype=np.int64)[None, :]).sum(axis=1)

    worst = 0.0
    for size in range(1, min(k, space.m) + 1):
        for subset in combinations(range(space.m), size):
            mask = sum(1 << i for i in subset)
            parity = np.bitwise_count(words & mask) & 1
            worst = max(worst, abs(1.0 - 2.0 * float(parity.mean())))
    return worst


def pair_index(u: int, v: int, n: int) -> int:
    """Номер пары (u, v), u < v, в лексикографическом порядке пар из n вершин"""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


class ExplicitSigningSource(SigningSource):
    """
    Источник знаков из сохраненной разметки графа уровня
    """

    def __init__(self, graph: Graph, signing: Signing, path: Optional[str] = None):
        signing.check_aligned(graph)
        self.graph = graph
        self.signing = signing
        self.path = path

    def sign_of(self, u: int, v: int) -> int:
        index = self.graph.index_of(u, v)
        if index is None:
            raise InvalidParameterError(f"ребра ({u}, {v}) нет в графе уровня.")
        return self.signing[index]

    def signing_for(self, graph: Graph) -> Signing:
        if graph.edges == self.graph.edges:
            return self.signing
        return super().signing_for(graph)

    def describe(self) -> str:
        return f"explicit {self.path or '-'}"


class SpaceSigningSource(SigningSource):
    """
    Источник знаков из точки ε-смещенного пространства: знак ребра (u, v)
    графа уровня на n вершинах берется в позиции pair_index(u, v, n).
    """

    def __init__(self, space: SampleSpace, seedpair: SeedPair, level_n: int):
        _check_seed(space, seedpair)
        if space.m < level_n * (level_n - 1) // 2:
            raise InvalidParameterError(
                f"пространство длины {space.m} не покрывает пары {level_n} вершин."
            )
        self.space = space
        self.seedpair = seedpair
        self.level_n = level_n

    def sign_of(self, u: int, v: int) -> int:
        return bit_at(self.space, self.seedpair, pair_index(u, v, self.level_n))

    def describe(self) -> str:
        x, y = self.seedpair
        return f"{self.space.field_log} {x} {y}"


def pair_space(level_n: int, s: int) -> SampleSpace:
    """Пространство, покрывающее все пары вершин графа уровня"""
    return epsilon_biased_space(max(level_n * (level_n - 1) // 2, 1), s)


def oracle_adjacent(chain: LiftChain, level: int, i: int, j: int) -> bool:
    """
    Смежность вершин i, j графа уровня level без материализации: проекция на
    уровень ниже отбрасывает бит слоя, затем слои сверяются со знаком ребра
    (совпадают при +1, различаются при -1).
    :param chain: цепочка лифтов
    :param level: уровень, 0 <= level <= depth
    :param i: вершина
    :param j: вершина
    :return: смежны ли i и j
    """
    if not 0 <= level <= chain.depth:
        raise InvalidParameterError(
            f"уровень {level} вне цепочки глубины {chain.depth}."
        )
    size = chain.level_size(level)
    if not (0 <= i < size and 0 <= j < size):
        raise InvalidParameterError(f"вершины ({i}, {j}) вне [0, {size}).")

    pairs = [(i, j)]
    for lv in range(level, 0, -1):
        parent_n = chain.level_size(lv - 1)
        i, j = i % parent_n, j % parent_n
        if i == j:
            return False
        pairs.append((i, j))
    if not chain.base.has_edge(i, j):
        return False

    # снизу вверх: проекция смежна, остается сверить слои со знаком ребра
    pairs.reverse()
    for lv in range(1, level + 1):
        parent_n = chain.level_size(lv - 1)
        pi, pj = pairs[lv - 1]
        i, j = pairs[lv]
        same_fiber = (i // parent_n) == (j // parent_n)
        if same_fiber != (chain.sources[lv - 1].sign_of(pi, pj) == 1):
            return False
    return True


def materialize_chain(chain: LiftChain, level: Optional[int] = None) -> List[Graph]:
    """
    Графы уровней 0..level последовательными 2-лифтами
    :param chain: цепочка
    :param level: последний уровень (по умолчанию вся цепочка)
    :return: список графов
    """
    level = chain.depth if level is None else level
    if not 0 <= level <= chain.depth:
        raise InvalidParameterError(
            f"уровень {level} вне цепочки глубины {chain.depth}."
        )
    graphs = [chain.base]
    for source in chain.sources[:level]:
        lifted, _ = two_lift(graphs[-1], source.signing_for(graphs[-1]))
        graphs.append(lifted)
    return graphs
