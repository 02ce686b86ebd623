from itertools import combinations

import pytest

from src.application.services.builder import ExpanderBuilder
from src.application.services.sample_space import (
    ExplicitSigningSource,
    SpaceSigningSource,
    bit_at,
    epsilon_biased_space,
    gf_mul,
    gf_pow,
    irreducible_polynomial,
    materialize_chain,
    materialize_string,
    max_bias,
    oracle_adjacent,
    pair_index,
    pair_space,
    seedpair_of,
    space_bits,
)
from src.core.config import config
from src.core.enums import SigningStrategy
from src.core.exceptions import InvalidParameterError, SizeLimitError
from src.core.models.signing import LiftChain
from tests.fixtures.unit.graphs import k4, k4_one_negative  # noqa: F401

_SEEDPAIRS = [(1, 2), (3, 17), (5, 100), (7, 300)]


@pytest.mark.unit
@pytest.mark.parametrize("s, expected", [(1, 0b11), (2, 0b111), (3, 0b1011)])
def test_irreducible_polynomial(s, expected):
    """
    Тест выбора наименьшего неприводимого многочлена
    """
    assert irreducible_polynomial(s) == expected


@pytest.mark.unit
def test_field_arithmetic():
    """
    Тест арифметики GF(8) по модулю x^3 + x + 1
    """
    modulus = irreducible_polynomial(3)

    assert gf_mul(2, 4, modulus) == 3
    assert gf_pow(2, 7, modulus) == 1
    assert gf_pow(0, 0, modulus) == 1
    assert all(gf_pow(a, 7, modulus) == 1 for a in range(1, 8))


@pytest.mark.unit
def test_epsilon_biased_space_field_too_small():
    """
    Тест отказа, если поле не больше длины строки
    """
    with pytest.raises(InvalidParameterError):
        epsilon_biased_space(8, 3)


@pytest.mark.unit
def test_max_bias_within_bound():
    """
    Тест смещения: не больше (m-1)/2^s для m = 10, s = 6
    """
    space = epsilon_biased_space(10, 6)

    assert space.bias == pytest.approx(9 / 64)
    assert max_bias(space, k=4) <= 9 / 64 + 1e-12


@pytest.mark.unit
def test_bit_at_matches_materialized_string():
    """
    Тест знака позиции против материализованной строки
    """
    space = epsilon_biased_space(12, 4)

    for seedpair in [(0, 0), (1, 5), (7, 9), (15, 15)]:
        bits = materialize_string(space, seedpair)
        signs = [bit_at(space, seedpair, i) for i in range(space.m)]
        assert signs == [1 - 2 * int(b) for b in bits]


@pytest.mark.unit
def test_space_bits_row_order():
    """
    Тест порядка точек: строка с номером index соответствует seedpair_of(index)
    """
    space = epsilon_biased_space(6, 3)
    table = space_bits(space)

    assert table.shape == (64, 6)
    for index in (0, 9, 33, 63):
        expected = materialize_string(space, seedpair_of(space, index))
        assert list(table[index]) == list(expected)


@pytest.mark.unit
def test_space_bits_size_limit():
    """
    Тест предела размера выборочного пространства
    """
    space = epsilon_biased_space(30, 9)

    assert space.size > config.SAMPLE_SPACE_MAX_POINTS
    with pytest.raises(SizeLimitError):
        space_bits(space)


@pytest.mark.unit
def test_seed_outside_field():
    """
    Тест отказа для зерна вне поля
    """
    space = epsilon_biased_space(6, 3)

    with pytest.raises(InvalidParameterError):
        bit_at(space, (8, 0), 0)
    with pytest.raises(InvalidParameterError):
        bit_at(space, (1, 1), 6)


@pytest.mark.unit
def test_pair_index_is_bijection():
    """
    Тест нумерации пар: биекция на [0, n(n-1)/2)
    """
    n = 7
    indices = [pair_index(u, v, n) for u, v in combinations(range(n), 2)]

    assert indices == list(range(n * (n - 1) // 2))
    assert pair_index(5, 2, n) == pair_index(2, 5, n)


@pytest.mark.unit
def test_explicit_source_signs(k4, k4_one_negative):
    """
    Тест явного источника знаков
    """
    source = ExplicitSigningSource(k4, k4_one_negative)

    assert source.sign_of(1, 0) == -1
    assert source.sign_of(2, 3) == 1
    assert source.signing_for(k4) == k4_one_negative
    with pytest.raises(InvalidParameterError):
        ExplicitSigningSource(k4, k4_one_negative).sign_of(0, 0)


@pytest.mark.unit
@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_oracle_matches_materialized_space_chain(k4, depth):
    """
    Тест оракула смежности на цепочке из точек выборочного пространства
    """
    sources = []
    for level, seedpair in enumerate(_SEEDPAIRS[:depth]):
        level_n = k4.n << level
        s = (level_n * (level_n - 1) // 2).bit_length()
        sources.append(SpaceSigningSource(pair_space(level_n, s), seedpair, level_n))
    chain = LiftChain(base=k4, sources=tuple(sources))

    graphs = materialize_chain(chain)

    assert [g.n for g in graphs] == [4 << level for level in range(depth + 1)]
    for level, graph in enumerate(graphs):
        assert graph.is_regular(3)
        for i, j in combinations(range(graph.n), 2):
            assert oracle_adjacent(chain, level, i, j) == graph.has_edge(i, j)


@pytest.mark.unit
def test_oracle_matches_built_chain(k4_params):
    """
    Тест оракула на цепочке, собранной построителем
    """
    builder = ExpanderBuilder(3, SigningStrategy.RANDOM, k4_params)
    graph, _ = builder.build(32)
    chain = builder.chain()

    assert materialize_chain(chain)[-1] == graph
    for i, j in combinations(range(graph.n), 2):
        assert oracle_adjacent(chain, chain.depth, i, j) == graph.has_edge(i, j)


@pytest.mark.unit
def test_oracle_invalid_arguments(k4, k4_one_negative):
    """
    Тест отказа для уровня вне цепочки и вершин вне уровня
    """
    chain = LiftChain(
        base=k4, sources=(ExplicitSigningSource(k4, k4_one_negative),)
    )

    with pytest.raises(InvalidParameterError):
        oracle_adjacent(chain, 2, 0, 1)
    with pytest.raises(InvalidParameterError):
        oracle_adjacent(chain, 1, 0, 8)
    assert not oracle_adjacent(chain, 1, 0, 4)


@pytest.mark.unit
def test_space_source_requires_covering_length():
    """
    Тест отказа, если пространство короче числа пар вершин уровня
    """
    with pytest.raises(InvalidParameterError):
        SpaceSigningSource(epsilon_biased_space(6, 3), (1, 1), 8)
