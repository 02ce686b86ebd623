import math
from unittest.mock import patch

import numpy as np
import pytest

from src.application.services.discrepancy import (
    best_pair_exact,
    bipartite_jumbledness_sampled,
    centered_form,
    converse_alpha_star,
    converse_bound,
    discrepancy_witness,
    dyadic_round,
    jumbledness_alpha_exact,
    jumbledness_alpha_sampled,
    mixing_forward_check,
    prefix_sum_inequality,
    signed_discrepancy_check,
    sparse_check,
    witness_form,
)
from src.application.services.graphs import random_biregular, random_regular
from src.application.services.spectral import graph_lambda, signed_adjacency
from src.core.enums import RoundingMode
from src.core.exceptions import (
    InvalidParameterError,
    PropertyViolationError,
    SizeLimitError,
)
from src.core.models.spectral import SymMatrix
from src.core.utils.rng import make_rng
from tests.fixtures.unit.graphs import (  # noqa: F401
    k4,
    k4_one_negative,
    path3,
    petersen,
    railway,
    regular_corpus,
)


def _random_zero_diagonal(n: int, seed: int) -> SymMatrix:
    rng = make_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    np.fill_diagonal(a, 0.0)
    return SymMatrix(entries=a)


@pytest.mark.unit
def test_centered_form_requires_regular(path3):
    """
    Тест центрированной формы: только для регулярных графов
    """
    with pytest.raises(InvalidParameterError):
        centered_form(path3)


@pytest.mark.unit
def test_jumbledness_exact_complete_graph(k4):
    """
    Тест точной α для K_4: B = J/4 - I
    """
    all_pairs = jumbledness_alpha_exact(k4, disjoint_only=False)
    disjoint = jumbledness_alpha_exact(k4, disjoint_only=True)

    assert all_pairs.alpha == pytest.approx(0.75)
    assert disjoint.alpha == pytest.approx(0.5)
    assert disjoint.exact
    assert not (disjoint.s & disjoint.t)


@pytest.mark.unit
def test_best_pair_exact_matches_brute_force():
    """
    Тест точного максимума против перебора всех пар подмножеств
    """
    m = _random_zero_diagonal(6, seed=2).entries
    n = m.shape[0]
    expected = 0.0
    for s_mask in range(1, 1 << n):
        s = [j for j in range(n) if s_mask >> j & 1]
        for t_mask in range(1, 1 << n):
            if s_mask & t_mask:
                continue
            t = [j for j in range(n) if t_mask >> j & 1]
            value = abs(m[np.ix_(s, t)].sum()) / math.sqrt(len(s) * len(t))
            expected = max(expected, value)

    ratio, s, t, value = best_pair_exact(m, disjoint_only=True)

    assert ratio == pytest.approx(expected)
    assert not set(s) & set(t)
    assert abs(value) / math.sqrt(len(s) * len(t)) == pytest.approx(ratio)


@pytest.mark.unit
def test_jumbledness_sampled_is_lower_bound(petersen):
    """
    Тест выборочной α: не больше точной и воспроизводима по зерну
    """
    exact = jumbledness_alpha_exact(petersen, disjoint_only=False)
    first = jumbledness_alpha_sampled(petersen, 300, seed=5)
    second = jumbledness_alpha_sampled(petersen, 300, seed=5)

    assert first == second
    assert not first.exact
    assert first.alpha <= exact.alpha + 1e-12


@pytest.mark.unit
def test_jumbledness_exact_size_limit():
    """
    Тест предела точного перебора
    """
    with pytest.raises(SizeLimitError):
        jumbledness_alpha_exact(random_regular(40, 3, seed=1), disjoint_only=False)


@pytest.mark.unit
def test_bipartite_jumbledness_nonnegative():
    """
    Тест оценки α двудольного блока
    """
    block = random_biregular(6, 12, 4, 2, seed=8)
    alpha = bipartite_jumbledness_sampled(block, range(6), range(6, 18), 200, 1)

    assert 0.0 <= alpha <= 4.0


@pytest.mark.unit
def test_mixing_forward_check(petersen):
    """
    Тест прямой леммы о перемешивании: α <= λ
    """
    assert mixing_forward_check(petersen)
    assert jumbledness_alpha_exact(petersen, False).alpha <= graph_lambda(petersen)


@pytest.mark.unit
def test_mixing_forward_check_violation(petersen):
    """
    Тест нарушения: при заниженной λ поднимается PropertyViolationError
    """
    with patch(
        "src.application.services.discrepancy.graph_lambda", return_value=0.0
    ):
        with pytest.raises(PropertyViolationError) as exc:
            mixing_forward_check(petersen)

    assert exc.value.report["lambda"] == 0.0


@pytest.mark.unit
def test_converse_bound_value():
    """
    Тест явной границы: 16·α·(log2(d/α) + 1)
    """
    assert converse_bound(1.0, 2.0) == pytest.approx(32.0)
    assert converse_bound(3.0, 3.0) == pytest.approx(48.0)
    with pytest.raises(InvalidParameterError):
        converse_bound(0.0, 3.0)


@pytest.mark.unit
def test_converse_alpha_star_bisection():
    """
    Тест α*: граница в α* достигает ρ, левее нет
    """
    alpha = converse_alpha_star(5.0, 3.0)

    assert alpha > 0
    assert converse_bound(alpha, 3.0) < 5.0
    assert converse_bound(alpha + 1e-8, 3.0) >= 5.0
    assert converse_alpha_star(0.0, 3.0) == 0.0


@pytest.mark.unit
def test_dyadic_round_deterministic_bounds():
    """
    Тест детерминированного округления: значения ±2^-k, |x'|^2 <= 2|y|^2,
    |x'Mx'| не меньше |yMy|
    """
    matrix = _random_zero_diagonal(12, seed=3)
    x = make_rng(4).normal(size=12)

    rounded = dyadic_round(x, RoundingMode.DETERMINISTIC, matrix=matrix)
    values = rounded.values()
    y = x / rounded.scale

    assert rounded.scale == pytest.approx(4 * np.max(np.abs(x)))
    assert np.all(np.abs(values) <= 0.5)
    assert np.all(np.abs(values) >= np.abs(y) - 1e-15)
    assert values @ values <= 2 * (y @ y) + 1e-12
    assert np.all(np.sign(values) == np.sign(y))
    assert all(lv >= 1 for lv, s in zip(rounded.levels, rounded.signs) if s)

    m = matrix.entries
    direction = 1.0 if y @ m @ y >= 0 else -1.0
    assert direction * (values @ m @ values) >= direction * (y @ m @ y) - 1e-12


@pytest.mark.unit
def test_dyadic_round_norm_budget_limits_upward_rounding():
    """
    Тест предела нормы: при M = J - I все координаты выгодно округлить вверх,
    но |x'|^2 остается не больше 2|y|^2, а форма не убывает
    """
    n = 6
    matrix = SymMatrix(entries=np.ones((n, n)) - np.eye(n))
    x = np.array([1.0] + [0.52] * (n - 1))

    rounded = dyadic_round(x, RoundingMode.DETERMINISTIC, matrix=matrix)
    values = rounded.values()
    y = x / rounded.scale
    m = matrix.entries

    assert (values @ values) / (y @ y) <= 2.0 + 1e-12
    assert sum(1 for v in values if v == 0.25) == 4
    assert values @ m @ values >= y @ m @ y


@pytest.mark.unit
def test_dyadic_round_random_mode():
    """
    Тест случайного округления: воспроизводимо по зерну, в пределах вдвое
    """
    x = make_rng(6).normal(size=20)

    first = dyadic_round(x, RoundingMode.RANDOM, seed=1)
    second = dyadic_round(x, RoundingMode.RANDOM, seed=1)
    y = np.abs(x / first.scale)

    assert first == second
    assert np.all(np.abs(first.values()) >= y - 1e-15)
    assert np.all(np.abs(first.values()) <= 2 * y + 1e-15)
    assert sum(first.level_sizes().values()) == 20


@pytest.mark.unit
def test_dyadic_round_invalid_input():
    """
    Тест отказа для нулевого вектора и детерминированного режима без матрицы
    """
    with pytest.raises(InvalidParameterError):
        dyadic_round(np.zeros(3))
    with pytest.raises(InvalidParameterError):
        dyadic_round(np.ones(3), RoundingMode.DETERMINISTIC)


@pytest.mark.unit
def test_witness_on_railway(railway):
    """
    Тест свидетеля: непересекающиеся носители, отношение не выше точного
    максимума и не ниже α*(ρ, d)
    """
    graph, signing = railway
    matrix = signed_adjacency(graph, signing)

    witness = discrepancy_witness(matrix, 3.0)
    best, *_ = best_pair_exact(matrix.entries, disjoint_only=True)

    assert not witness.u & witness.v
    assert witness.ratio <= best + 1e-9
    assert witness.ratio >= converse_alpha_star(math.sqrt(5), 3.0)
    assert witness.value == pytest.approx(
        abs(witness_form(matrix.entries, witness.u, witness.v))
    )


@pytest.mark.unit
def test_witness_random_matrix_close_to_optimum():
    """
    Тест свидетеля на случайной матрице: не хуже половины точного максимума
    """
    matrix = _random_zero_diagonal(10, seed=12)

    witness = discrepancy_witness(matrix, matrix.row_l1_max())
    best, *_ = best_pair_exact(matrix.entries, disjoint_only=True)

    assert best / 2 <= witness.ratio <= best + 1e-9


@pytest.mark.unit
def test_witness_complete_graph_halves():
    """
    Тест свидетеля на K_8: точный максимум 4 у половин, свидетель не хуже вдвое
    """
    matrix = SymMatrix(entries=np.ones((8, 8)) - np.eye(8))

    witness = discrepancy_witness(matrix, 7.0)
    best, *_ = best_pair_exact(matrix.entries, disjoint_only=True)

    assert best == pytest.approx(4.0)
    assert best / 2 <= witness.ratio <= best + 1e-9
    assert witness.ratio >= converse_alpha_star(7.0, 7.0)


@pytest.mark.unit
@pytest.mark.parametrize("seed", [31, 32, 33])
def test_witness_planted_block(seed):
    """
    Тест свидетеля на редкой знаковой матрице с плотным блоком на 6 вершинах
    """
    n, block = 14, 6
    rng = make_rng(seed)
    noise = rng.choice([-1.0, 0.0, 1.0], size=(n, n), p=[0.08, 0.84, 0.08])
    entries = np.triu(noise, 1)
    entries[:block, :block] = np.triu(np.ones((block, block)), 1)
    entries = entries + entries.T
    matrix = SymMatrix(entries=entries)

    witness = discrepancy_witness(matrix, matrix.row_l1_max())
    best, *_ = best_pair_exact(entries, disjoint_only=True)

    assert not witness.u & witness.v
    assert best / 2 <= witness.ratio <= best + 1e-9


@pytest.mark.unit
def test_witness_rejects_nonzero_diagonal(k4):
    """
    Тест отказа для матрицы с ненулевой диагональю
    """
    with pytest.raises(InvalidParameterError):
        discrepancy_witness(centered_form(k4), 3.0)


@pytest.mark.unit
def test_sparse_check_finds_triangle(k4):
    """
    Тест (β,t)-разреженности: треугольник K_4 нарушает β = 1
    """
    result = sparse_check(k4, 1.0, 3)

    assert not result.ok
    u, v = result.violation
    value = sum(u[x] * v[y] for x in u for y in v if k4.has_edge(x, y))
    assert u and v
    assert value > math.sqrt(len(u) * len(v))
    assert result.worst_ratio > 1.0


@pytest.mark.unit
def test_sparse_check_pruned_by_degree(k4, k4_one_negative):
    """
    Тест отсечения: β не меньше максимальной степени
    """
    plain = sparse_check(k4, 3.0, 3)
    signed = signed_discrepancy_check(k4, k4_one_negative, 3.0, 3)

    assert plain.ok and plain.pruned and plain.worst_ratio is None
    assert signed.ok and signed.pruned


@pytest.mark.unit
def test_signed_check_passes_loose_threshold(railway):
    """
    Тест знаковой проверки с порогом выше наихудшего отношения
    """
    graph, signing = railway
    result = signed_discrepancy_check(graph, signing, 1.5, 3)

    assert result.ok
    assert result.checked_subsets > 0
    assert result.worst_ratio == pytest.approx(math.sqrt(2))


@pytest.mark.unit
def test_prefix_sum_inequality():
    """
    Тест неравенства (Σ a_i 2^-i)^2 <= 3N Σ a_i
    """
    rng = make_rng(0)
    for _ in range(50):
        big_n = float(rng.uniform(0.5, 3.0))
        a = [float(rng.uniform(0, 4**i * big_n)) for i in range(6)]
        assert prefix_sum_inequality(a, big_n)

    with pytest.raises(InvalidParameterError):
        prefix_sum_inequality([2.0], 1.0)


@pytest.mark.unit
@pytest.mark.slow
def test_mixing_lemma_both_directions_on_corpus(regular_corpus):
    """
    Тест леммы о перемешивании на 100 случайных регулярных графах:
    α по всем парам не больше λ, λ не больше границы от α по непересекающимся
    """
    for graph in regular_corpus:
        d = graph.regular_degree()
        lam = graph_lambda(graph)
        alpha_all = jumbledness_alpha_exact(graph, disjoint_only=False).alpha
        alpha_disjoint = jumbledness_alpha_exact(graph, disjoint_only=True).alpha

        assert alpha_all <= lam + 1e-7
        assert 0 < alpha_disjoint <= d
        assert lam <= converse_bound(alpha_disjoint, d)


@pytest.mark.unit
@pytest.mark.slow
def test_witness_on_corpus(regular_corpus):
    """
    Тест свидетеля на центрированных матрицах корпуса: не хуже половины
    точного максимума по непересекающимся парам
    """
    for graph in regular_corpus[:30]:
        entries = centered_form(graph).entries.copy()
        np.fill_diagonal(entries, 0.0)
        matrix = SymMatrix(entries=entries)

        witness = discrepancy_witness(matrix, matrix.row_l1_max())
        best, *_ = best_pair_exact(entries, disjoint_only=True)

        assert best / 2 <= witness.ratio <= best + 1e-9
