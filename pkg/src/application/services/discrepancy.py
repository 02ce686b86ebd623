import math
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.application.services.graphs import connected_subsets
from src.application.services.spectral import (
    adjacency_matrix,
    extremal_eigenvector,
    graph_lambda,
    signed_adjacency,
    spectral_radius,
)
from src.core.config import config
from src.core.enums import RoundingMode
from src.core.exceptions import (
    InvalidParameterError,
    PropertyViolationError,
    SizeLimitError,
)
from src.core.logging import get_logger
from src.core.models.discrepancy import (
    DiscrepancyWitness,
    DyadicVector,
    JumbledResult,
    SparsityResult,
)
from src.core.models.graph import Graph, Signing
from src.core.models.spectral import SymMatrix
from src.core.utils.rng import make_rng

logger = get_logger(__name__)

_CHUNK = 1 << 14
_EPS = 1e-12

# (u_x, v_x) для вершины объединенного носителя
ZERO_ONE_OPTIONS = ((1, 0), (0, 1), (1, 1))
SIGNED_OPTIONS = tuple(
    (a, b) for a in (-1, 0, 1) for b in (-1, 0, 1) if (a, b) != (0, 0)
)


def centered_entries(entries: np.ndarray, d: float) -> np.ndarray:
    """A - (d/n)J; для нерегулярных графов d задается явно"""
    n = entries.shape[0]
    return entries - (d / n) * np.ones((n, n))


def centered_form(graph: Graph) -> SymMatrix:
    """
    B = A - (d/n)J для d-регулярного графа
    :param graph: регулярный граф
    :return: матрица B
    """
    if not graph.is_regular() or graph.n == 0:
        raise InvalidParameterError(
            "центрированная форма определена для регулярных графов."
        )
    d = graph.regular_degree()
    return SymMatrix(entries=centered_entries(adjacency_matrix(graph).entries, d))


def _masks_to_indicators(masks: np.ndarray, n: int) -> np.ndarray:
    bits = (masks[:, None] >> np.arange(n)[None, :]) & 1
    return bits.astype(float)


def best_pair_exact(
    matrix: np.ndarray, disjoint_only: bool
) -> Tuple[float, Tuple[int, ...], Tuple[int, ...], float]:
    """
    Точный максимум |1_S M 1_T| / sqrt(|S||T|) по парам непустых подмножеств.
    Для фиксированного S лучшее T каждого размера b состоит из b наибольших
    (или наименьших) координат M 1_S, поэтому перебираются только S.
    :param matrix: симметричная матрица
    :param disjoint_only: только непересекающиеся пары
    :return: (отношение, S, T, значение 1_S M 1_T)
    """
    n = matrix.shape[0]
    best = (-1.0, 0, 0, 0)
    sizes = np.arange(1, n + 1, dtype=float)

    for start in range(1, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        ind = _masks_to_indicators(masks, n)
        col = ind @ matrix
        s_size = ind.sum(axis=1)

        if disjoint_only:
            excluded = ind > 0
            top = np.sort(np.where(excluded, -np.inf, col), axis=1)[:, ::-1]
            bottom = np.sort(np.where(excluded, np.inf, col), axis=1)
            available = n - s_size
        else:
            top = np.sort(col, axis=1)[:, ::-1]
            bottom = top[:, ::-1]
            available = np.full(len(masks), n, dtype=float)

        valid = sizes[None, :] <= available[:, None]
        denom = np.sqrt(s_size[:, None] * sizes[None, :])
        with np.errstate(invalid="ignore"):
            up = np.where(valid, np.cumsum(top, axis=1) / denom, -np.inf)
            down = np.where(valid, -np.cumsum(bottom, axis=1) / denom, -np.inf)
        scores = np.maximum(up, down)

        flat = int(np.argmax(scores))
        row, b_index = divmod(flat, n)
        if scores[row, b_index] > best[0] + _EPS:
            direction = 1 if up[row, b_index] >= down[row, b_index] else -1
            score = float(scores[row, b_index])
            best = (score, int(masks[row]), b_index + 1, direction)

    ratio, mask, b, direction = best
    if ratio < 0:
        raise InvalidParameterError("нет ни одной допустимой пары подмножеств.")
    s = tuple(j for j in range(n) if mask >> j & 1)
    col = matrix[list(s)].sum(axis=0)
    candidates = [j for j in range(n) if not (disjoint_only and j in s)]
    key = (lambda j: -col[j]) if direction > 0 else (lambda j: col[j])
    t = tuple(sorted(sorted(candidates, key=key)[:b]))
    value = float(matrix[np.ix_(s, t)].sum())
    return abs(value) / math.sqrt(len(s) * len(t)), s, t, value


def jumbledness_alpha_exact(graph: Graph, disjoint_only: bool) -> JumbledResult:
    """
    Точная величина α: max |e(S,T) - d|S||T|/n| / sqrt(|S||T|)
    :param graph: регулярный граф
    :param disjoint_only: только непересекающиеся S, T
    :return: JumbledResult с максимизирующей парой
    """
    if graph.n > config.JUMBLED_EXACT_MAX_N:
        logger.error(f"точный перебор для n={graph.n} запрещен настройками")
        raise SizeLimitError(
            "точный перебор подмножеств слишком велик, используйте "
            "jumbledness_alpha_sampled",
            config.JUMBLED_EXACT_MAX_N,
            graph.n,
        )
    b = centered_form(graph).entries
    ratio, s, t, value = best_pair_exact(b, disjoint_only)
    return JumbledResult(
        alpha=ratio, s=frozenset(s), t=frozenset(t), deviation=value, exact=True
    )


def sample_pair_ratio(
    matrix: np.ndarray,
    samples: int,
    seed: Optional[int],
    disjoint_only: bool = False,
    left: Optional[Sequence[int]] = None,
    right: Optional[Sequence[int]] = None,
) -> Tuple[float, Tuple[int, ...], Tuple[int, ...], float]:
    """
    Максимум |1_S M 1_T| / sqrt(|S||T|) по случайным парам подмножеств.
    Размеры выбираются равномерно, затем сами подмножества.
    :param matrix: матрица
    :param samples: число пар
    :param seed: зерно
    :param disjoint_only: только непересекающиеся пары
    :param left: откуда выбирается S (по умолчанию все вершины)
    :param right: откуда выбирается T
    :return: (отношение, S, T, значение)
    """
    if samples < 1:
        raise InvalidParameterError("samples должно быть положительным.")
    n = matrix.shape[0]
    left = np.arange(n) if left is None else np.asarray(left)
    right = np.arange(n) if right is None else np.asarray(right)
    rng = make_rng(seed)

    best: Tuple[float, Tuple[int, ...], Tuple[int, ...], float] = (-1.0, (), (), 0.0)
    for _ in range(samples):
        s = rng.choice(left, size=int(rng.integers(1, len(left) + 1)), replace=False)
        pool = right
        if disjoint_only:
            pool = np.setdiff1d(right, s)
            if len(pool) == 0:
                continue
        t = rng.choice(pool, size=int(rng.integers(1, len(pool) + 1)), replace=False)
        s_sorted, t_sorted = np.sort(s), np.sort(t)
        value = float(matrix[np.ix_(s_sorted, t_sorted)].sum())
        ratio = abs(value) / math.sqrt(len(s) * len(t))
        if ratio > best[0]:
            best = (ratio, tuple(map(int, s_sorted)), tuple(map(int, t_sorted)), value)
    return best


def jumbledness_alpha_sampled(
    graph: Graph, samples: int, seed: Optional[int], disjoint_only: bool = False
) -> JumbledResult:
    """
    Нижняя оценка α по случайным парам подмножеств, детерминированная по зерну
    """
    b = centered_form(graph).entries
    ratio, s, t, value = sample_pair_ratio(b, samples, seed, disjoint_only)
    if ratio < 0:
        ratio = 0.0
    return JumbledResult(
        alpha=ratio, s=frozenset(s), t=frozenset(t), deviation=value, exact=False
    )


def bipartite_jumbledness_sampled(
    graph: Graph,
    left: Sequence[int],
    right: Sequence[int],
    samples: int,
    seed: Optional[int],
) -> float:
    """
    Оценка α двудольного блока: |e(A,B) - p|A||B|| / sqrt(|A||B|) по случайным
    A ⊆ left, B ⊆ right, где p = e(left,right) / (|left||right|).
    :return: нижняя оценка α блока
    """
    left_idx = np.asarray(sorted(left))
    right_idx = np.asarray(sorted(right))
    if len(left_idx) == 0 or len(right_idx) == 0:
        raise InvalidParameterError("доли двудольного блока должны быть непустыми.")
    a = adjacency_matrix(graph).entries
    block = a[np.ix_(left_idx, right_idx)]
    density = block.sum() / block.size
    full = np.zeros_like(a)
    full[np.ix_(left_idx, right_idx)] = block - density
    ratio, *_ = sample_pair_ratio(full, samples, seed, left=left_idx, right=right_idx)
    return max(ratio, 0.0)


@lru_cache(maxsize=32)
def support_assignments(k: int, options: Tuple[Tuple[int, int], ...]):
    """Все присваивания (u_x, v_x) вершинам носителя размера k"""
    codes = np.indices((len(options),) * k).reshape(k, -1).T
    table = np.array(options, dtype=float)
    u = table[codes, 0]
    v = table[codes, 1]
    return u, v


def _scan_supports(
    graph: Graph,
    matrix: np.ndarray,
    beta: float,
    t: int,
    options: Tuple[Tuple[int, int], ...],
) -> SparsityResult:
    if t < 1:
        raise InvalidParameterError("t должно быть не меньше 1.")
    if graph.m == 0 or beta >= graph.max_degree:
        # |u M v| <= max_degree * |u| |v| для матрицы с элементами из {-1,0,1}
        return SparsityResult(ok=True, beta=beta, t=t, worst_ratio=None, pruned=True)

    worst = 0.0
    checked = 0
    for subset in connected_subsets(graph, t):
        checked += 1
        if checked > config.CONNECTED_SUBSETS_LIMIT:
            partial = SparsityResult(
                ok=True, beta=beta, t=t, worst_ratio=worst, checked_subsets=checked - 1
            )
            logger.error(f"перебор носителей превысил предел на t={t}")
            raise SizeLimitError(
                "перебор связных носителей",
                config.CONNECTED_SUBSETS_LIMIT,
                checked,
                partial=partial,
            )
        if len(subset) < 2:
            continue
        verts = sorted(subset)
        sub = matrix[np.ix_(verts, verts)]
        if beta >= np.abs(sub).sum(axis=1).max():
            continue

        u, v = support_assignments(len(verts), options)
        values = np.abs(np.einsum("ai,ij,aj->a", u, sub, v))
        norms = np.sqrt((u != 0).sum(axis=1) * (v != 0).sum(axis=1))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(norms > 0, values / norms, 0.0)
        worst = max(worst, float(ratios.max()))

        bad = np.nonzero(values > beta * norms + _EPS)[0]
        if len(bad):
            a = bad[0]
            violation = (
                {x: int(u[a, i]) for i, x in enumerate(verts) if u[a, i]},
                {x: int(v[a, i]) for i, x in enumerate(verts) if v[a, i]},
            )
            logger.debug(f"нарушение разреженности на носителе {verts}")
            return SparsityResult(
                ok=False,
                beta=beta,
                t=t,
                worst_ratio=float(ratios[a]),
                violation=violation,
                checked_subsets=checked,
            )

    return SparsityResult(
        ok=True, beta=beta, t=t, worst_ratio=worst, checked_subsets=checked
    )


def sparse_check(graph: Graph, beta: float, t: int) -> SparsityResult:
    """
    Проверка (β,t)-разреженности: uAv <= β|u||v| для 0/1 векторов со связным
    объединением носителей размера <= t.
    :param graph: граф
    :param beta: порог β
    :param t: предельный размер носителя
    :return: SparsityResult с первой нарушающей парой
    """
    a = adjacency_matrix(graph).entries
    return _scan_supports(graph, a, beta, t, ZERO_ONE_OPTIONS)


def signed_discrepancy_check(
    graph: Graph, signing: Signing, beta: float, t: int
) -> SparsityResult:
    """
    |u A_s v| <= β|u||v| для u, v ∈ {-1,0,1}^n со связным объединением
    носителей размера <= t
    """
    a_s = signed_adjacency(graph, signing).entries
    return _scan_supports(graph, a_s, beta, t, SIGNED_OPTIONS)


def mixing_forward_check(graph: Graph, tol: float = 1e-7) -> bool:
    """
    Прямая лемма о перемешивании: точная α (все пары) не превосходит λ(G)
    :param graph: регулярный граф
    :param tol: допуск
    :return: True; нарушение поднимает PropertyViolationError
    """
    lam = graph_lambda(graph)
    result = jumbledness_alpha_exact(graph, disjoint_only=False)
    if result.alpha > lam + tol:
        report = {"lambda": lam, "alpha": result.alpha, "s": result.s, "t": result.t}
        logger.error(f"α={result.alpha:.6f} больше λ={lam:.6f}")
        raise PropertyViolationError("α больше λ(G).", report=report)
    return True


def converse_bound(alpha: float, d: float, constant: Optional[float] = None) -> float:
    """
    Явная граница λ <= C·α·(log2(d/α) + 1), C = 16 по умолчанию
    :param alpha: α ∈ (0, d]
    :param d: граница ℓ1-нормы строк
    :param constant: переопределение C
    :return: граница
    """
    if alpha <= 0 or alpha > d:
        raise InvalidParameterError("должно выполняться 0 < alpha <= d.")
    constant = config.CONVERSE_BOUND_CONSTANT if constant is None else constant
    return constant * alpha * (math.log2(d / alpha) + 1)


def converse_alpha_star(rho: float, d: float) -> float:
    """
    Наименьшее α с converse_bound(α, d) >= ρ, бисекцией. Граница возрастает
    на (0, d·2^(1 - 1/ln 2)] и убывает правее, поэтому поиск идет на этом отрезке.
    :param rho: спектральный радиус
    :param d: граница ℓ1-нормы строк
    :return: α* (нижний конец интервала бисекции)
    """
    if d <= 0:
        raise InvalidParameterError("d должно быть положительным.")
    if rho <= 0:
        return 0.0
    peak = d * 2 ** (1 - 1 / math.log(2))
    if converse_bound(peak, d) < rho:
        raise InvalidParameterError(f"ρ={rho} недостижимо при d={d}.")

    lo, hi = 0.0, peak
    while hi - lo > config.BISECTION_TOL:
        mid = (lo + hi) / 2
        if converse_bound(mid, d) >= rho:
            hi = mid
        else:
            lo = mid
    return lo


def dyadic_round(
    x: np.ndarray,
    mode: RoundingMode = RoundingMode.DETERMINISTIC,
    seed: Optional[int] = None,
    matrix: Optional[SymMatrix] = None,
) -> DyadicVector:
    """
    Диадическое округление. Вектор делится на 4·|x|∞, затем каждая координата
    ±(1+δ)2^e округляется к ±2^(e+1) или ±2^e. В случайном режиме вверх с
    вероятностью δ. В детерминированном координаты фиксируются по одной так,
    чтобы условное ожидание x'Mx' (полилинейное при нулевой диагонали) не
    уменьшалось по модулю в направлении знака xMx. Округление вверх запрещено,
    если условное ожидание |x'|^2 превысит 2|y|^2, поэтому |x'|^2 <= 2|y|^2
    всегда; неубывание формы гарантировано, пока этот предел не достигнут.
    :param x: ненулевой вектор
    :param mode: режим
    :param seed: зерно для случайного режима
    :param matrix: M с нулевой диагональю, обязательна в детерминированном режиме
    :return: DyadicVector
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise InvalidParameterError("нулевой вектор нельзя округлить.")
    mode = RoundingMode(mode)

    scale = 4 * float(np.max(np.abs(x)))
    y = x / scale
    mant, exp = np.frexp(np.abs(y))
    low_level = 1 - exp  # |y| ∈ [2^(-low_level), 2^(1-low_level))
    delta = np.where(y != 0, 2 * mant - 1, 0.0)
    low = np.where(y != 0, np.ldexp(1.0, -low_level), 0.0)
    up = (delta > 0) & (y != 0)

    if mode == RoundingMode.RANDOM:
        rng = make_rng(seed)
        go_up = up & (rng.random(len(y)) < delta)
    else:
        if matrix is None or matrix.dim != len(y):
            raise InvalidParameterError("детерминированному режиму нужна матрица M.")
        if not matrix.has_zero_diagonal:
            raise InvalidParameterError("матрица M должна иметь нулевую диагональ.")
        m = matrix.entries
        signs = np.sign(y)
        mu = y.copy()
        grad = m @ mu
        direction = 1.0 if float(mu @ grad) >= 0 else -1.0
        # E[x'_j^2]: L^2(1+3δ) до фиксации, x'_j^2 после
        second = np.where(up, low**2 * (1 + 3 * delta), y**2)
        budget = 2 * float(y @ y) * (1 + _EPS)
        expected_norm = float(second.sum())
        go_up = np.zeros(len(y), dtype=bool)
        for j in np.nonzero(up)[0]:
            lo_value = signs[j] * low[j]
            hi_value = 2 * lo_value
            gain_lo = direction * (lo_value - mu[j]) * grad[j]
            gain_hi = direction * (hi_value - mu[j]) * grad[j]
            norm_hi = expected_norm - second[j] + hi_value**2
            if gain_hi > gain_lo and norm_hi <= budget:
                chosen = hi_value
            else:
                chosen = lo_value
            go_up[j] = chosen == hi_value
            expected_norm += chosen**2 - second[j]
            grad += m[:, j] * (chosen - mu[j])
            mu[j] = chosen

    levels = np.where(go_up, low_level - 1, low_level)
    signs_out = np.sign(y).astype(int)
    return DyadicVector(
        signs=tuple(int(s) for s in signs_out),
        levels=tuple(int(lv) if s else 0 for lv, s in zip(levels, signs_out)),
        scale=scale,
    )


def _pair_value(m: np.ndarray, u: Iterable[int], v: Iterable[int]) -> float:
    u_idx, v_idx = sorted(u), sorted(v)
    return float(m[np.ix_(u_idx, v_idx)].sum())


def _pair_ratio(m: np.ndarray, u: frozenset, v: frozenset) -> float:
    if not u or not v:
        return -1.0
    return abs(_pair_value(m, u, v)) / math.sqrt(len(u) * len(v))


def _best_within(m: np.ndarray, block: Sequence[int]) -> Tuple[frozenset, frozenset]:
    """Лучшая непересекающаяся пара внутри block: перебором или жадным делением"""
    block = sorted(block)
    if len(block) <= config.WITNESS_BRUTE_FORCE_MAX:
        _, s, t, _ = best_pair_exact(m[np.ix_(block, block)], disjoint_only=True)
        return frozenset(block[i] for i in s), frozenset(block[i] for i in t)

    # жадно: вершина уходит в ту половину, где вклад больше
    u: set = {block[0]}
    v: set = set()
    for w in block[1:]:
        to_u = abs(m[w, sorted(v)].sum()) if v else 0.0
        to_v = abs(m[w, sorted(u)].sum())
        (v if to_v >= to_u else u).add(w)
    if not v:
        v.add(u.pop())
    return frozenset(u), frozenset(v)


def _hill_climb(
    m: np.ndarray, u: frozenset, v: frozenset, max_passes: int
) -> Tuple[frozenset, frozenset]:
    n = m.shape[0]
    current = _pair_ratio(m, u, v)
    for _ in range(max_passes):
        improved = False
        for w in range(n):
            moves = []
            if w not in u:
                moves.append((u | {w}, v - {w}))
            if w not in v:
                moves.append((u - {w}, v | {w}))
            if w in u:
                moves.append((u - {w}, v))
            if w in v:
                moves.append((u, v - {w}))
            for cand_u, cand_v in moves:
                ratio = _pair_ratio(m, cand_u, cand_v)
                if ratio > current + _EPS:
                    u, v, current, improved = cand_u, cand_v, ratio, True
        if not improved:
            break
    return u, v


def _witness_candidates(
    m: np.ndarray, rounded: DyadicVector, magnitude: np.ndarray
) -> List[Tuple[frozenset, frozenset]]:
    levels = sorted(rounded.level_sets())
    positive = {
        lv: frozenset(j for j in s if rounded.signs[j] > 0)
        for lv, s in rounded.level_sets().items()
    }
    negative = {
        lv: frozenset(j for j in s if rounded.signs[j] < 0)
        for lv, s in rounded.level_sets().items()
    }

    pairs: List[Tuple[frozenset, frozenset]] = []
    for a_idx, i in enumerate(levels):
        pairs.append((positive[i], negative[i]))
        for j in levels[a_idx + 1:]:
            for left in (positive[i], negative[i]):
                for right in (positive[j], negative[j]):
                    pairs.append((left, right))

    pos_prefix: frozenset = frozenset()
    neg_prefix: frozenset = frozenset()
    for i in levels:
        pos_prefix |= positive[i]
        neg_prefix |= negative[i]
        pairs.append((pos_prefix, neg_prefix))

    for i in levels:
        for block in (positive[i], negative[i], positive[i] | negative[i]):
            if len(block) >= 2:
                pairs.append(_best_within(m, block))

    # плотное ядро: наибольшие по модулю координаты собственного вектора
    core = np.argsort(-magnitude, kind="stable")[: config.WITNESS_BRUTE_FORCE_MAX]
    if len(core) >= 2:
        pairs.append(_best_within(m, core.tolist()))

    return [(u, v) for u, v in pairs if u and v and not (u & v)]


def discrepancy_witness(
    matrix: SymMatrix,
    d: float,
    eigvec: Optional[np.ndarray] = None,
    check_guarantee: bool = True,
) -> DiscrepancyWitness:
    """
    Построить пару 0/1 векторов с непересекающимися носителями и большим
    |uMv|/(|u||v|) из экстремального собственного вектора M.
    :param matrix: симметричная матрица с нулевой диагональю
    :param d: граница ℓ1-нормы строк M
    :param eigvec: собственный вектор, если уже известен
    :param check_guarantee: сверять отношение с α*(ρ, d)
    :return: DiscrepancyWitness
    """
    n = matrix.dim
    if n < 2:
        raise InvalidParameterError("нужно хотя бы две вершины.")
    if not matrix.has_zero_diagonal:
        raise InvalidParameterError("матрица должна иметь нулевую диагональ.")
    if matrix.row_l1_max() > d + _EPS:
        raise InvalidParameterError(
            f"ℓ1-норма строки {matrix.row_l1_max()} больше d={d}."
        )

    m = matrix.entries
    rho = spectral_radius(matrix)
    if eigvec is None:
        _, eigvec = extremal_eigenvector(matrix)
    eigvec = np.asarray(eigvec, dtype=float)

    pairs: List[Tuple[frozenset, frozenset]] = []
    if np.any(eigvec):
        rounded = dyadic_round(eigvec, RoundingMode.DETERMINISTIC, matrix=matrix)
        cutoff = min(rounded.level_sets(), default=0) + math.ceil(math.log2(n)) + 4
        rounded = DyadicVector(
            signs=tuple(
                s if lv <= cutoff else 0 for s, lv in zip(rounded.signs, rounded.levels)
            ),
            levels=rounded.levels,
            scale=rounded.scale,
        )
        pairs = _witness_candidates(m, rounded, np.abs(eigvec))
    if not pairs:
        pairs = [(frozenset({0}), frozenset({1}))]

    best_u, best_v = max(pairs, key=lambda p: _pair_ratio(m, p[0], p[1]))
    best_u, best_v = _hill_climb(m, best_u, best_v, max_passes=4 * n)

    value = abs(witness_form(m, best_u, best_v))
    witness = DiscrepancyWitness(
        u=best_u,
        v=best_v,
        value=value,
        ratio=value / math.sqrt(len(best_u) * len(best_v)),
    )
    logger.debug(
        f"свидетель: |U|={len(best_u)}, |V|={len(best_v)}, {witness.ratio:.4f}"
    )

    if check_guarantee and rho > _EPS and d > 0:
        alpha_star = converse_alpha_star(rho, d)
        if witness.ratio + _EPS < alpha_star:
            report = {"rho": rho, "d": d, "alpha_star": alpha_star, "witness": witness}
            logger.error(f"отношение свидетеля {witness.ratio} меньше α*={alpha_star}")
            raise PropertyViolationError("свидетель не достигает α*(ρ, d).", report)
    return witness


def witness_form(m: np.ndarray, u: Iterable[int], v: Iterable[int]) -> float:
    """
    u^T M v для индикаторов u, v, в том же порядке вычислений, что и в отчете
    :return: значение билинейной формы
    """
    n = m.shape[0]
    iu = np.zeros(n)
    iu[sorted(u)] = 1.0
    iv = np.zeros(n)
    iv[sorted(v)] = 1.0
    return float(iu @ m @ iv)


def prefix_sum_inequality(a: Sequence[float], big_n: float) -> bool:
    """
    (Σ a_i 2^-i)^2 <= 3N Σ a_i для a_i ∈ [0, 4^i N]
    :param a: числа a_0..a_t
    :param big_n: N > 0
    :return: выполнено ли неравенство
    """
    if big_n <= 0:
        raise InvalidParameterError("N должно быть положительным.")
    for i, value in enumerate(a):
        if not 0 <= value <= 4**i * big_n:
            raise InvalidParameterError(f"a_{i} вне отрезка [0, 4^{i}·N].")
    left = sum(value * 2.0**-i for i, value in enumerate(a)) ** 2
    return left <= 3 * big_n * sum(a) * (1 + 1e-12)
