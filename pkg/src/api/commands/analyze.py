import argparse

from src.api.commands.common import add_output_args, emit, load_graph, params_of
from src.application.schemas.reports import (
    AnalyzeReport,
    JumbledReport,
    SparsityReport,
)
from src.application.services.discrepancy import (
    converse_bound,
    jumbledness_alpha_exact,
    jumbledness_alpha_sampled,
    signed_discrepancy_check,
    sparse_check,
)
from src.application.services.spectral import (
    adjacency_matrix,
    eigenvalues_sym,
    signed_adjacency,
)
from src.core.config import config
from src.core.exceptions import InvalidParameterError

DEFAULT_SAMPLES = 2000


def register(subparsers) -> None:
    parser = subparsers.add_parser("analyze", help="спектр и дискрепанси графа")
    parser.add_argument("graph", help="файл графа")
    parser.add_argument("--signing", help="знаковый граф с разметкой")
    parser.add_argument(
        "--jumbled", action="store_true", help="оценить α (только регулярные графы)"
    )
    parser.add_argument(
        "--disjoint", action="store_true", help="только непересекающиеся S, T"
    )
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--sparse-beta", type=float, help="порог β проверки")
    parser.add_argument("--t-sparse", type=int, help="размер носителя проверки")
    parser.add_argument("--tol", type=float, help="допуск сравнения α и λ")
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    graph, signing = load_graph(args)
    tol = config.LIFT_SPECTRUM_TOL if args.tol is None else args.tol
    if args.jumbled and not graph.is_regular():
        raise InvalidParameterError("α определена только для регулярных графов.")
    if (args.sparse_beta is None) != (args.t_sparse is None):
        raise InvalidParameterError("--sparse-beta и --t-sparse задаются вместе.")

    base = eigenvalues_sym(adjacency_matrix(graph))
    spectrum = eigenvalues_sym(signed_adjacency(graph, signing)) if signing else base
    regular = graph.is_regular()
    d = graph.regular_degree() if regular and graph.n else None

    jumbled, mixing_ok, bound = None, None, None
    if args.jumbled:
        if graph.n <= config.JUMBLED_EXACT_MAX_N:
            result = jumbledness_alpha_exact(graph, args.disjoint)
        else:
            result = jumbledness_alpha_sampled(
                graph, args.samples, args.seed, args.disjoint
            )
        jumbled = JumbledReport.from_result(result)
        if result.exact and not args.disjoint:
            mixing_ok = result.alpha <= base.lambda2 + tol
        if d and 0 < result.alpha <= d:
            bound = converse_bound(result.alpha, d)

    sparsity = None
    if args.sparse_beta is not None:
        if signing is not None:
            check = signed_discrepancy_check(
                graph, signing, args.sparse_beta, args.t_sparse
            )
        else:
            check = sparse_check(graph, args.sparse_beta, args.t_sparse)
        sparsity = SparsityReport.from_result(check)

    report = AnalyzeReport(
        params=params_of(
            args, "graph", "signing", "jumbled", "disjoint", "sparse_beta", "t_sparse"
        ),
        n=graph.n,
        m=graph.m,
        regular=regular,
        d=d,
        connected=graph.is_connected(),
        components=len(graph.components()),
        signed=signing is not None,
        eigenvalues=list(spectrum.eigenvalues),
        radius=spectrum.radius,
        lambda2=base.lambda2,
        jumbled=jumbled,
        mixing_ok=mixing_ok,
        converse_bound=bound,
        sparsity=sparsity,
    )
    emit(report, args)
    return 0
