import argparse

from src.api.commands.common import (
    add_output_args,
    add_search_args,
    emit,
    load_graph,
    params_of,
    search_params,
)
from src.application.schemas.reports import GoodnessSection, SignReport
from src.application.services.sample_space import epsilon_biased_space
from src.application.services.signing import (
    ConditionalEstimator,
    conjecture_probe,
    is_good_signing,
    local_refinement,
    random_search,
    search_sample_space,
)
from src.application.services.spectral import signed_adjacency, spectral_radius
from src.core.enums import SigningStrategy, SpaceObjective
from src.infra.files.graph_files import write_graph

EXHAUSTIVE = "exhaustive"


def register(subparsers) -> None:
    parser = subparsers.add_parser("sign", help="найти разметку графа")
    parser.add_argument("graph", help="файл графа")
    parser.add_argument(
        "--strategy",
        choices=[s.value for s in SigningStrategy] + [EXHAUSTIVE],
        default=SigningStrategy.RANDOM.value,
    )
    parser.add_argument("--field-log", type=int, help="s для выборочного пространства")
    parser.add_argument(
        "--objective",
        choices=[o.value for o in SpaceObjective],
        default=SpaceObjective.X_VALUE.value,
    )
    parser.add_argument("--out", help="файл знакового графа")
    add_search_args(parser)
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    graph, _ = load_graph(args)
    params = search_params(graph, args)
    details: dict = {}

    if args.strategy == EXHAUSTIVE:
        probe = conjecture_probe(graph, params)
        signing = probe.signing
        details = {"found": probe.found, "exhaustive": probe.exhaustive}
    else:
        strategy = SigningStrategy(args.strategy)
        if strategy == SigningStrategy.RANDOM:
            signing, _, drawn = random_search(
                graph, params.budget, params.seed, params.target_radius
            )
            details = {"drawn": drawn}
        elif strategy == SigningStrategy.LOCAL_REFINE:
            result = local_refinement(graph, params)
            signing = result.signing
            details = {
                "iterations": result.iterations,
                "converged": result.converged,
                "radius_trace": list(result.radius_trace),
            }
        elif strategy == SigningStrategy.DERANDOMIZED:
            result = ConditionalEstimator(graph, params).derandomize()
            signing = result.signing
            details = {
                "l": result.l,
                "t_sparse": result.t_sparse,
                "initial_expectation": result.initial_expectation,
                "final_value": result.final_value,
                "trace_value": result.trace_value,
                "violations": result.violations,
            }
        else:
            s = args.field_log or max(graph.m, 1).bit_length()
            space = epsilon_biased_space(max(graph.m, 1), s)
            result = search_sample_space(
                graph, space, params, SpaceObjective(args.objective)
            )
            signing = result.signing
            details = {
                "field_log": s,
                "seedpair": list(result.seedpair),
                "best_value": result.best_value,
                "mean_value": result.mean_value,
            }

    radius = spectral_radius(signed_adjacency(graph, signing))
    goodness = is_good_signing(graph, signing, params)
    if args.out:
        write_graph(args.out, graph, signing)

    report = SignReport(
        params=params_of(args, "graph", "strategy", "budget", "seed", "l", "t_sparse"),
        strategy=args.strategy,
        radius=radius,
        target=params.target_radius,
        negative_edges=signing.negative_count,
        goodness=GoodnessSection.from_report(goodness),
        details=details,
        signing_path=args.out,
    )
    emit(report, args)
    return 0
