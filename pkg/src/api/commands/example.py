import argparse

from src.api.commands.common import add_output_args, emit, params_of
from src.application.schemas.reports import ExampleReport
from src.application.services.examples import (
    DEFAULT_SAMPLES,
    outer_product_report,
    tightness_family,
)
from src.application.services.graphs import (
    disjoint_cliques,
    make_railway,
    random_regular,
)
from src.application.services.spectral import signed_adjacency, spectral_radius
from src.core.utils.json import json_serialize
from src.infra.files.graph_files import write_graph


def register(subparsers) -> None:
    parser = subparsers.add_parser("example", help="графы-примеры")
    families = parser.add_subparsers(dest="family", required=True)

    railway = families.add_parser("railway", help="3-регулярная «железная дорога»")
    railway.add_argument("--k", type=int, required=True)

    cliques = families.add_parser("cliques", help="несвязные копии K_{d+1}")
    cliques.add_argument("--copies", type=int, required=True)
    cliques.add_argument("--d", type=int, required=True)

    regular = families.add_parser("regular", help="случайный d-регулярный граф")
    regular.add_argument("--n", type=int, required=True)
    regular.add_argument("--d", type=int, required=True)

    outer = families.add_parser("outer", help="матрица x·x^T, x_i = 1/sqrt(i)")
    outer.add_argument("--n", type=int, required=True)

    tight = families.add_parser("tight", help="семейство с λ ≈ α·log(d/α)")
    tight.add_argument("--delta", type=int, required=True)
    tight.add_argument("--t", type=int, required=True)
    tight.add_argument("--big-n", type=int, required=True)

    for sub in (railway, cliques, regular, outer, tight):
        sub.add_argument("--seed", type=int)
        sub.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        sub.add_argument("--out", help="файл графа")
        add_output_args(sub)
        sub.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    signing, details = None, {}
    if args.family == "railway":
        graph, signing = make_railway(args.k)
        details = {
            "radius": spectral_radius(signed_adjacency(graph, signing)),
            "negative_edges": signing.negative_count,
        }
    elif args.family == "cliques":
        graph = disjoint_cliques(args.copies, args.d)
        details = {"components": len(graph.components())}
    elif args.family == "regular":
        graph = random_regular(args.n, args.d, args.seed)
    elif args.family == "outer":
        outer = outer_product_report(args.n, args.samples, args.seed)
        report = ExampleReport(
            params=params_of(args, "family", "n", "seed", "samples"),
            family=args.family,
            n=args.n,
            m=0,
            details=json_serialize(outer),
        )
        emit(report, args)
        return 0
    else:
        graph, record = tightness_family(
            args.delta, args.t, args.big_n, args.seed, args.samples
        )
        details = json_serialize(record)

    if args.out:
        write_graph(args.out, graph, signing)
    report = ExampleReport(
        params=params_of(
            args, "family", "k", "copies", "d", "n", "delta", "t", "big_n", "seed"
        ),
        family=args.family,
        n=graph.n,
        m=graph.m,
        details=details,
        out_path=args.out,
    )
    emit(report, args)
    return 0
