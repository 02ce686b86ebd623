import argparse
from dataclasses import replace

from src.api.commands.common import add_output_args, emit
from src.application.schemas.reports import BuildReport, BuildRequest
from src.application.services.builder import ExpanderBuilder
from src.application.services.discrepancy import jumbledness_alpha_sampled
from src.core.enums import SigningStrategy
from src.core.models.signing import SearchParams
from src.infra.files.graph_files import write_chain, write_graph
from src.infra.metrics.build import start_metrics_server

ALPHA_SAMPLES = 2000


def register(subparsers) -> None:
    parser = subparsers.add_parser("build", help="построить экспандер 2-лифтами")
    parser.add_argument("--d", type=int, required=True, help="степень")
    parser.add_argument("--target-n", type=int, required=True, help="(d+1)·2^i")
    parser.add_argument(
        "--strategy",
        choices=[s.value for s in SigningStrategy],
        default=SigningStrategy.RANDOM.value,
    )
    parser.add_argument("--budget", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--t-sparse", type=int)
    parser.add_argument("--out", help="файл итогового графа")
    parser.add_argument("--chain", help="файл цепочки лифтов")
    parser.add_argument("--tol", type=float, help="допуск сверки спектров и λ")
    parser.add_argument(
        "--timings", action="store_true", help="писать время уровней в отчет"
    )
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    request = BuildRequest(
        **{
            k: v
            for k, v in {
                "d": args.d,
                "target_n": args.target_n,
                "strategy": args.strategy,
                "budget": args.budget,
                "seed": args.seed,
                "l": args.l,
                "t_sparse": args.t_sparse,
                "tol": args.tol,
            }.items()
            if v is not None
        }
    )
    start_metrics_server()

    params = SearchParams(
        d=request.d,
        budget=request.budget,
        seed=request.seed,
        l=request.l,
        t_sparse=request.t_sparse,
    )
    builder = ExpanderBuilder(request.d, request.strategy, params, request.tol)
    graph, record = builder.build(request.target_n)

    if args.out:
        write_graph(args.out, graph)
        record = replace(record, graph_path=args.out)
    if args.chain:
        write_chain(args.chain, builder.chain())

    alpha = jumbledness_alpha_sampled(graph, ALPHA_SAMPLES, request.seed).alpha
    report = BuildReport.from_record(
        record,
        params=request.model_dump(mode="json"),
        alpha_sampled=alpha,
        chain_path=args.chain,
        timings=args.timings,
    )
    emit(report, args)
    return 0
