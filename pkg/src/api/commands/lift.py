import argparse

from src.api.commands.common import add_output_args, emit, load_graph, params_of
from src.application.schemas.reports import LiftReport
from src.application.services.graphs import covering_check, two_lift
from src.application.services.spectral import lift_spectrum_decompose
from src.core.exceptions import InvalidParameterError
from src.infra.files.graph_files import write_graph


def register(subparsers) -> None:
    parser = subparsers.add_parser("lift", help="2-лифт графа по разметке")
    parser.add_argument("graph", help="знаковый граф")
    parser.add_argument("--signing", help="отдельный файл разметки")
    parser.add_argument("--tol", type=float, help="допуск сверки спектров")
    parser.add_argument("--out", help="файл лифта")
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    graph, signing = load_graph(args)
    if signing is None:
        raise InvalidParameterError("для лифта нужна разметка.")

    lifted, projection = two_lift(graph, signing)
    spectrum = lift_spectrum_decompose(graph, signing, args.tol)
    if args.out:
        write_graph(args.out, lifted)

    report = LiftReport(
        params=params_of(args, "graph", "signing", "tol"),
        n=lifted.n,
        m=lifted.m,
        covering_ok=covering_check(lifted, graph, projection),
        old_radius=max((abs(x) for x in spectrum.old), default=0.0),
        new_radius=spectrum.new_radius,
        lambda_lift=spectrum.lifted.lambda2,
        lift_path=args.out,
    )
    emit(report, args)
    return 0
