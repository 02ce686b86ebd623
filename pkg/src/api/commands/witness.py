import argparse

import numpy as np

from src.api.commands.common import add_output_args, emit, load_graph, params_of
from src.application.schemas.reports import WitnessReport
from src.application.services.discrepancy import (
    centered_form,
    converse_alpha_star,
    discrepancy_witness,
)
from src.application.services.spectral import signed_adjacency, spectral_radius
from src.core.exceptions import InvalidParameterError
from src.core.models.spectral import SymMatrix


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "witness", help="пара множеств с большой дискрепанси"
    )
    parser.add_argument("graph", help="знаковый или регулярный граф")
    parser.add_argument("--signing", help="отдельный файл разметки")
    parser.add_argument(
        "--centered",
        action="store_true",
        help="взять A - (d/n)J с нулевой диагональю вместо A_s",
    )
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    graph, signing = load_graph(args)
    if args.centered:
        entries = centered_form(graph).entries.copy()
        np.fill_diagonal(entries, 0.0)
        matrix, kind = SymMatrix(entries=entries), "centered"
    elif signing is not None:
        matrix, kind = signed_adjacency(graph, signing), "signed"
    else:
        raise InvalidParameterError("нужна разметка или флаг --centered.")

    d = matrix.row_l1_max()
    rho = spectral_radius(matrix)
    witness = discrepancy_witness(matrix, d)
    alpha_star = converse_alpha_star(rho, d) if d > 0 else 0.0

    report = WitnessReport.from_witness(
        witness,
        params=params_of(args, "graph", "signing", "centered"),
        matrix=kind,
        rho=rho,
        d=d,
        alpha_star=alpha_star,
    )
    emit(report, args)
    return 0
