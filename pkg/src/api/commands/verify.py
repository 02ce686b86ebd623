import argparse

from src.api.commands.common import (
    add_output_args,
    add_search_args,
    emit,
    load_graph,
    params_of,
    search_params,
)
from src.application.schemas.reports import GoodnessSection, VerifyReport
from src.application.services.signing import is_good_signing
from src.core.exceptions import InvalidParameterError, SizeLimitError
from src.core.logging import get_logger

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="сертификат хорошей разметки")
    parser.add_argument("graph", help="знаковый граф")
    parser.add_argument("--signing", help="отдельный файл разметки")
    add_search_args(parser)
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    graph, signing = load_graph(args)
    if signing is None:
        raise InvalidParameterError("для проверки нужна разметка.")
    params = search_params(graph, args)

    try:
        goodness = is_good_signing(graph, signing, params)
    except SizeLimitError as e:
        logger.error(f"проверка прервана: {e}")
        goodness = e.partial
        if goodness is None:
            raise

    report = VerifyReport(
        params=params_of(args, "graph", "signing", "gamma", "t_sparse"),
        goodness=GoodnessSection.from_report(goodness),
    )
    emit(report, args)
    return 0 if goodness.is_good and not goodness.partial else 1
