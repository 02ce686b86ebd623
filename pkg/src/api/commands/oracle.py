import argparse
from itertools import combinations

from src.api.commands.common import add_output_args, emit, params_of
from src.application.schemas.reports import OracleQuery, OracleReport
from src.application.services.sample_space import materialize_chain, oracle_adjacent
from src.core.exceptions import InternalConsistencyError
from src.infra.files.graph_files import read_chain


def register(subparsers) -> None:
    parser = subparsers.add_parser("oracle", help="смежность в цепочке лифтов")
    parser.add_argument("chain", help="файл цепочки")
    parser.add_argument("--level", type=int, help="уровень (по умолчанию последний)")
    parser.add_argument(
        "--pair",
        type=int,
        nargs=2,
        action="append",
        default=[],
        metavar=("I", "J"),
        help="пара вершин запроса",
    )
    parser.add_argument(
        "--check",
        action="store_true",
        help="сверить все пары уровня с материализованным графом",
    )
    add_output_args(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    chain = read_chain(args.chain)
    level = chain.depth if args.level is None else args.level
    queries = [
        OracleQuery(i=i, j=j, adjacent=oracle_adjacent(chain, level, i, j))
        for i, j in args.pair
    ]

    checked, consistent = None, None
    if args.check:
        graph = materialize_chain(chain, level)[-1]
        mismatches = [
            (i, j)
            for i, j in combinations(range(graph.n), 2)
            if oracle_adjacent(chain, level, i, j) != graph.has_edge(i, j)
        ]
        checked, consistent = graph.n * (graph.n - 1) // 2, not mismatches

    report = OracleReport(
        params=params_of(args, "chain", "level", "check"),
        level=level,
        level_n=chain.level_size(level),
        queries=queries,
        checked_pairs=checked,
        consistent=consistent,
    )
    emit(report, args)
    if consistent is False:
        raise InternalConsistencyError(
            f"оракул расходится с материализованным уровнем {level}."
        )
    return 0
