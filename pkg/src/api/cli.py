import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.api.commands import (
    analyze,
    build,
    example,
    lift,
    oracle,
    sign,
    verify,
    witness,
)
from src.core.config import config
from src.core.exceptions import (
    GenerationFailureError,
    InternalConsistencyError,
    InvalidParameterError,
    ParseError,
    PropertyViolationError,
    SizeLimitError,
    SolverFailureError,
)
from src.core.logging import get_logger
from src.core.utils.json import dump_report

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMMANDS = (build, analyze, sign, lift, witness, verify, example, oracle)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=config.APP_NAME,
        description="построение экспандеров 2-лифтами и аудит дискрепанси",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа CLI
    :param argv: аргументы (по умолчанию sys.argv[1:])
    :return: код выхода: 0 успех, 1 нарушение свойства, 2 ошибка использования
    """
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        return args.handler(args)
    except (InvalidParameterError, ParseError, ValidationError) as e:
        print(f"{parser.prog} {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PropertyViolationError as e:
        logger.error(f"нарушено свойство: {e}")
        if e.report is not None:
            print(dump_report(e.report))
        return EXIT_FAILURE
    except SizeLimitError as e:
        logger.error(f"превышен предел перебора: {e}")
        if e.partial is not None:
            print(dump_report(e.partial))
        return EXIT_FAILURE
    except (
        InternalConsistencyError,
        SolverFailureError,
        GenerationFailureError,
    ) as e:
        logger.error(f"{args.command} завершилась с ошибкой: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
