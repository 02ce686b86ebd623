import argparse
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel

from src.core.enums import OutputFormat
from src.core.models.graph import Graph, Signing
from src.core.models.signing import SearchParams
from src.core.utils.json import dump_report, json_serialize
from src.infra.files.graph_files import read_graph_file, read_signing


def add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="формат отчета",
    )
    parser.add_argument("--report", type=Path, help="записать JSON-отчет в файл")


def add_search_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, help="число случайных разметок")
    parser.add_argument("--seed", type=int, help="зерно генератора")
    parser.add_argument("--l", type=int, help="четная длина путей оценки X")
    parser.add_argument("--t-sparse", type=int, help="глубина разреженности")
    parser.add_argument("--gamma", type=float, help="порог разреженности γ")
    parser.add_argument("--target-radius", type=float, help="целевой радиус")
    parser.add_argument("--max-iterations", type=int, help="предел итераций улучшения")


def search_params(graph: Graph, args: argparse.Namespace) -> SearchParams:
    """
    Параметры поиска из аргументов командной строки
    :param graph: граф
    :param args: аргументы
    :return: SearchParams
    """
    return SearchParams.for_graph(
        graph,
        budget=args.budget,
        seed=args.seed,
        l=args.l,
        t_sparse=args.t_sparse,
        gamma=args.gamma,
        target_radius=args.target_radius,
        max_iterations=args.max_iterations,
    )


def _flatten(value, prefix: str, lines: list) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else str(key), lines)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}[{i}]", lines)
    else:
        lines.append(f"{prefix}: {value}")


def render_text(report: BaseModel) -> str:
    """Отчет в виде строк `ключ: значение`"""
    lines: list = []
    _flatten(json_serialize(report), "", lines)
    return "\n".join(lines) + "\n"


def emit(report: BaseModel, args: argparse.Namespace) -> str:
    """
    Вывести отчет в выбранном формате и, если задано, записать JSON в файл
    :param report: отчет
    :param args: аргументы с format и report
    :return: выведенный текст
    """
    text = (
        dump_report(report) + "\n"
        if OutputFormat(args.format) == OutputFormat.JSON
        else render_text(report)
    )
    report_path: Optional[Path] = getattr(args, "report", None)
    if report_path is not None:
        report_path.write_text(dump_report(report) + "\n", encoding="utf-8")
    print(text, end="")
    return text


def params_of(args: argparse.Namespace, *names: str) -> dict:
    """Параметры запуска для отчета: только явно заданные и сериализуемые"""
    return {
        name: json_serialize(getattr(args, name))
        for name in names
        if getattr(args, name, None) is not None
    }


def load_graph(args: argparse.Namespace) -> Tuple[Graph, Optional[Signing]]:
    """
    Граф из позиционного аргумента graph; разметка берется из --signing,
    иначе из знаков самого файла
    """
    graph, signing = read_graph_file(args.graph)
    if getattr(args, "signing", None):
        signing = read_signing(args.signing, graph)
    return graph, signing
