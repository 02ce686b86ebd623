import pytest

from src.application.services.builder import ExpanderBuilder
from src.application.services.graphs import make_railway
from src.application.services.sample_space import (
    SpaceSigningSource,
    materialize_chain,
    pair_space,
)
from src.core.enums import SigningStrategy
from src.core.exceptions import InvalidParameterError, ParseError
from src.core.models.signing import LiftChain
from src.infra.files.graph_files import (
    format_graph,
    parse_graph_text,
    read_chain,
    read_graph,
    read_signed_graph,
    read_signing,
    write_chain,
    write_graph,
)
from tests.fixtures.unit.graphs import k4, path3  # noqa: F401


@pytest.mark.unit
def test_format_graph_header(k4, path3):
    """
    Тест заголовка: степень пишется только для регулярных графов
    """
    assert format_graph(k4).splitlines()[0] == "4 6 3"
    assert format_graph(path3).splitlines()[0] == "3 2"


@pytest.mark.unit
def test_signed_graph_round_trip(tmp_path):
    """
    Тест записи и чтения знакового графа
    """
    graph, signing = make_railway(3)
    path = write_graph(tmp_path / "railway.sg", graph, signing)

    parsed_graph, parsed_signing = read_signed_graph(path)

    assert parsed_graph == graph
    assert parsed_signing == signing
    assert read_signing(path, graph) == signing


@pytest.mark.unit
def test_parse_comments_and_signs():
    """
    Тест разбора с комментариями и знаками
    """
    text = "# треугольник\n3 3 2\n0 1 +1\n1 2 -1  # отрицательное\n\n0 2 1\n"

    graph, signing = parse_graph_text(text)

    assert graph.m == 3
    assert signing.signs == (1, -1, 1)


@pytest.mark.unit
@pytest.mark.parametrize(
    "text, line",
    [
        ("4 1\n0 0 +1\n", 2),
        ("4 6 3\n0 1\n0 2\n0 3\n1 2\n1 3\n", 6),
        ("4 2\n0 1 +1\n1 2\n", 3),
        ("4 1\n0 4\n", 2),
        ("4 2\n0 1\n1 0\n", 3),
        ("4 1\n0 1 +2\n", 2),
        ("4 2 3\n0 1\n2 3\n", 1),
        ("four 1\n0 1\n", 1),
        ("", 1),
    ],
)
def test_parse_errors_report_line(text, line):
    """
    Тест ошибок разбора: петля, число ребер, смешанные знаки, диапазон,
    кратное ребро, знак, регулярность, заголовок
    """
    with pytest.raises(ParseError) as exc:
        parse_graph_text(text)

    assert exc.value.line_number == line
    assert str(exc.value).startswith(f"строка {line}:")


@pytest.mark.unit
def test_read_missing_file(tmp_path):
    """
    Тест чтения отсутствующего файла
    """
    with pytest.raises(InvalidParameterError):
        read_graph(tmp_path / "missing.g")


@pytest.mark.unit
def test_read_signed_graph_without_signs(tmp_path, k4):
    """
    Тест чтения знакового графа из файла без знаков
    """
    path = write_graph(tmp_path / "k4.g", k4)

    with pytest.raises(ParseError):
        read_signed_graph(path)


@pytest.mark.unit
def test_read_signing_edge_mismatch(tmp_path, k4):
    """
    Тест отказа, если ребра файла разметки не совпадают с графом
    """
    graph, signing = make_railway(2)
    path = write_graph(tmp_path / "railway.sg", graph, signing)

    with pytest.raises(InvalidParameterError):
        read_signing(path, k4)


@pytest.mark.unit
def test_chain_round_trip_explicit(tmp_path, k4_params):
    """
    Тест записи и чтения цепочки с явными разметками уровней
    """
    builder = ExpanderBuilder(3, SigningStrategy.RANDOM, k4_params)
    graph, _ = builder.build(16)

    path = write_chain(tmp_path / "chain.txt", builder.chain())
    chain = read_chain(path)

    assert chain.depth == 2
    assert (tmp_path / "chain.base.g").is_file()
    assert (tmp_path / "chain.level1.sg").is_file()
    assert materialize_chain(chain)[-1] == graph


@pytest.mark.unit
def test_chain_round_trip_space(tmp_path, k4):
    """
    Тест цепочки из точек выборочного пространства
    """
    source = SpaceSigningSource(pair_space(4, 3), (3, 5), 4)
    chain = LiftChain(base=k4, sources=(source,))

    path = write_chain(tmp_path / "space.txt", chain)
    parsed = read_chain(path)

    assert path.read_text(encoding="utf-8").splitlines()[1] == "1 3 3 5"
    assert materialize_chain(parsed) == materialize_chain(chain)


@pytest.mark.unit
@pytest.mark.parametrize(
    "body, line",
    [
        ("graph k4.g\n", 1),
        ("base k4.g\n2 3 1 1\n", 2),
        ("base k4.g\n1 3 9 1\n", 2),
        ("base k4.g\n1 implicit\n", 2),
    ],
)
def test_chain_parse_errors(tmp_path, k4, body, line):
    """
    Тест ошибок разбора цепочки: заголовок, номер уровня, зерно, формат
    """
    write_graph(tmp_path / "k4.g", k4)
    path = tmp_path / "chain.txt"
    path.write_text(body, encoding="utf-8")

    with pytest.raises(ParseError) as exc:
        read_chain(path)

    assert exc.value.line_number == line
