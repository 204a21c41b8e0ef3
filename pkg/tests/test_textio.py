import pytest
from hypothesis import given

from distnets.errors import DuplicateElement, ParseError, UnknownEndpoint
from distnets.textio import emit_net, fixture_names, load_fixture, parse_net

from conftest import plain_nets


def test_fixture_names():
    assert fixture_names() == ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6-impl", "fig6-spec",
                               "fig7-impl", "fig7-spec"]


def test_parse_fig1():
    net = load_fixture("fig1")
    assert net.places == ("p", "q")
    assert net.transitions == ("t", "u")
    assert net.labels == {"t": "a", "u": "b"}
    assert net.initial_marking == frozenset({"p", "q"})
    assert net.preset("u") == frozenset({"p", "q"})


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_round_trip(name):
    net = load_fixture(name)
    text = emit_net(net)
    again = parse_net(text)
    assert emit_net(again) == text
    assert again.arcs == net.arcs and again.labels == net.labels


@given(plain_nets(tau=True))
def test_round_trip(net):
    text = emit_net(net)
    assert emit_net(parse_net(text)) == text


def test_comments_and_blank_lines():
    net = parse_net("# header\n\nplace p marked  # trailing\ntrans t label tau\narc p -> t\n")
    assert net.labels["t"] == "tau" and net.name is None


@pytest.mark.parametrize("text, exc, line, column", [
    ("place p\nplace p\n", DuplicateElement, 2, 1),
    ("place p\ntrans p label a\n", DuplicateElement, 2, 1),
    ("place p\narc p -> t\n", UnknownEndpoint, 2, 10),
    ("place p\n  bogus p\n", ParseError, 2, 3),
    ("trans t a\n", ParseError, 1, 1),
    ("place p\nplace q\narc p -> q\n", ParseError, 3, 1),
    ("place p blue\n", ParseError, 1, 1),
])
def test_parse_errors(text, exc, line, column):
    with pytest.raises(exc) as info:
        parse_net(text)
    assert info.value.line == line
    assert info.value.column == column
    assert f"line {line}, column {column}" in str(info.value)
