import numpy as np
import pytest
from conftest import RATIONAL

from opuc._util import complex_from_json, complex_to_json, eval_expr, parse_complex
from opuc.errors import NotApplicableError
from opuc.measure import BernsteinSzego, ChristoffelLebesgue, Lebesgue, TildeRational
from opuc.presets import build_setup, load_spec, parse_a_rule, resolve_preset
from opuc.tables import figure_series, fmt_complex, fmt_real, table_columns, table_csv
from opuc.szego import family_from_measure


@pytest.mark.parametrize(
    "text,value",
    [
        ("0.4", 0.4),
        ("i", 1j),
        ("-0.4i", -0.4j),
        ("1/6-i", 1 / 6 - 1j),
        ("(2/(2+1))i", 2j / 3),
        ("2**3", 8),
        ("3j", 3j),
    ],
)
def test_eval_expr(text, value):
    assert eval_expr(text, n=2) == pytest.approx(value)


@pytest.mark.parametrize("text", ["__import__('os')", "n+", "abs(2)", "x"])
def test_eval_expr_rejects(text):
    with pytest.raises(ValueError):
        eval_expr(text, n=1)


def test_complex_helpers():
    assert parse_complex(2) == 2 and parse_complex("0.3-0.1i") == 0.3 - 0.1j
    assert complex_from_json(complex_to_json(1 - 2j)) == 1 - 2j
    assert complex_from_json(0.5) == 0.5


def test_presets():
    assert resolve_preset("lebesgue") == Lebesgue()
    assert resolve_preset("lebesgue-norm") == Lebesgue(normalized=True)
    assert resolve_preset("bernstein:0.5") == BernsteinSzego(0.5)
    assert resolve_preset("christoffel-i") == ChristoffelLebesgue(1j)
    assert resolve_preset("rational-example") == RATIONAL
    with pytest.raises(ValueError):
        resolve_preset("nope")
    with pytest.raises(ValueError):
        load_spec()


def test_a_rules():
    base = family_from_measure(ChristoffelLebesgue(1.0), 5)
    assert np.allclose(parse_a_rule("constant:0.4").sequence(base, 3), 0.4)
    assert np.allclose(parse_a_rule("table1a").sequence(base, 3), [0.5 - 1j, 1 / 3 - 1j, 0.25 - 1j])
    assert np.allclose(parse_a_rule("seq:n/(n+1)").sequence(base, 3), [0.5, 2 / 3, 0.75])
    assert np.allclose(parse_a_rule("list:0.1,0.2i,0.3").sequence(base, 3), [0.1, 0.2j, 0.3])
    assert np.allclose(parse_a_rule("marcellan").sequence(base, 5), np.arange(1, 6) / np.arange(2, 7))
    with pytest.raises(ValueError):
        parse_a_rule("list:0.1").sequence(base, 3)
    for bad in ("bogus", "other:1", "seq:n+"):
        with pytest.raises(ValueError):
            parse_a_rule(bad)


def test_setup_companions():
    s = build_setup(Lebesgue(), 4, "constant:0.4")
    assert s.tilde_spec == BernsteinSzego(0.4) and s.base.N == 5 and len(s.a) == 5
    s = build_setup(BernsteinSzego(0.5), 4, "constant:-0.5")
    assert s.tilde_spec == TildeRational(1.0, 0.5, -0.5)
    # a sequence typed out by hand is recognized as the Marcellan one
    s = build_setup(ChristoffelLebesgue(1.0), 4, "seq:n/(n+1)")
    assert s.tilde_spec == Lebesgue(normalized=True)
    # an arbitrary sequence has no companion
    s = build_setup(ChristoffelLebesgue(1.0), 4, "table1a")
    assert s.tilde_spec is None and s.qf is not None
    assert build_setup(Lebesgue(), 3).a is None


def test_setup_limits():
    for N in (0, 65):
        with pytest.raises(ValueError):
            build_setup(Lebesgue(), N)
    with pytest.raises(NotApplicableError):
        build_setup(Lebesgue(), 3, "marcellan")


@pytest.mark.parametrize(
    "x,text", [(0.0, "0.000000"), (-1e-9, "0.000000"), (-0.5, "-0.500000"), (1.9659482, "1.965948")]
)
def test_fmt_real(x, text):
    assert fmt_real(x) == text


@pytest.mark.parametrize(
    "z,text",
    [
        (0.5 - 1e-9j, "0.500000"),
        (-0.2j, "-0.200000i"),
        (0.1 + 0.2j, "0.100000+0.200000i"),
        (0.1 - 0.2j, "0.100000-0.200000i"),
        (1e-9 - 1e-9j, "0.000000"),
    ],
)
def test_fmt_complex(z, text):
    assert fmt_complex(z) == text


def test_table_shapes():
    for which, widths in ((1, [5, 6, 5, 6, 5]), (2, [4, 5, 4, 5, 4]), (3, [6, 7, 6, 7])):
        assert [p.degree for _, p in table_columns(which)] == widths
        lines = table_csv(which).splitlines()
        assert len(lines) == 1 + max(widths)
        assert all(len(line.split(",")) == len(widths) for line in lines)
    with pytest.raises(ValueError):
        table_columns(4)


def test_figure_series():
    for which in (3, 4):
        labels = [label for label, _ in figure_series(which)]
        n = 6 if which == 3 else 7
        assert labels[0].startswith(f"PhiP_{n}") and labels[-1] == f"R_{n}(z)"
        popuc_leb = figure_series(which)[1][1]
        assert np.allclose(np.abs(popuc_leb.roots()), 1)
    with pytest.raises(ValueError):
        figure_series(5)
