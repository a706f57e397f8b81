from pathlib import Path

import pytest

from laurentkit import homogeneous as hom
from laurentkit import recurrences as rec
from laurentkit.deffile import KINDS, DefinitionError, load_file, load_text
from laurentkit.exchange import check_caterpillar_conditions, propagate
from laurentkit.parsing import PolySyntaxError

DEFS = Path(__file__).resolve().parent.parent / "definitions"
FILES = sorted(DEFS.glob("*.rec"))


def same_recurrence(a, b):
    if a.kind != b.kind:
        return False
    if a.kind == rec.CYCLIC:
        return a.recurrence == b.recurrence and a.embedding == b.embedding and a.bindings == b.bindings
    sa, sb = a.recurrence, b.recurrence
    return (
        sa.template.to_space(sb.template.space) == sb.template
        and (sa.shift, sa.key_rows, sa.order, sa.congruence, sa.letters) == (sb.shift, sb.key_rows, sb.order, sb.congruence, sb.letters)
        and a.region == b.region
    )


def test_every_catalog_entry_has_a_file():
    names = {p.stem for p in FILES}
    assert set(rec.catalog_names()) <= names


@pytest.mark.parametrize("path", FILES, ids=lambda p: p.stem)
def test_definition_file(path):
    d = load_file(path)
    assert d.kind in KINDS
    if d.kind in ("cyclic", "stencil"):
        assert same_recurrence(d.value, rec.lookup(d.name))
    elif d.kind == "homogeneous":
        assert hom.check_homogeneous(d.value).verdict == hom.PASS
    else:
        pattern, spine = d.value
        assert check_caterpillar_conditions(pattern, spine).verdict == "pass"
        assert isinstance(propagate(pattern), dict)


def test_constant_override_changes_the_recurrence():
    d = load_file(DEFS / "somos4gen.rec", {"a": 2, "b": 3})
    assert same_recurrence(d.value, rec.somos4_generalized(2, 3, 1))


def test_parameter_override_binds():
    d = load_file(DEFS / "gale_robinson.rec", {"alpha": 1, "beta": 1, "gamma": 1})
    tab = rec.compute_sequence_numeric(d.value, count=10)
    assert [int(v) for _, v in tab.ordered()] == [1, 1, 1, 1, 1, 1, 3, 5, 9, 23]


def test_homogeneous_quadratic_file_matches_builtin():
    d = load_file(DEFS / "quadratic3.rec")
    built = hom.quadratic(3)
    rename = {f"a{k}{l}": f"alpha_{k}_{l}" for k, l in [(1, 2), (1, 3), (2, 3)]}
    assert [p.to_space(built.space, rename) for p in d.value.P] == list(built.P)


def test_inline_cyclic():
    d = load_text("kind: cyclic\nn: 3\npolynomial: x1*x2 + 1\n")
    assert d.name == "custom"
    assert verify_cyclic_pass(d.value)


def verify_cyclic_pass(spec):
    from laurentkit.cyclic import verify_cyclic

    return verify_cyclic(rec.bound_recurrence(spec)).verdict == "pass"


@pytest.mark.parametrize(
    "text,match",
    [
        ("kind: [", "YAML"),
        ("- 1\n- 2\n", "mapping"),
        ("kind: spiral\n", "unknown kind"),
        ("kind: cyclic\nn: 3\n", "polynomial"),
        ("kind: cyclic\nn: 3\npolynomial: x1 + 1\nconstants: {a: x}\n", "integer"),
        ("kind: stencil\ntemplate: y[-1,0] + 1\nshift: [1, 1]\nregion: {inequalities: [[[1, 0, 0], 0]]}\n", "dimension"),
        ("kind: pattern\nroot: 0\nedges: []\n", "variables"),
    ],
)
def test_errors(text, match):
    with pytest.raises(DefinitionError, match=match):
        load_text(text)


def test_bad_polynomial_is_reported():
    with pytest.raises((DefinitionError, PolySyntaxError)):
        load_text("kind: cyclic\nn: 3\npolynomial: x1 +* 1\n")


def test_missing_file():
    with pytest.raises(DefinitionError, match="cannot read"):
        load_file(DEFS / "nope.rec")
