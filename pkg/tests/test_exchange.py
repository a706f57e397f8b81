import pytest

from laurentkit.core import LaurentPoly, NotLaurent, VarSpace, lp_subst_inverse_ratio
from laurentkit.cyclic import CyclicSpec, cyclic_caterpillar
from laurentkit.exchange import (
    FAIL,
    PASS,
    PROBABLE,
    Edge,
    ExchangePattern,
    MalformedPattern,
    coefficient_coprime_with,
    check_caterpillar_conditions,
    gep3_witness,
    gcd_probe,
    propagate,
)
from laurentkit.parsing import parse_poly

SP = VarSpace.of(["x1", "x2"], ["a"])


def P(text):
    return parse_poly(text, SP)


def path(polys_by_label, labels):
    edges = [Edge(k, k + 1, lab, P(polys_by_label[lab])) for k, lab in enumerate(labels)]
    return ExchangePattern(SP, ["x1", "x2"], edges, 0)


def test_rank_two_pattern_is_periodic():
    pattern = path({1: "x2 + 1", 2: "x1 + 1"}, [1, 2, 1, 2, 1])
    clusters = propagate(pattern)
    assert clusters[1][1] == P("x1^-1*x2 + x1^-1")
    assert clusters[2][2] == P("x1^-1*x2^-1 + x1^-1 + x2^-1")
    # five exchanges swap the two starting variables
    assert clusters[5].values == (P("x2"), P("x1"))


def test_mismatched_polynomials_are_not_laurent():
    pattern = path({1: "x2 + 1", 2: "x1 + 2"}, [1, 2, 1])
    result = propagate(pattern)
    assert isinstance(result, NotLaurent)
    assert result.location == (2, 3, 1)


def test_pattern_validation():
    with pytest.raises(MalformedPattern):
        path({3: "x1 + 1"}, [3])
    with pytest.raises(MalformedPattern):
        path({1: "x1 + 1"}, [1])
    with pytest.raises(MalformedPattern):
        ExchangePattern(SP, ["x1", "x2"], [Edge(0, 1, 1, P("x2 + 1")), Edge(0, 2, 1, P("x2 + 1"))], 0)
    with pytest.raises(MalformedPattern):
        ExchangePattern(SP, ["x1", "x2"], [Edge(0, 1, 1, P("x2 + 1")), Edge(2, 3, 2, P("x1 + 1"))], 0)
    with pytest.raises(MalformedPattern):
        ExchangePattern(SP, ["x1", "a"], [], 0)
    with pytest.raises(MalformedPattern):
        path({1: "0"}, [1])


def test_gep3_witness_on_rank_two():
    Q0 = LaurentPoly.const(SP, 1)
    w = gep3_witness(P("x2 + 1"), Q0, P("x2 + 1"), "x2")
    assert w is not None
    L, b = w
    assert L.is_monomial()
    assert L * Q0 ** b * P("x2 + 1") == lp_subst_inverse_ratio(P("x2 + 1"), "x2", Q0)


def test_gep3_witness_rejects_unrelated_polynomials():
    assert gep3_witness(P("x2 + 1"), P("x1 + 3"), P("x2 + 5"), "x2") is None


def test_coefficient_must_be_coprime():
    assert coefficient_coprime_with(P("x1"), P("x1 + 1"))
    assert not coefficient_coprime_with(P("2*x1"), P("2*x1 + 4"))
    assert not coefficient_coprime_with(P("a*x1"), P("a*x2 + a"))


def test_caterpillar_conditions_hold_for_somos4():
    spec = CyclicSpec.from_text("x1*x3 + x2^2", 4)
    pattern, spine = cyclic_caterpillar(spec, 9)
    rep = check_caterpillar_conditions(pattern, spine)
    assert rep.verdict == PASS
    kinds = {r.condition for r in rep.results}
    assert kinds == {"GEP1", "GEP2", "GEP3"}
    for r in rep.results:
        assert r.status in (PASS, PROBABLE)
        if r.condition == "GEP1":
            assert len(r.edges) == 1 and len(r.edges[0]) == 3


def test_caterpillar_flags_divisible_edge_polynomial():
    pattern = path({1: "x2^2 + x2", 2: "x1 + 1"}, [1, 2, 1])
    rep = check_caterpillar_conditions(pattern, [1, 2])
    assert rep.verdict == FAIL
    assert any(r.condition == "GEP1" for r in rep.failures())


def test_spine_vertices_need_full_degree():
    pattern = path({1: "x2 + 1", 2: "x1 + 1"}, [1, 2])
    with pytest.raises(MalformedPattern):
        check_caterpillar_conditions(pattern, [0, 1])


def test_gcd_probe_on_laurent_path():
    pattern = path({1: "x2 + 1", 2: "x1 + 1"}, [1, 2, 1])
    probe = gcd_probe(pattern, [0, 1, 2, 3])
    assert probe.laurent
    assert probe.verdict == PROBABLE


def test_gcd_probe_reports_non_laurent_path():
    pattern = path({1: "x2 + 1", 2: "x1 + 2"}, [1, 2, 1])
    probe = gcd_probe(pattern, [0, 1, 2, 3])
    assert not probe.laurent
    assert probe.verdict == FAIL
    assert probe.finding is not None


def test_gcd_probe_needs_i_j_i_labels():
    pattern = path({1: "x2 + 1", 2: "x1 + 1"}, [1, 2, 1])
    with pytest.raises(MalformedPattern):
        gcd_probe(pattern, [0, 1, 2])
