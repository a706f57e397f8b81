"""Exchange patterns on edge-labeled trees.

A pattern assigns to each edge ``t --k-- t'`` a polynomial ``P`` free of the
k-th cluster variable.  Clusters are propagated from a root by the exchange
rule ``x_k(t) * x_k(t') = P(x(t))`` with every other coordinate copied.  The
checker tests the three hypotheses under which every cluster of a caterpillar
tree (a spine of full-degree vertices plus leaves) is Laurent in the root
cluster.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .core import (
    COMMON_FACTOR,
    LaurentPoly,
    NotDivisible,
    NotLaurent,
    VarSpace,
    lp_compose,
    lp_content_split,
    lp_coprime_probable,
    lp_divide_out_max_power,
    lp_exact_div,
    lp_set_zero,
    lp_subst_inverse_ratio,
)

PASS = "pass"
FAIL = "fail"
PROBABLE = "probable"


class MalformedPattern(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: Hashable
    v: Hashable
    label: int
    poly: LaurentPoly


@dataclass(frozen=True)
class Cluster:
    values: tuple[LaurentPoly, ...]

    def __getitem__(self, k):
        """1-based access, matching edge labels."""
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)


class ExchangePattern:
    """A finite tree with labeled edges and one exchange polynomial per edge.

    ``variables`` names the cluster coordinates x_1..x_n; they must be
    exchange-role variables of ``space``.  Labels are 1-based.
    """

    def __init__(self, space: VarSpace, variables: Sequence[str], edges: Sequence[Edge], root: Hashable):
        self.space = space
        self.variables = tuple(variables)
        self.n = len(self.variables)
        self.edges = tuple(edges)
        self.root = root
        for v in self.variables:
            if v not in space or space.role(v) != "exchange":
                raise MalformedPattern(f"cluster variable {v!r} is not an exchange variable of the space")
        self.adjacency: dict = {root: []}
        for e in self.edges:
            if not 1 <= e.label <= self.n:
                raise MalformedPattern(f"label {e.label} outside 1..{self.n}")
            if e.poly.space != space:
                raise MalformedPattern("edge polynomial lives in a different space")
            if e.poly.is_zero():
                raise MalformedPattern(f"zero exchange polynomial on edge {e.u}-{e.v}")
            if e.poly.depends_on(self.variables[e.label - 1]):
                raise MalformedPattern(f"polynomial on edge {e.u}-{e.v} depends on its own label variable")
            for a in (e.u, e.v):
                self.adjacency.setdefault(a, [])
            self.adjacency[e.u].append(e)
            self.adjacency[e.v].append(e)
        for t, es in self.adjacency.items():
            labels = [e.label for e in es]
            if len(set(labels)) != len(labels):
                raise MalformedPattern(f"repeated label at vertex {t!r}")
        if len(self.edges) != len(self.adjacency) - 1 or len(self.tree_edges_from_root()) != len(self.edges):
            raise MalformedPattern("edges do not form a tree containing the root")

    def tree_edges_from_root(self):
        """``(parent, edge, child)`` triples in breadth-first order."""
        seen = {self.root}
        out = []
        queue = deque([self.root])
        while queue:
            t = queue.popleft()
            for e in self.adjacency[t]:
                nxt = e.v if e.u == t else e.u
                if nxt not in seen:
                    seen.add(nxt)
                    out.append((t, e, nxt))
                    queue.append(nxt)
        return out

    def edge_between(self, a, b) -> Edge:
        for e in self.adjacency[a]:
            if b in (e.u, e.v) and a != b:
                return e
        raise MalformedPattern(f"no edge between {a!r} and {b!r}")

    def edge_at(self, t, label: int) -> Edge | None:
        for e in self.adjacency[t]:
            if e.label == label:
                return e
        return None

    def root_cluster(self) -> Cluster:
        return Cluster(tuple(LaurentPoly.var(self.space, v) for v in self.variables))

    def exchange(self, cluster: Cluster, edge: Edge) -> LaurentPoly:
        """New value of ``x_label`` across ``edge``; NotDivisible if not Laurent."""
        values = dict(zip(self.variables, cluster.values))
        numer = lp_compose(edge.poly, values, self.space)
        return lp_exact_div(numer, cluster[edge.label])


def propagate(pattern: ExchangePattern) -> dict | NotLaurent:
    """Clusters at every vertex, in root variables, or the first failing edge."""
    clusters = {pattern.root: pattern.root_cluster()}
    for parent, e, child in pattern.tree_edges_from_root():
        cur = clusters[parent]
        try:
            new = pattern.exchange(cur, e)
        except NotDivisible:
            values = dict(zip(pattern.variables, cur.values))
            numer = lp_compose(e.poly, values, pattern.space)
            return NotLaurent((parent, child, e.label), str(numer), str(cur[e.label]))
        vals = list(cur.values)
        vals[e.label - 1] = new
        clusters[child] = Cluster(tuple(vals))
    return clusters


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    edges: tuple
    status: str
    detail: str = ""
    multiplier: LaurentPoly | None = None
    power: int | None = None


@dataclass(frozen=True)
class CaterpillarReport:
    results: tuple[ConditionResult, ...]
    seed: int
    verdict: str = field(default="")

    def failures(self):
        return [r for r in self.results if r.status == FAIL]

    def __post_init__(self):
        if not self.verdict:
            object.__setattr__(self, "verdict", FAIL if self.failures() else PASS)


def _check_gep1(pattern: ExchangePattern, e: Edge) -> ConditionResult:
    where = ((e.u, e.v, e.label),)
    p = e.poly
    if not p.is_polynomial():
        return ConditionResult("GEP1", where, FAIL, "exchange polynomial has a negative exponent")
    for v in pattern.variables:
        if p.degree_in(v)[0] > 0:
            return ConditionResult("GEP1", where, FAIL, f"divisible by {v}")
    return ConditionResult("GEP1", where, PASS)


def coefficient_coprime_with(lead: LaurentPoly, poly: LaurentPoly) -> bool:
    """Whether the single term ``lead`` has a coefficient coprime with ``poly``.

    The coefficient is an integer times a monomial in parameters; it shares a
    factor with ``poly`` only through the integer or monomial content.
    """
    (m, c), = lead.terms.items()
    content, _ = lp_content_split(poly)
    (mc, k), = content.terms.items()
    if math.gcd(c, k) != 1:
        return False
    sp = lead.space
    return not any(
        sp.is_parameter(i) and sp.exponent(m, i) > 0 and sp.exponent(mc, i) > 0
        for i in range(len(sp))
    )


def gep3_witness(P: LaurentPoly, Q0: LaurentPoly, R: LaurentPoly, var: str):
    """Find ``(L, b)`` with ``L * Q0^b * P = R|_{var <- Q0/var}``.

    Returns None when the quotient is not a single term or its coefficient
    shares a factor with ``P``.
    """
    subst = lp_subst_inverse_ratio(R, var, Q0)
    # dividing by P first keeps b right even when P and Q0 share a factor
    try:
        quotient = lp_exact_div(subst, P)
    except NotDivisible:
        return None
    L, b = lp_divide_out_max_power(quotient, Q0)
    if not L.is_monomial() or not coefficient_coprime_with(L, P):
        return None
    return L, b


def check_caterpillar_conditions(pattern: ExchangePattern, spine: Sequence, seed: int = 0, trials: int = 8) -> CaterpillarReport:
    """Check the Laurentness hypotheses on a caterpillar with the given spine.

    ``spine`` lists the full-degree vertices in order away from the root.
    Coprimality is probabilistic, so passing pair checks are marked
    ``probable``.
    """
    spine = list(spine)
    n = pattern.n
    for t in spine:
        if t not in pattern.adjacency:
            raise MalformedPattern(f"spine vertex {t!r} not in the pattern")
        if len(pattern.adjacency[t]) != n:
            raise MalformedPattern(f"spine vertex {t!r} has degree {len(pattern.adjacency[t])}, expected {n}")
    arrows = [pattern.edge_between(a, b) for a, b in zip(spine, spine[1:])]
    results = [_check_gep1(pattern, e) for e in pattern.edges]
    for k, Q in enumerate(arrows):
        tail, head = spine[k], spine[k + 1]
        j = Q.label
        for P in pattern.adjacency[tail]:
            if P is Q:
                continue
            i = P.label
            xi = pattern.variables[i - 1]
            Q0 = lp_set_zero(Q.poly, xi)
            where = ((P.u, P.v, i), (tail, head, j))
            if Q0.is_zero():
                results.append(ConditionResult("GEP2", where, FAIL, f"exchange polynomial vanishes at {xi}=0"))
                continue
            verdict = lp_coprime_probable(P.poly, Q0, seed=seed, trials=trials)
            status = FAIL if verdict == COMMON_FACTOR else PROBABLE
            results.append(ConditionResult("GEP2", where, status, verdict))
            R = pattern.edge_at(head, i)
            if R is None:
                continue
            where3 = where + ((R.u, R.v, i),)
            xj = pattern.variables[j - 1]
            w = gep3_witness(P.poly, Q0, R.poly, xj)
            if w is None:
                results.append(ConditionResult("GEP3", where3, FAIL, "no monomial multiplier"))
            else:
                results.append(ConditionResult("GEP3", where3, PASS, "", w[0], w[1]))
    return CaterpillarReport(tuple(results), seed)


@dataclass(frozen=True)
class GcdProbe:
    path: tuple
    laurent: bool
    values: tuple[LaurentPoly, ...]
    pairs: tuple[str, str]
    verdict: str
    finding: NotLaurent | None = None


def gcd_probe(pattern: ExchangePattern, path: Sequence, seed: int = 0, trials: int = 8) -> GcdProbe:
    """Three-step check along ``path = (t0, t1, t2, t3)`` labeled i, j, i.

    The new values x_i(t1), x_j(t2), x_i(t3) must be Laurent, and the pairs
    (x_i(t3), x_i(t1)) and (x_j(t2), x_i(t1)) coprime.
    """
    path = tuple(path)
    if len(path) != 4:
        raise MalformedPattern("expected four vertices")
    edges = [pattern.edge_between(a, b) for a, b in zip(path, path[1:])]
    i, j, i2 = (e.label for e in edges)
    if i != i2 or i == j:
        raise MalformedPattern("path labels must read i, j, i")
    cluster = pattern.root_cluster() if path[0] == pattern.root else None
    if cluster is None:
        clusters = propagate(pattern)
        if isinstance(clusters, NotLaurent):
            return GcdProbe(path, False, (), ("", ""), FAIL, clusters)
        cluster = clusters[path[0]]
    values = []
    for (a, b), e in zip(zip(path, path[1:]), edges):
        try:
            new = pattern.exchange(cluster, e)
        except NotDivisible:
            numer = lp_compose(e.poly, dict(zip(pattern.variables, cluster.values)), pattern.space)
            finding = NotLaurent((a, b, e.label), str(numer), str(cluster[e.label]))
            return GcdProbe(path, False, tuple(values), ("", ""), FAIL, finding)
        vals = list(cluster.values)
        vals[e.label - 1] = new
        cluster = Cluster(tuple(vals))
        values.append(new)
    z, u, v = values
    first = lp_coprime_probable(v, z, seed=seed, trials=trials)
    second = lp_coprime_probable(u, z, seed=seed, trials=trials)
    ok = first != COMMON_FACTOR and second != COMMON_FACTOR
    return GcdProbe(path, True, tuple(values), (first, second), PROBABLE if ok else FAIL)
