"""Laurentness test for translation-invariant lattice recurrences.

A stencil recurrence reads ``y[h] * y[h - s] = P(y[h + o] for o in offsets)``
with every ``h + o`` strictly between ``h - s`` and ``h`` in a partial order.
Points congruent modulo ``s`` form a class and share one cluster variable.

The test fixes the class ``a`` of the origin and walks every other class
``c`` in decreasing order of its unique representative between ``-s`` and
``0`` (for a total order given by lexicographic linear functionals).  At
each class the current G gets ``x_c <- Q_c / x_c`` with
``Q_c = P_c|_{x_a <- 0}``, then loses its content and its largest power of
``Q_c``.  The walk passes when it ends at ``P_a`` up to sign.

Only classes that can change G are visited: those whose variable occurs in
G, or whose ``Q_c`` uses only variables of G.  Every other class leaves G as
it is, so skipping it is exact rather than a shortcut.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    COMMON_FACTOR,
    LaurentPoly,
    VarSpace,
    equal_up_to_sign,
    lp_content_split,
    lp_coprime_probable,
    lp_divide_out_max_power,
    lp_set_zero,
    lp_subst_inverse_ratio,
)
from .cyclic import INCONCLUSIVE, PASS, REDUCIBLE, irreducibility_heuristic
from .parsing import parse_poly, scan_names

PRODUCT = "product"
CONE = "cone"

MAX_UNIVERSE = 400


class StencilError(ValueError):
    pass


class WindowEscape(StencilError):
    """A class needed by the walk lies outside the modeled window."""


class _Grow(Exception):
    def __init__(self, classes):
        self.classes = classes


def _offset_of(name: str) -> tuple[int, ...] | None:
    if "[" not in name:
        return None
    inner = name[name.index("[") + 1 : -1]
    return tuple(int(t) for t in inner.split(","))


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _scale(t, p):
    return tuple(t * a for a in p)


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


class StencilRecurrence:
    """Lattice recurrence ``y[h] * y[h - shift] = template``.

    ``template`` is a polynomial whose exchange variables are offset names
    such as ``y[-1,0]``; other variables are parameters.  ``key`` lists the
    linear functionals whose lexicographic order is the chosen total order.
    ``congruence = (coeffs, modulus)`` restricts the lattice to points with
    ``coeffs . h = 0 mod modulus``.  ``letters`` maps offsets to display
    names.
    """

    def __init__(
        self,
        shift: Sequence[int],
        template: LaurentPoly,
        order: str = PRODUCT,
        key: Sequence[Sequence[int]] | None = None,
        congruence: tuple[Sequence[int], int] | None = None,
        letters: Mapping[tuple, str] | None = None,
        name: str = "",
    ):
        self.shift = tuple(shift)
        self.dim = len(self.shift)
        self.template = template
        self.order = order
        self.name = name
        if order not in (PRODUCT, CONE):
            raise StencilError(f"unknown partial order {order!r}")
        if key is None:
            key = [[1] * self.dim] + [[1 if i == j else 0 for i in range(self.dim)] for j in range(self.dim - 1)]
        self.key_rows = tuple(tuple(r) for r in key)
        self.congruence = (tuple(congruence[0]), congruence[1]) if congruence else None
        self.offsets: dict[str, tuple[int, ...]] = {}
        for v in template.variables():
            o = _offset_of(v)
            if o is None:
                if template.space.role(v) != "parameter":
                    raise StencilError(f"template variable {v!r} is neither an offset nor a parameter")
                continue
            if len(o) != self.dim:
                raise StencilError(f"offset {v!r} has the wrong dimension")
            self.offsets[v] = o
        self.parameters = tuple(template.space.parameters)
        self.letters = {}
        for o, letter in (letters or {}).items():
            self.letters[self.canonical(tuple(o))] = letter
        self._validate()

    @classmethod
    def from_text(cls, text: str, shift, parameters: Sequence[str] = (), constants=None, **kw) -> "StencilRecurrence":
        names = [v for v in scan_names(text) if "[" in v]
        space = VarSpace.of(names, parameters)
        return cls(shift, parse_poly(text, space, constants), **kw)

    def __repr__(self):
        return f"StencilRecurrence({self.name or str(self.template)!r}, shift={self.shift})"

    # order structure

    def less_eq(self, p, q) -> bool:
        d = _sub(q, p)
        if self.order == PRODUCT:
            return all(x >= 0 for x in d)
        return sum(abs(x) for x in d[:-1]) <= d[-1]

    def less(self, p, q) -> bool:
        return p != q and self.less_eq(p, q)

    def key(self, p) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, p)) for r in self.key_rows)

    def in_lattice(self, p) -> bool:
        if self.congruence is None:
            return True
        coeffs, mod = self.congruence
        return sum(a * b for a, b in zip(coeffs, p)) % mod == 0

    def _cone_generators(self):
        d = self.dim
        unit = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
        if self.order == PRODUCT:
            return unit
        gens = []
        for j in range(d - 1):
            for sgn in (1, -1):
                g = [0] * d
                g[j] = sgn
                g[-1] = 1
                gens.append(tuple(g))
        return gens

    def _validate(self):
        zero = (0,) * self.dim
        minus = _scale(-1, self.shift)
        if not self.less(minus, zero):
            raise StencilError("shift must be strictly positive in the partial order")
        if not self.in_lattice(self.shift):
            raise StencilError("shift leaves the lattice")
        for v, o in self.offsets.items():
            if not (self.less(minus, o) and self.less(o, zero)):
                raise StencilError(f"offset {v} is not strictly between h - s and h")
            if not self.in_lattice(o):
                raise StencilError(f"offset {v} leaves the lattice")
        if len(self.key_rows) != self.dim or _rank(self.key_rows) != self.dim:
            raise StencilError("order key must consist of d independent functionals")
        for g in self._cone_generators():
            if self.key(g) <= (0,) * self.dim:
                raise StencilError(f"order key is not a linear extension: key{g} is not positive")
        if self.key(self.shift) <= (0,) * self.dim:
            raise StencilError("order key is not positive on the shift")

    # classes

    def _pivot(self) -> int:
        return max(i for i, x in enumerate(self.shift) if x)

    def canonical(self, p) -> tuple[int, ...]:
        k = self._pivot()
        t = p[k] // self.shift[k]
        return _sub(p, _scale(t, self.shift))

    def window_representative(self, c) -> tuple[int, ...] | None:
        """The point of class ``c`` strictly between ``-s`` and ``0``.

        None for the class of the origin, and for classes that never fall in
        the interval (possible only when leading functionals vanish on s).
        """
        S = self.key(self.shift)
        lead = next(i for i, x in enumerate(S) if x)
        K = self.key(c)
        t0 = -(K[lead] // S[lead])
        lo, hi = _scale(-1, S), (0,) * self.dim
        found = []
        for t in range(t0 - 2, t0 + 3):
            k = tuple(a + t * b for a, b in zip(K, S))
            if lo < k < hi:
                found.append(_add(c, _scale(t, self.shift)))
        if len(found) > 1:
            raise StencilError("order key does not separate a class")
        return found[0] if found else None

    def class_name(self, c) -> str:
        c = self.canonical(c)
        if c in self.letters:
            return f"x_{self.letters[c]}"
        return "x[" + ",".join(map(str, c)) + "]"


@dataclass(frozen=True)
class StencilStep:
    label: str
    point: tuple
    Q: LaurentPoly
    substituted: LaurentPoly | None
    content: LaurentPoly | None
    normalized: LaurentPoly | None
    power: int
    G: LaurentPoly
    essential: bool
    reason: str = ""
    irreducibility: str = ""
    coprime: str = ""


@dataclass(frozen=True)
class StencilCertificate:
    name: str
    P_a: LaurentPoly
    steps: tuple[StencilStep, ...]
    G0: LaurentPoly
    conditions: tuple[tuple[str, str], ...]
    verdict: str
    seed: int
    failure: str = ""
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def essential_steps(self) -> tuple[StencilStep, ...]:
        return tuple(s for s in self.steps if s.essential)

    @property
    def window(self) -> tuple[str, ...]:
        """Labels of the visited classes, in walk order."""
        return tuple(s.label for s in self.steps)


class _Walk:
    """One attempt of the walk over a fixed finite class universe."""

    def __init__(self, st: StencilRecurrence, universe: set):
        self.st = st
        zero = (0,) * st.dim
        self.a = st.canonical(zero)
        ordered = sorted(universe, key=lambda c: (c != self.a, st.key(c)))
        self.names = {c: st.class_name(c) for c in ordered}
        self.space = VarSpace.of([self.names[c] for c in ordered], st.parameters)
        self.by_name = {v: c for c, v in self.names.items()}
        self._P = {}

    def need(self, classes):
        missing = [c for c in classes if c not in self.names]
        if missing:
            raise _Grow(missing)

    def P_at(self, c) -> LaurentPoly:
        """The template placed with its head at class ``c``."""
        if c not in self._P:
            st = self.st
            rename = {}
            targets = []
            for v, o in st.offsets.items():
                cls = st.canonical(_add(c, o))
                targets.append(cls)
                rename[v] = self.names.get(cls, v)
            self.need(targets)
            self._P[c] = st.template.to_space(self.space, rename)
        return self._P[c]

    def var_classes(self, G: LaurentPoly):
        return {self.by_name[v] for v in G.variables() if v in self.by_name}

    def candidates(self, G: LaurentPoly):
        st = self.st
        present = self.var_classes(G)
        out = set(present)
        for v in present:
            for o in st.offsets.values():
                out.add(st.canonical(_sub(v, o)))
        out.discard(self.a)
        return out

    def run(self, seed: int, trials: int):
        st = self.st
        xa = self.names[self.a]
        P_a = self.P_at(self.a)
        _, G = lp_content_split(P_a)
        notes = []
        if not equal_up_to_sign(G, P_a):
            notes.append("P_a has nontrivial content; the walk starts from its primitive part")
        pos = st.key((0,) * st.dim)
        steps = []
        failure = ""
        while True:
            best = None
            for c in self.candidates(G):
                rep = st.window_representative(c)
                if rep is None:
                    continue
                k = st.key(rep)
                if k < pos and (best is None or k > best[0]):
                    best = (k, c, rep)
            if best is None:
                break
            k, c, rep = best
            pos = k
            self.need([c])
            label = self.names[c]
            Q = lp_set_zero(self.P_at(c), xa)
            if Q.is_zero():
                failure = f"Q vanishes at {label}"
                steps.append(StencilStep(label, rep, Q, None, None, None, 0, G, False, "Q is zero"))
                break
            present = G.depends_on(label)
            subst = lp_subst_inverse_ratio(G, label, Q) if present else G
            L, core = lp_content_split(subst)
            G_next, b = lp_divide_out_max_power(core, Q)
            essential = G_next != G
            if essential:
                irr, _ = irreducibility_heuristic(Q)
                cop = "unit" if Q.is_unit() else lp_coprime_probable(G_next, Q, seed=seed, trials=trials)
                steps.append(StencilStep(label, rep, Q, subst, L, core, b, G_next, True, "", irr, cop))
                if (irr == REDUCIBLE or cop == COMMON_FACTOR) and not failure:
                    failure = f"step {label}: Q={Q} G={G_next} ({irr}, {cop})"
            else:
                reason = "Q does not divide G" if not present else "G unchanged"
                if not present:
                    reason = "variable absent and Q does not divide G"
                steps.append(StencilStep(label, rep, Q, None, None, None, b, G, False, reason))
            G = G_next
        return P_a, G, steps, failure, notes


def _template_conditions(st: StencilRecurrence) -> tuple[str, str]:
    P = st.template
    if not P.is_polynomial():
        return "template-polynomial", "fail"
    for v in st.offsets:
        if P.degree_in(v)[0] > 0:
            return "not-divisible-by-variable", f"fail: divisible by {v}"
    return "not-divisible-by-variable", PASS


def _run(st: StencilRecurrence, seed: int, trials: int):
    zero = (0,) * st.dim
    universe = {st.canonical(zero)} | {st.canonical(o) for o in st.offsets.values()}
    while True:
        walk = _Walk(st, universe)
        try:
            return walk, walk.run(seed, trials)
        except _Grow as g:
            universe |= set(g.classes)
            if len(universe) > MAX_UNIVERSE:
                raise WindowEscape("template variable escapes modeled window") from None


def verify_stencil(st: StencilRecurrence, seed: int = 0, trials: int = 8) -> StencilCertificate:
    walk, (P_a, G0, steps, failure, notes) = _run(st, seed, trials)
    conditions = [_template_conditions(st)]
    ess = [s for s in steps if s.essential]
    irr = PASS
    for s in ess:
        if s.irreducibility == REDUCIBLE or s.coprime == COMMON_FACTOR:
            irr = f"fail at {s.label}"
            break
    conditions.append(("Q-irreducible-and-coprime", irr))
    if any(s.irreducibility == "assumed" for s in ess):
        notes.append("irreducibility of some Q is assumed, not proved")
    closes = equal_up_to_sign(G0, P_a)
    conditions.append(("returns-to-P_a", PASS if closes else "fail"))
    if not closes and not failure:
        failure = f"final G = {G0} differs from P_a = {P_a}"
    ok = all(v == PASS for _, v in conditions)
    return StencilCertificate(
        st.name, P_a, tuple(steps), G0, tuple(conditions),
        PASS if ok else INCONCLUSIVE, seed, failure, tuple(notes),
    )


def spine_window(st: StencilRecurrence, radius: int | None = None) -> list[tuple[tuple[int, ...], str]]:
    """Points strictly between ``-s`` and ``0`` for the classes near the origin.

    The full interval meets every class, so it is only finite once the
    classes are bounded; ``radius`` bounds the canonical representatives
    (default: twice the template reach).  Sorted by increasing order key.
    """
    if radius is None:
        reach = max([max(abs(x) for x in o) for o in st.offsets.values()] + [max(abs(x) for x in st.shift)])
        radius = 2 * reach
    zero = (0,) * st.dim
    k = st._pivot()
    import itertools

    ranges = []
    for i in range(st.dim):
        if i == k:
            ranges.append(range(0, abs(st.shift[k])))
        else:
            ranges.append(range(-radius, radius + 1))
    a = st.canonical(zero)
    out = []
    seen = set()
    for p in itertools.product(*ranges):
        if not st.in_lattice(p):
            continue
        c = st.canonical(p)
        if c == a or c in seen:
            continue
        seen.add(c)
        rep = st.window_representative(c)
        if rep is not None:
            out.append((rep, st.class_name(c)))
    out.sort(key=lambda t: st.key(t[0]))
    return out


# catalog stencils

KNIGHT_LETTERS = {
    (0, -1): "b", (-1, 0): "c", (-1, -1): "e", (-2, 0): "f", (1, -1): "g",
    (2, -1): "d", (-1, 1): "p", (-2, 1): "q",
}

CUBE_LETTERS = {
    (0, 0, -1): "b", (0, -1, 0): "c", (-1, 0, 0): "d",
    (0, -1, -1): "e", (-1, 0, -1): "f", (-1, -1, 0): "g",
    (0, -1, -2): "q", (-1, 0, -2): "p", (0, -2, -1): "r",
    (-1, -2, 0): "s", (-2, 0, -1): "v", (-2, -1, 0): "u",
}

OCTAHEDRON_LETTERS = {
    (1, 0, -1): "c", (-1, 0, -1): "d", (0, 1, -1): "b", (0, -1, -1): "e",
    (-1, 1, 0): "p", (1, 1, 0): "q", (1, -1, 0): "r", (-1, -1, 0): "s",
}

FRIEZE_LETTERS = {(-1, 0): "b", (0, -1): "c"}

NUMBER_WALL_LETTERS = {
    (-1, -1): "d", (0, -1): "c", (1, -1): "b", (-1, -2): "g", (1, -2): "f",
}


def knight() -> StencilRecurrence:
    return StencilRecurrence.from_text(
        "alpha*y[0,-1]*y[-2,0] + beta*y[-1,0]*y[-1,-1]", (2, 1), ("alpha", "beta"),
        key=((1, 1), (1, 0)), letters=KNIGHT_LETTERS, name="knight",
    )


def cube() -> StencilRecurrence:
    return StencilRecurrence.from_text(
        "alpha*y[-1,0,0]*y[0,-1,-1] + beta*y[0,-1,0]*y[-1,0,-1] + gamma*y[0,0,-1]*y[-1,-1,0]",
        (1, 1, 1), ("alpha", "beta", "gamma"),
        key=((1, 1, 1), (1, 1, 0), (1, 0, 0)), letters=CUBE_LETTERS, name="cube",
    )


def octahedron() -> StencilRecurrence:
    return StencilRecurrence.from_text(
        "alpha*y[1,0,-1]*y[-1,0,-1] + beta*y[0,1,-1]*y[0,-1,-1]", (0, 0, 2), ("alpha", "beta"),
        order=CONE, key=((0, 0, 1), (0, 1, 0), (1, 0, 0)), congruence=((1, 1, 1), 2),
        letters=OCTAHEDRON_LETTERS, name="octahedron",
    )


def frieze(epsilon: int = 1) -> StencilRecurrence:
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be 1 or -1")
    sign = "" if epsilon == 1 else "-"
    return StencilRecurrence.from_text(
        f"{sign}y[0,-1]*y[-1,0] + beta", (1, 1), ("beta",),
        key=((1, 1), (0, 1)), letters=FRIEZE_LETTERS,
        name="frieze_plus" if epsilon == 1 else "frieze_minus",
    )


def number_wall(p: int = 1, q: int = 1, r: int = 1) -> StencilRecurrence:
    if min(p, q, r) < 0:
        raise ValueError("exponents must be nonnegative")
    return StencilRecurrence.from_text(
        f"y[-1,-1]^{p}*y[1,-1]^{r} + y[0,-1]^{q}", (0, 2), order=CONE,
        key=((0, 1), (1, 0)), letters=NUMBER_WALL_LETTERS, name=f"number_wall({p},{q},{r})",
    )
