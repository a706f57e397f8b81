"""Term engines for one-dimensional and lattice recurrences, plus a catalog.

Terms are computed either symbolically, as Laurent polynomials in the
initial values, or numerically over the rationals.  Each computation first
collects the finite set of points the targets depend on, creates one free
variable per initial point actually reached, then evaluates in increasing
order.  A division with remainder is recorded as a finding, not raised.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .core import (
    LaurentPoly,
    NotDivisible,
    NotLaurent,
    VarSpace,
    lp_compose,
    lp_exact_div,
    lp_specialize,
)
from .cyclic import CyclicSpec
from .stencil import StencilRecurrence, _add, _sub
from . import stencil as _st

CYCLIC = "cyclic"
STENCIL = "stencil"
SYMBOLIC = "symbolic"
NUMERIC = "numeric"

DEFAULT_BOUND = 200_000


class RegionError(ValueError):
    pass


class OutsideRegion(RegionError):
    pass


@dataclass(frozen=True)
class Region:
    """Points ``h`` of the lattice with ``coeffs . h + const >= 0`` for every row.

    ``bound`` caps the size of any downset the engine will collect; hitting
    it means the region does not have finite downsets (or is too large).
    """

    inequalities: tuple[tuple[tuple[int, ...], int], ...]
    bound: int = DEFAULT_BOUND

    @classmethod
    def orthant(cls, dim: int, axes: Iterable[int] | None = None, bound: int = DEFAULT_BOUND) -> "Region":
        axes = range(dim) if axes is None else axes
        rows = tuple((tuple(1 if i == a else 0 for i in range(dim)), 0) for a in axes)
        return cls(rows, bound)

    def __contains__(self, h) -> bool:
        return all(sum(a * b for a, b in zip(c, h)) + k >= 0 for c, k in self.inequalities)

    def describe(self) -> str:
        parts = []
        for c, k in self.inequalities:
            lhs = " + ".join(f"{a}*h{i}" for i, a in enumerate(c) if a) or "0"
            parts.append(f"{lhs} + {k} >= 0" if k else f"{lhs} >= 0")
        return " and ".join(parts) or "everything"


@dataclass(frozen=True)
class RecurrenceSpec:
    """A named recurrence ready for term computation.

    ``recurrence`` is a CyclicSpec (window length n, terms y0, y1, ...) or a
    StencilRecurrence with a ``region``.  ``bindings`` fixes some parameters
    to integers; the others stay formal.  ``embedding`` names the lattice
    construction that projects onto this sequence, when there is one.
    """

    name: str
    kind: str
    recurrence: object
    region: Region | None = None
    bindings: tuple[tuple[str, int], ...] = ()
    description: str = ""
    embedding: tuple | None = None

    def __post_init__(self):
        if self.kind == CYCLIC and not isinstance(self.recurrence, CyclicSpec):
            raise TypeError("cyclic kind needs a CyclicSpec")
        if self.kind == STENCIL:
            if not isinstance(self.recurrence, StencilRecurrence):
                raise TypeError("stencil kind needs a StencilRecurrence")
            if self.region is None:
                raise TypeError("stencil kind needs a region")
        if self.kind not in (CYCLIC, STENCIL):
            raise ValueError(f"unknown kind {self.kind!r}")
        known = set(self.parameters_all)
        for p, _ in self.bindings:
            if p not in known:
                raise ValueError(f"unknown parameter {p!r}")

    @property
    def parameters_all(self) -> tuple[str, ...]:
        return tuple(self.exchange_polynomial.space.parameters)

    @property
    def parameters(self) -> tuple[str, ...]:
        """Parameters still formal after the bindings."""
        bound = dict(self.bindings)
        return tuple(p for p in self.parameters_all if p not in bound)

    @property
    def exchange_polynomial(self) -> LaurentPoly:
        if self.kind == CYCLIC:
            return self.recurrence.F
        return self.recurrence.template

    def bind(self, **values: int) -> "RecurrenceSpec":
        merged = dict(self.bindings)
        merged.update({k: int(v) for k, v in values.items()})
        return replace(self, bindings=tuple(sorted(merged.items())))

    @property
    def order(self) -> int:
        """Window length for 1-D recurrences."""
        if self.kind != CYCLIC:
            raise TypeError("only one-dimensional recurrences have a window length")
        return self.recurrence.n


class _Scheme:
    """Uniform view of points, dependencies and naming for both kinds."""

    def __init__(self, spec: RecurrenceSpec):
        self.spec = spec
        poly = spec.exchange_polynomial
        bound = dict(spec.bindings)
        keep = [v for v in poly.space.names if v not in bound]
        roles = {v: poly.space.role(v) for v in keep}
        self.local_space = VarSpace(keep, roles)
        values = {p: LaurentPoly.const(self.local_space, c) for p, c in bound.items()}
        self.template = lp_compose(poly, values, self.local_space)
        self.parameters = tuple(v for v in keep if roles[v] == "parameter")
        if spec.kind == CYCLIC:
            cs = spec.recurrence
            self.n = cs.n
            self.deps = [(v, i + 1 - cs.n) for i, v in enumerate(cs.variables[:-1]) if self.template.depends_on(v)]
        else:
            st = spec.recurrence
            self.n = None
            self.deps = list(st.offsets.items())

    def check_target(self, h):
        spec = self.spec
        if spec.kind == CYCLIC:
            if not isinstance(h, int) or h < 0:
                raise OutsideRegion(f"index {h!r} must be a nonnegative integer")
            return h
        h = tuple(h)
        st = spec.recurrence
        if len(h) != st.dim:
            raise OutsideRegion(f"point {h} has the wrong dimension")
        if not st.in_lattice(h):
            raise OutsideRegion(f"point {h} is not on the lattice")
        if h not in spec.region:
            raise OutsideRegion(f"point {h} is outside the region")
        return h

    def opposite(self, h):
        if self.spec.kind == CYCLIC:
            return h - self.n
        return _sub(h, self.spec.recurrence.shift)

    def is_initial(self, h) -> bool:
        if self.spec.kind == CYCLIC:
            return h < self.n
        return self.opposite(h) not in self.spec.region

    def neighbours(self, h):
        if self.spec.kind == CYCLIC:
            return [(v, h + o) for v, o in self.deps]
        return [(v, _add(h, o)) for v, o in self.deps]

    def key(self, h):
        if self.spec.kind == CYCLIC:
            return (h,)
        return self.spec.recurrence.key(h)

    def name(self, h) -> str:
        if self.spec.kind == CYCLIC:
            return f"y{h}"
        return "y[" + ",".join(map(str, h)) + "]"

    def downset(self, targets):
        bound = self.spec.region.bound if self.spec.region else DEFAULT_BOUND
        seen = set()
        stack = list(targets)
        while stack:
            h = stack.pop()
            if h in seen:
                continue
            seen.add(h)
            if len(seen) > bound:
                raise RegionError(f"downset exceeds the witness bound {bound}")
            if self.is_initial(h):
                continue
            stack.append(self.opposite(h))
            stack.extend(p for _, p in self.neighbours(h))
        return sorted(seen, key=self.key)


@dataclass(frozen=True)
class IntegralityReport:
    integral: bool
    first_failure: object = None
    checked: int = 0


@dataclass(frozen=True)
class NonnegativityReport:
    """Outcome of the coefficient sign probe; ``violations`` is the notable finding."""

    nonnegative: bool
    violations: tuple[tuple[object, int], ...] = ()
    checked: int = 0


@dataclass
class TermTable:
    recurrence: str
    mode: str
    bindings: tuple
    terms: dict
    findings: dict = field(default_factory=dict)
    initial: dict = field(default_factory=dict)
    space: VarSpace | None = None
    notes: list = field(default_factory=list)

    def laurent(self) -> bool:
        return not self.findings

    def __getitem__(self, h):
        return self.terms[h]

    def ordered(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0] if isinstance(kv[0], int) else tuple(kv[0]))

    def integrality(self) -> IntegralityReport:
        """Whether every numeric term is an integer; the first offender otherwise."""
        checked = 0
        for h, v in self.ordered():
            checked += 1
            if isinstance(v, Fraction) and v.denominator != 1:
                return IntegralityReport(False, h, checked)
        if self.findings:
            return IntegralityReport(False, min(self.findings, key=str), checked)
        return IntegralityReport(True, None, checked)

    def nonnegativity(self) -> NonnegativityReport:
        """Signs of the coefficients of the symbolic terms."""
        bad = []
        checked = 0
        for h, v in self.ordered():
            if not isinstance(v, LaurentPoly):
                continue
            checked += 1
            worst = min(v.terms.values(), default=0)
            if worst < 0:
                bad.append((h, worst))
        return NonnegativityReport(not bad, tuple(bad), checked)

    def monomial_denominators(self) -> bool:
        return all(isinstance(v, LaurentPoly) for v in self.terms.values()) and self.laurent()


def _evaluate(spec: RecurrenceSpec, targets, initial_value, mode: str) -> TermTable:
    scheme = _Scheme(spec)
    targets = [scheme.check_target(h) for h in targets]
    order = scheme.downset(targets)
    initial_points = [h for h in order if scheme.is_initial(h)]
    table = TermTable(spec.name, mode, spec.bindings, {})
    if mode == SYMBOLIC:
        names = [scheme.name(h) for h in initial_points]
        space = VarSpace.of(names, scheme.parameters)
        table.space = space
    elif scheme.parameters:
        raise ValueError(f"numeric evaluation needs values for {', '.join(scheme.parameters)}")
    template = scheme.template
    values = {}
    for h in order:
        if scheme.is_initial(h):
            v = LaurentPoly.var(table.space, scheme.name(h)) if mode == SYMBOLIC else Fraction(initial_value(h))
            values[h] = v
            table.initial[h] = v
            continue
        nb = scheme.neighbours(h)
        opp = scheme.opposite(h)
        if opp not in values or any(p not in values for _, p in nb):
            table.findings.setdefault(h, "depends on an earlier finding")
            continue
        if mode == SYMBOLIC:
            numer = lp_compose(template, {v: values[p] for v, p in nb}, table.space)
            try:
                values[h] = lp_exact_div(numer, values[opp])
            except NotDivisible:
                table.findings[h] = NotLaurent(h, str(numer), str(values[opp]))
                continue
        else:
            numer = lp_specialize(template, {v: values[p] for v, p in nb})
            if values[opp] == 0:
                table.findings[h] = f"division by the zero term at {opp}"
                continue
            values[h] = numer / values[opp]
    for h in targets:
        if h in values:
            table.terms[h] = values[h]
    return table


def compute_terms_symbolic(spec: RecurrenceSpec, targets: Iterable) -> TermTable:
    """Symbolic terms at every target, sharing one memo table."""
    return _evaluate(spec, list(targets), None, SYMBOLIC)


def compute_term_symbolic(spec: RecurrenceSpec, target) -> LaurentPoly | NotLaurent:
    table = compute_terms_symbolic(spec, [target])
    h = _Scheme(spec).check_target(target)
    if h in table.terms:
        return table.terms[h]
    found = table.findings.get(h)
    if isinstance(found, NotLaurent):
        return found
    return next(f for f in table.findings.values() if isinstance(f, NotLaurent))


def _initial_function(spec: RecurrenceSpec, initial):
    if initial is None or initial == "ones":
        return lambda h: 1
    if callable(initial):
        return initial
    if isinstance(initial, Mapping):
        return lambda h: initial[h]
    seq = [Fraction(v) for v in initial]
    if spec.kind != CYCLIC:
        raise ValueError("a list of initial values only makes sense for 1-D recurrences")
    if len(seq) != spec.order:
        raise ValueError(f"expected {spec.order} initial values, got {len(seq)}")
    return lambda h: seq[h]


def compute_numeric(spec: RecurrenceSpec, targets: Iterable, initial=None) -> TermTable:
    """Exact rational terms; ``initial`` is a list (1-D), a mapping, a callable or None for all ones."""
    return _evaluate(spec, list(targets), _initial_function(spec, initial), NUMERIC)


def compute_sequence_numeric(spec: RecurrenceSpec, initial=None, count: int = 12) -> TermTable:
    """Terms y0 .. y_{count-1} of a 1-D recurrence over the rationals."""
    if spec.kind != CYCLIC:
        raise TypeError("compute_sequence_numeric needs a 1-D recurrence")
    return _evaluate(spec, list(range(count)), _initial_function(spec, initial), NUMERIC)


def compute_sequence_symbolic(spec: RecurrenceSpec, count: int) -> TermTable:
    if spec.kind != CYCLIC:
        raise TypeError("compute_sequence_symbolic needs a 1-D recurrence")
    return compute_terms_symbolic(spec, range(count))


def lattice_window(spec: RecurrenceSpec, radius: int = 4, norm: str = "l1") -> list[tuple[int, ...]]:
    """Region points within ``radius`` of the origin.

    ``norm`` is ``"l1"`` (sum of absolute coordinates) or ``"max"``.
    """
    import itertools

    if norm not in ("l1", "max"):
        raise ValueError(f"unknown norm {norm!r}")
    size = sum if norm == "l1" else max
    st = spec.recurrence
    box = itertools.product(range(-radius, radius + 1), repeat=st.dim)
    return [h for h in box if size(map(abs, h)) <= radius and st.in_lattice(h) and h in spec.region]


def bound_recurrence(spec: RecurrenceSpec):
    """The underlying CyclicSpec or StencilRecurrence with the integer bindings substituted."""
    if not spec.bindings:
        return spec.recurrence
    template = _Scheme(spec).template
    if spec.kind == CYCLIC:
        return CyclicSpec(spec.recurrence.n, template, spec.recurrence.variables)
    st = spec.recurrence
    return StencilRecurrence(
        st.shift, template, st.order, st.key_rows, st.congruence, st.letters, st.name,
    )


# cyclic and stencil constructors


def _cyclic(name, n, text, parameters=(), description="", **kw) -> RecurrenceSpec:
    return RecurrenceSpec(name, CYCLIC, CyclicSpec.from_text(text, n, parameters), description=description, **kw)


def gale_robinson(p: int, q: int, r: int, alpha="alpha", beta="beta", gamma="gamma", name: str = "") -> RecurrenceSpec:
    """y_{k+n} y_k = alpha y_{k+p} y_{k+n-p} + beta y_{k+q} y_{k+n-q} + gamma y_{k+r} y_{k+n-r}, n = p+q+r.

    Coefficients given as strings stay formal, integers are bound.
    """
    if len({p, q, r}) != 3 or min(p, q, r) < 1:
        raise ValueError("p, q, r must be distinct positive integers")
    n = p + q + r
    coeffs = [alpha, beta, gamma]
    params = [c for c in coeffs if isinstance(c, str)]
    parts = [f"{c}*x{a}*x{n - a}" for c, a in zip(coeffs, (p, q, r))]
    return _cyclic(
        name or f"gale_robinson({p},{q},{r})", n, " + ".join(parts), params,
        "three-term Gale-Robinson recurrence", embedding=("cube", (p, q, r)),
    )


def two_term_gale_robinson(p: int, q: int, n: int, alpha="alpha", beta="beta", name: str = "") -> RecurrenceSpec:
    """y_{k+n} y_k = alpha y_{k+p} y_{k+n-p} + beta y_{k+q} y_{k+n-q} with p < q <= n/2."""
    if not (0 < p < q and 2 * q <= n):
        raise ValueError("need 0 < p < q <= n/2")
    coeffs = [alpha, beta]
    params = [c for c in coeffs if isinstance(c, str)]
    text = " + ".join(f"{c}*x{a}*x{n - a}" for c, a in zip(coeffs, (p, q)))
    return _cyclic(
        name or f"two_term_gale_robinson({p},{q},{n})", n, text, params,
        "two-term Gale-Robinson recurrence", embedding=("octahedron", (p, q, n)),
    )


def monomial_plus_one(a: int = 1, b: int = 1) -> RecurrenceSpec:
    """y_k y_{k-3} = y_{k-2}^a y_{k-1}^b + 1."""
    if a < 1 or b < 1:
        raise ValueError("exponents must be positive")
    return _cyclic(f"monomial_plus_one({a},{b})", 3, f"x1^{a}*x2^{b} + 1", description="y_k y_(k-3) = y_(k-2)^a y_(k-1)^b + 1")


def somos4_generalized(a: int = 1, b: int = 2, c: int = 1) -> RecurrenceSpec:
    """y_k y_{k-4} = y_{k-3}^a y_{k-1}^c + y_{k-2}^b."""
    if min(a, b, c) < 1:
        raise ValueError("exponents must be positive")
    return _cyclic(f"somos4gen({a},{b},{c})", 4, f"x1^{a}*x3^{c} + x2^{b}", description="y_k y_(k-4) = y_(k-3)^a y_(k-1)^c + y_(k-2)^b")


def quadratic_two_step(c="c", d="d") -> RecurrenceSpec:
    """y_k y_{k-2} = y_{k-1}^2 + c y_{k-1} + d."""
    params = [v for v in (c, d) if isinstance(v, str)]
    return _cyclic("quadratic_two_step", 2, f"x1^2 + {c}*x1 + {d}", params, "y_k y_(k-2) = y_(k-1)^2 + c y_(k-1) + d")


def _stencil_spec(st: StencilRecurrence, region: Region, description: str, name: str | None = None, embedding=None):
    return RecurrenceSpec(name or st.name, STENCIL, st, region, description=description, embedding=embedding)


def cube_spec() -> RecurrenceSpec:
    return _stencil_spec(_st.cube(), Region.orthant(3), "cube recurrence on the nonnegative orthant")


def octahedron_spec() -> RecurrenceSpec:
    return _stencil_spec(_st.octahedron(), Region.orthant(3, axes=[2]), "octahedron recurrence on the upper half-lattice")


def knight_spec() -> RecurrenceSpec:
    return _stencil_spec(_st.knight(), Region.orthant(2), "knight recurrence on the nonnegative quadrant")


def frieze_spec(epsilon: int = 1) -> RecurrenceSpec:
    return _stencil_spec(_st.frieze(epsilon), Region.orthant(2), "generalized frieze recurrence on the quadrant")


def number_wall_spec(p: int = 1, q: int = 2, r: int = 1) -> RecurrenceSpec:
    return _stencil_spec(_st.number_wall(p, q, r), Region.orthant(2, axes=[1]), "number wall recurrence on the upper half-plane")


# embeddings of 1-D sequences into lattice recurrences


@dataclass(frozen=True)
class Embedding:
    """A lattice recurrence whose terms are terms of a 1-D sequence.

    The point ``h`` carries ``y_{N + (coeffs . h) / divisor}``; the origin
    carries ``y_N``.
    """

    spec: RecurrenceSpec
    N: int
    n: int
    coeffs: tuple[int, ...]
    divisor: int = 1

    def index_of(self, h) -> int:
        num = sum(a * b for a, b in zip(self.coeffs, h))
        if num % self.divisor:
            raise ValueError(f"point {h} has a fractional index")
        return self.N + num // self.divisor

    @property
    def origin(self):
        return (0,) * len(self.coeffs)

    def initial_indices(self, points) -> set[int]:
        return {self.index_of(h) for h in points}

    def to_sequence(self, term: LaurentPoly, space: VarSpace | None = None) -> LaurentPoly:
        """Rewrite a term in the lattice initial variables as one in y0 .. y_{n-1}."""
        names = [f"y{i}" for i in range(self.n)]
        if space is None:
            space = VarSpace.of(names, term.space.parameters)
        values = {}
        for v in term.space.exchange_variables:
            h = tuple(int(t) for t in v[2:-1].split(","))
            values[v] = LaurentPoly.var(space, f"y{self.index_of(h)}")
        return lp_compose(term, values, space)


def gale_robinson_embed(p: int, q: int, r: int, N: int) -> Embedding:
    """Cube recurrence on ``{N + p i + q j + r k >= 0}`` projecting to Gale-Robinson."""
    if len({p, q, r}) != 3 or min(p, q, r) < 1:
        raise ValueError("p, q, r must be distinct positive integers")
    n = p + q + r
    if N < 0:
        raise ValueError("N must be nonnegative")
    region = Region((((p, q, r), N),))
    spec = _stencil_spec(_st.cube(), region, f"cube recurrence over H({N}) for ({p},{q},{r})", name=f"cube_embed({p},{q},{r};{N})")
    return Embedding(spec, N, n, (p, q, r))


def two_term_embed(p: int, q: int, n: int, N: int) -> Embedding:
    """Octahedron recurrence on ``{N + n(i+j+k)/2 - p i - q j >= 0}`` (even sublattice)."""
    if not (0 < p < q and 2 * q <= n):
        raise ValueError("need 0 < p < q <= n/2")
    if N < 0:
        raise ValueError("N must be nonnegative")
    coeffs = (n - 2 * p, n - 2 * q, n)
    region = Region(((coeffs, 2 * N),))
    spec = _stencil_spec(_st.octahedron(), region, f"octahedron recurrence over H({N}) for ({p},{q},{n})", name=f"octahedron_embed({p},{q},{n};{N})")
    return Embedding(spec, N, n, coeffs, 2)


def embed(spec: RecurrenceSpec, N: int) -> Embedding:
    """The lattice construction behind a 1-D catalog entry."""
    if spec.embedding is None:
        raise ValueError(f"{spec.name} has no lattice embedding")
    kind, args = spec.embedding
    if kind == "cube":
        return gale_robinson_embed(*args, N)
    return two_term_embed(*args, N)


# catalog

_CATALOG: dict[str, Callable[[], RecurrenceSpec]] = {
    "somos4": lambda: two_term_gale_robinson(1, 2, 4, 1, 1, name="somos4"),
    "somos5": lambda: two_term_gale_robinson(1, 2, 5, 1, 1, name="somos5"),
    "somos6": lambda: gale_robinson(1, 2, 3, 1, 1, 1, name="somos6"),
    "somos7": lambda: gale_robinson(1, 2, 4, 1, 1, 1, name="somos7"),
    "gale_robinson": lambda: gale_robinson(1, 2, 3, name="gale_robinson"),
    "two_term_gale_robinson": lambda: two_term_gale_robinson(1, 2, 5, name="two_term_gale_robinson"),
    "monomial_plus_one": lambda: monomial_plus_one(),
    "somos4gen": lambda: somos4_generalized(),
    "quadratic_two_step": lambda: quadratic_two_step(),
    "cube": cube_spec,
    "octahedron": octahedron_spec,
    "knight": knight_spec,
    "frieze_plus": lambda: frieze_spec(1),
    "frieze_minus": lambda: frieze_spec(-1),
    "number_wall": number_wall_spec,
}


def catalog() -> dict[str, RecurrenceSpec]:
    """Fresh copy of every named recurrence."""
    return {name: make() for name, make in _CATALOG.items()}


def catalog_names() -> list[str]:
    return list(_CATALOG)


def lookup(name: str) -> RecurrenceSpec:
    try:
        make = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown recurrence {name!r}") from None
    return make()
