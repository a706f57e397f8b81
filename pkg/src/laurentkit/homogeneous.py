"""Patterns where the exchange polynomial depends only on the edge label.

Each label ``i`` comes with a polynomial ``P_i`` free of ``x_i`` and a map
``F_i`` replacing ``x_i`` by ``P_i / x_i``.  The checker tests the pairwise
conditions that make every composition of the ``F_i`` Laurent, and
:func:`apply_word` evaluates such compositions directly.

Invertible coefficients (``lambda``, ``mu`` in the palindromic family) are
exchange-role variables that never serve as labels.  They may carry negative
exponents, and a hom3 multiplier may contain them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (
    COMMON_FACTOR,
    LaurentPoly,
    NotDivisible,
    NotLaurent,
    VarSpace,
    lp_compose,
    lp_coprime_probable,
    lp_exact_div,
    lp_set_zero,
    lp_subst_inverse_ratio,
)
from .exchange import gep3_witness

PASS = "pass"
FAIL = "fail"
PROBABLE = "probable"
INCONCLUSIVE = "inconclusive"

DEFAULT_MAX_TERMS = 2_000_000


class MalformedPattern(ValueError):
    pass


class SizeLimitExceeded(ValueError):
    pass


class UnknownFamily(KeyError):
    pass


class HomogeneousPattern:
    """Polynomials ``P_1 .. P_n`` in the cluster variables ``variables``.

    ``space`` may hold further variables: parameters, and exchange-role
    invertible coefficients that are not cluster variables.
    """

    def __init__(self, polys: Sequence[LaurentPoly], variables: Sequence[str] | None = None, name: str = ""):
        self.P = tuple(polys)
        self.n = len(self.P)
        if self.n < 1:
            raise MalformedPattern("need at least one polynomial")
        self.space = self.P[0].space
        self.variables = tuple(variables) if variables else tuple(f"x{i}" for i in range(1, self.n + 1))
        self.name = name
        if len(self.variables) != self.n:
            raise MalformedPattern(f"expected {self.n} cluster variables")
        for v in self.variables:
            if v not in self.space or self.space.role(v) != "exchange":
                raise MalformedPattern(f"cluster variable {v!r} is not an exchange variable of the space")
        for k, p in enumerate(self.P, 1):
            if p.space != self.space:
                raise MalformedPattern(f"P_{k} lives in a different space")
            if p.is_zero():
                raise MalformedPattern(f"P_{k} is zero")
            if p.depends_on(self.variables[k - 1]):
                raise MalformedPattern(f"P_{k} depends on {self.variables[k - 1]}")

    @classmethod
    def from_text(
        cls,
        texts: Sequence[str],
        parameters: Sequence[str] = (),
        units: Sequence[str] = (),
        name: str = "",
        constants=None,
    ) -> "HomogeneousPattern":
        from .parsing import parse_poly

        xs = [f"x{i}" for i in range(1, len(texts) + 1)]
        space = VarSpace.of(xs + list(units), parameters)
        return cls([parse_poly(t, space, constants) for t in texts], xs, name)

    @property
    def units(self) -> tuple[str, ...]:
        """Invertible coefficients: exchange-role variables that are not labels."""
        return tuple(v for v in self.space.exchange_variables if v not in self.variables)

    def restricted(self, j: int, i: int) -> LaurentPoly:
        """``P_j`` with ``x_i = 0``."""
        return lp_set_zero(self.P[j - 1], self.variables[i - 1])

    def __repr__(self):
        body = ", ".join(str(p) for p in self.P)
        return f"HomogeneousPattern({self.name or 'custom'}: {body})"


@dataclass(frozen=True)
class HomResult:
    condition: str
    pair: tuple
    status: str
    detail: str = ""
    multiplier: LaurentPoly | None = None
    power: int | None = None


@dataclass(frozen=True)
class HomogeneousReport:
    pattern: str
    results: tuple[HomResult, ...]
    seed: int
    verdict: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    def failures(self):
        return [r for r in self.results if r.status == FAIL]

    def witnesses(self) -> dict[tuple[int, int], tuple[LaurentPoly, int]]:
        return {r.pair: (r.multiplier, r.power) for r in self.results if r.condition == "hom3" and r.status == PASS}


def _hom1(pattern: HomogeneousPattern, k: int) -> HomResult:
    p = pattern.P[k - 1]
    for v in pattern.variables:
        lo, _ = p.degree_in(v)
        if lo < 0:
            return HomResult("hom1", (k,), FAIL, f"negative power of {v}")
        if lo > 0:
            return HomResult("hom1", (k,), FAIL, f"divisible by {v}")
    sp = pattern.space
    for m in p.terms:
        if any(sp.is_parameter(i) and sp.exponent(m, i) < 0 for i in range(len(sp))):
            return HomResult("hom1", (k,), FAIL, "negative power of a parameter")
    return HomResult("hom1", (k,), PASS)


def check_homogeneous(pattern: HomogeneousPattern, seed: int = 0, trials: int = 8) -> HomogeneousReport:
    """Conditions hom1 (exact), hom2 (probabilistic coprimality), hom3 (exact, with witnesses).

    hom3 for the ordered pair ``(i, j)`` asks for a single term ``L`` and
    ``b >= 0`` with ``P_i|_{x_j <- P_ji / x_j} = L * P_ji^b * P_i``.
    """
    results = [_hom1(pattern, k) for k in range(1, pattern.n + 1)]
    notes = []
    for i in range(1, pattern.n + 1):
        for j in range(1, pattern.n + 1):
            if i == j:
                continue
            Pji = pattern.restricted(j, i)
            Pi = pattern.P[i - 1]
            if Pji.is_zero():
                results.append(HomResult("hom2", (j, i), FAIL, f"P_{j} vanishes at x{i} = 0"))
                continue
            verdict = lp_coprime_probable(Pji, Pi, seed=seed, trials=trials)
            results.append(HomResult("hom2", (j, i), FAIL if verdict == COMMON_FACTOR else PROBABLE, verdict))
            xj = pattern.variables[j - 1]
            w = gep3_witness(Pi, Pji, Pi, xj)
            if w is None:
                results.append(HomResult("hom3", (i, j), FAIL, "quotient is not a single term with a coefficient coprime to P_i"))
            else:
                results.append(HomResult("hom3", (i, j), PASS, "", w[0], w[1]))
    if pattern.units:
        notes.append(f"{', '.join(pattern.units)} treated as invertible coefficients")
    verdict = INCONCLUSIVE if any(r.status == FAIL for r in results) else PASS
    return HomogeneousReport(pattern.name, tuple(results), seed, verdict, tuple(notes))


def hom3_identity_holds(pattern: HomogeneousPattern, i: int, j: int, L: LaurentPoly, b: int) -> bool:
    """Recheck ``L * P_ji^b * P_i == P_i|_{x_j <- P_ji / x_j}`` by expansion."""
    Pji = pattern.restricted(j, i)
    Pi = pattern.P[i - 1]
    return L * Pji ** b * Pi == lp_subst_inverse_ratio(Pi, pattern.variables[j - 1], Pji)


@dataclass(frozen=True)
class SymbolicPoint:
    coords: tuple[LaurentPoly, ...]

    @classmethod
    def identity(cls, pattern: HomogeneousPattern) -> "SymbolicPoint":
        return cls(tuple(LaurentPoly.var(pattern.space, v) for v in pattern.variables))

    def __getitem__(self, k: int) -> LaurentPoly:
        """1-based, like the labels."""
        return self.coords[k - 1]

    def __len__(self):
        return len(self.coords)

    def size(self) -> int:
        return sum(len(c) for c in self.coords)


def parse_word(text: str) -> tuple[int, ...]:
    """``"1,2,1"`` -> ``(1, 2, 1)``."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def apply_word(
    pattern: HomogeneousPattern,
    word: Sequence[int],
    start: SymbolicPoint | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SymbolicPoint | NotLaurent:
    """Image of ``start`` under ``F_{w_1} o ... o F_{w_m}``; ``F_{w_m}`` acts first.

    The composite is built as a tuple of Laurent polynomials by extending it
    on the right one map at a time: appending ``F_i`` substitutes
    ``x_i <- P_i / x_i`` into every coordinate.  This only ever divides by
    the small ``P_i``, instead of by large intermediate coordinates.  A
    failed division is returned as NotLaurent located at the word position
    (0-based, as written) whose map broke Laurentness of the prefix.
    Exceeding ``max_terms`` raises SizeLimitExceeded.
    """
    word = tuple(word)
    for k in word:
        if not 1 <= k <= pattern.n:
            raise MalformedPattern(f"index {k} outside 1..{pattern.n}")
    if start is not None:
        return _apply_forward(pattern, word, start)
    point = SymbolicPoint.identity(pattern)
    for pos, i in enumerate(word):
        xi = pattern.variables[i - 1]
        Pi = pattern.P[i - 1]
        coords = []
        for c in point.coords:
            try:
                coords.append(lp_subst_inverse_ratio(c, xi, Pi) if c.depends_on(xi) else c)
            except NotDivisible:
                return NotLaurent(("word position", pos, "F", i), str(c), f"{xi} <- ({Pi}) / {xi}")
        point = SymbolicPoint(tuple(coords))
        if point.size() > max_terms:
            raise SizeLimitExceeded(
                f"composite has {point.size()} terms after position {pos}, limit {max_terms}"
            )
    return point


def _apply_forward(pattern: HomogeneousPattern, word, start: SymbolicPoint) -> SymbolicPoint | NotLaurent:
    """Move ``start`` through the maps one at a time, last letter first."""
    coords = list(start.coords)
    space = coords[0].space
    for pos in range(len(word) - 1, -1, -1):
        i = word[pos]
        numer = lp_compose(pattern.P[i - 1], dict(zip(pattern.variables, coords)), space)
        try:
            coords[i - 1] = lp_exact_div(numer, coords[i - 1])
        except NotDivisible:
            return NotLaurent(("word position", pos, "F", i), str(numer), str(coords[i - 1]))
    return SymbolicPoint(tuple(coords))


def laurent_in_cluster(pattern: HomogeneousPattern, point: SymbolicPoint) -> bool:
    """Whether only cluster and unit variables carry negative exponents."""
    sp = point.coords[0].space
    allowed = set(pattern.variables) | set(pattern.units)
    for c in point.coords:
        for m in c.terms:
            for idx, e in enumerate(sp.unpack(m)):
                if e < 0 and sp.names[idx] not in allowed:
                    return False
    return True


# built-in families


def quadratic(n: int = 3, coefficients: Mapping[tuple[int, int], int] | None = None) -> HomogeneousPattern:
    """``P_i = P|_{x_i = 0}`` for ``P = sum x_k^2 + sum_{k<l} alpha_k_l x_k x_l``.

    Cross coefficients stay formal unless fixed in ``coefficients``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    coefficients = dict(coefficients or {})
    xs = [f"x{i}" for i in range(1, n + 1)]
    params = [f"alpha_{k}_{l}" for k in range(1, n + 1) for l in range(k + 1, n + 1) if (k, l) not in coefficients]
    space = VarSpace.of(xs, params)
    from .parsing import parse_poly

    parts = [f"x{k}^2" for k in range(1, n + 1)]
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            c = coefficients.get((k, l), f"alpha_{k}_{l}")
            parts.append(f"({c})*x{k}*x{l}")
    P = parse_poly(" + ".join(parts), space)
    return HomogeneousPattern([lp_set_zero(P, x) for x in xs], xs, f"quadratic(n={n})")


def _palindromic_text(degree: int, coeff: str, var: str, scale: str) -> str:
    """``sum_k c_k (t^k + t^(degree-k))`` at ``t = var / scale``, with ``c_0 = 1``."""
    terms = []
    for k in range(degree + 1):
        j = min(k, degree - k)
        c = "1" if j == 0 else f"{coeff}_{j}"
        terms.append(f"{c}*{var}^{k}*{scale}^(-{k})")
    return " + ".join(terms)


def palindromic(d: int = 2, e: int = 2) -> HomogeneousPattern:
    """``P_1 = mu^2 P(x2 / lambda)``, ``P_2 = lambda^2 Q(x1 / mu)`` for monic palindromic P, Q.

    ``P`` has degree d and coefficients alpha_1, ...; ``Q`` has degree e and
    beta_1, ....  An even degree has one middle coefficient.
    """
    if d < 1 or e < 1:
        raise ValueError("degrees must be positive")
    from .parsing import parse_poly

    alphas = [f"alpha_{k}" for k in range(1, d // 2 + 1)]
    betas = [f"beta_{k}" for k in range(1, e // 2 + 1)]
    space = VarSpace.of(["x1", "x2", "lambda", "mu"], alphas + betas)
    P1 = parse_poly(f"mu^2*({_palindromic_text(d, 'alpha', 'x2', 'lambda')})", space)
    P2 = parse_poly(f"lambda^2*({_palindromic_text(e, 'beta', 'x1', 'mu')})", space)
    return HomogeneousPattern([P1, P2], ["x1", "x2"], f"palindromic(d={d}, e={e})")


def quadratic_pair() -> HomogeneousPattern:
    """The alternating word gives ``y_k = (y_{k-1}^2 + c y_{k-1} + d) / y_{k-2}``."""
    return HomogeneousPattern.from_text(["x2^2 + c*x2 + d", "x1^2 + c*x1 + d"], ["c", "d"], name="quadratic_pair")


def trinomial() -> HomogeneousPattern:
    return HomogeneousPattern.from_text(
        ["x2 + x3^2 + x2^2*x3", "x1 + x3", "x2 + x1^2 + x2^2*x1"], name="trinomial"
    )


FAMILIES = {
    "quadratic": quadratic,
    "palindromic": palindromic,
    "quadratic_pair": quadratic_pair,
    "trinomial": trinomial,
}


def builtin_family(name: str, **parameters) -> HomogeneousPattern:
    try:
        make = FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}") from None
    return make(**parameters)
