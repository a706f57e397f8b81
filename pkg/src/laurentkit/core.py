"""Sparse multivariate Laurent polynomials over the integers.

Coefficients live in ``A = Z[parameters]``: parameters are ordinary variables
whose role is ``"parameter"``.  They never act as exchange variables and a
parameter monomial is *not* a unit, whereas a monomial in exchange variables
is invertible in the Laurent ring.

Monomials are packed into a single Python integer: one ``FIELD_BITS``-wide
biased field per variable and an unbounded total-degree field on top.  With
that layout monomial multiplication is integer addition and graded
lexicographic comparison is integer comparison.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

EXCHANGE = "exchange"
PARAMETER = "parameter"

FIELD_BITS = 32
_BIAS = 1 << (FIELD_BITS - 1)
_MASK = (1 << FIELD_BITS) - 1

# modulus for the univariate gcd images used by the coprimality probe
_PRIME = (1 << 61) - 1
COPRIME_RANGE = (2, 10**6)


class VarSpaceMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised when an exact division has no Laurent-polynomial quotient."""


class VarSpace:
    """An ordered set of variable names, each tagged with a role.

    The order fixes the graded lexicographic term order: earlier variables
    are more significant.
    """

    __slots__ = ("names", "roles", "_index", "_shift", "one", "_sign_mask", "_deg_shift", "_hash")

    def __init__(self, names: Iterable[str], roles: Mapping[str, str] | None = None):
        names = tuple(names)
        roles = dict(roles or {})
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        unknown = set(roles) - set(names)
        if unknown:
            raise ValueError(f"roles given for unknown variables: {sorted(unknown)}")
        for r in roles.values():
            if r not in (EXCHANGE, PARAMETER):
                raise ValueError(f"unknown role {r!r}")
        self.names = names
        self.roles = tuple(roles.get(v, EXCHANGE) for v in names)
        self._index = {v: i for i, v in enumerate(names)}
        n = len(names)
        self._shift = tuple(FIELD_BITS * (n - 1 - i) for i in range(n))
        self._deg_shift = FIELD_BITS * n
        self._sign_mask = sum(_BIAS << s for s in self._shift)
        self.one = self._sign_mask + (_BIAS << self._deg_shift)
        self._hash = hash((self.names, self.roles))

    @classmethod
    def of(cls, exchange: Iterable[str] = (), parameters: Iterable[str] = ()) -> "VarSpace":
        exchange, parameters = list(exchange), list(parameters)
        roles = {p: PARAMETER for p in parameters}
        return cls(exchange + parameters, roles)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, VarSpace) and self.names == other.names and self.roles == other.roles

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarSpace({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def role(self, name: str) -> str:
        return self.roles[self.index(name)]

    def is_parameter(self, i: int) -> bool:
        return self.roles[i] == PARAMETER

    @property
    def parameters(self) -> tuple[str, ...]:
        return tuple(v for v, r in zip(self.names, self.roles) if r == PARAMETER)

    @property
    def exchange_variables(self) -> tuple[str, ...]:
        return tuple(v for v, r in zip(self.names, self.roles) if r == EXCHANGE)

    def extend(self, names: Iterable[str], role: str = EXCHANGE) -> "VarSpace":
        new = [v for v in names if v not in self._index]
        roles = {v: r for v, r in zip(self.names, self.roles)}
        roles.update({v: role for v in new})
        return VarSpace(self.names + tuple(new), roles)

    # packed monomials

    def pack(self, exps: Iterable[int]) -> int:
        m = 0
        total = 0
        for e, s in zip(exps, self._shift):
            if not -_BIAS < e < _BIAS:
                raise OverflowError("exponent out of range")
            m += (e + _BIAS) << s
            total += e
        return m + ((total + _BIAS) << self._deg_shift)

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple(((m >> s) & _MASK) - _BIAS for s in self._shift)

    def exponent(self, m: int, i: int) -> int:
        return ((m >> self._shift[i]) & _MASK) - _BIAS

    def degree(self, m: int) -> int:
        return (m >> self._deg_shift) - _BIAS

    def var_monomial(self, i: int, e: int = 1) -> int:
        return self.one + (e << self._shift[i]) + (e << self._deg_shift)

    def is_nonneg(self, m: int) -> bool:
        return m & self._sign_mask == self._sign_mask


@dataclass(frozen=True)
class Monomial:
    """A Laurent monomial as an exponent map; zero exponents are not stored."""

    exponents: tuple[tuple[str, int], ...]

    @classmethod
    def from_dict(cls, exps: Mapping[str, int]) -> "Monomial":
        return cls(tuple(sorted((v, e) for v, e in exps.items() if e)))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def inverse(self) -> "Monomial":
        return Monomial(tuple((v, -e) for v, e in self.exponents))


@dataclass(frozen=True)
class MonomialUnit:
    """``sign * monomial`` with the monomial in exchange variables only."""

    sign: int
    monomial: Monomial

    def inverse(self) -> "MonomialUnit":
        return MonomialUnit(self.sign, self.monomial.inverse())

    def to_poly(self, space: VarSpace) -> "LaurentPoly":
        return LaurentPoly.monomial(space, self.monomial.as_dict(), self.sign)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    ``terms`` maps packed monomials to nonzero ints and must not be mutated.
    """

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: VarSpace, terms: Mapping[int, int] | None = None):
        self.space = space
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, space, terms):
        p = cls.__new__(cls)
        p.space = space
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, space):
        return cls._raw(space, {})

    @classmethod
    def const(cls, space, c: int):
        return cls._raw(space, {space.one: c} if c else {})

    @classmethod
    def var(cls, space, name: str, e: int = 1):
        return cls._raw(space, {space.var_monomial(space.index(name), e): 1})

    @classmethod
    def monomial(cls, space, exps: Mapping[str, int], coeff: int = 1):
        vec = [0] * len(space)
        for v, e in exps.items():
            vec[space.index(v)] += e
        return cls._raw(space, {space.pack(vec): coeff} if coeff else {})

    @classmethod
    def from_terms(cls, space, items: Iterable[tuple[Mapping[str, int], int]]):
        out: dict[int, int] = {}
        for exps, c in items:
            vec = [0] * len(space)
            for v, e in exps.items():
                vec[space.index(v)] += e
            m = space.pack(vec)
            out[m] = out.get(m, 0) + c
        return cls(space, out)

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield ``(exponent vector, coefficient)`` in decreasing term order."""
        for m in sorted(self.terms, reverse=True):
            yield self.space.unpack(m), self.terms[m]

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.space, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(self.space.is_nonneg(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """``±1`` times a monomial in exchange variables."""
        if len(self.terms) != 1:
            return False
        (m, c), = self.terms.items()
        if c not in (1, -1):
            return False
        sp = self.space
        return all(sp.exponent(m, i) == 0 for i in range(len(sp)) if sp.is_parameter(i))

    def leading_term(self) -> tuple[int, int]:
        m = max(self.terms)
        return m, self.terms[m]

    def leading_coefficient(self) -> int:
        return self.terms[max(self.terms)] if self.terms else 0

    def variables(self) -> set[str]:
        sp = self.space
        used = set()
        for m in self.terms:
            for i, e in enumerate(sp.unpack(m)):
                if e:
                    used.add(sp.names[i])
        return used

    def depends_on(self, name: str) -> bool:
        i = self.space.index(name)
        return any(self.space.exponent(m, i) for m in self.terms)

    def degree_in(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of ``name``; (0, 0) for the zero polynomial."""
        i = self.space.index(name)
        es = [self.space.exponent(m, i) for m in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    def coefficients(self) -> list[int]:
        return list(self.terms.values())

    def constant_value(self) -> int | None:
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.space.one in self.terms:
            return self.terms[self.space.one]
        return None

    # ring operations

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.space is not self.space and other.space != self.space:
                raise VarSpaceMismatch("polynomials live in different variable spaces")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.space, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return LaurentPoly._raw(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        one = self.space.one
        out: dict[int, int] = {}
        get = out.get
        for mb, cb in b.items():
            off = mb - one
            for ma, ca in a.items():
                k = ma + off
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly(self.space, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_unit():
                raise NotDivisible("negative power of a non-unit")
            (m, c), = self.terms.items()
            inv = LaurentPoly._raw(self.space, {2 * self.space.one - m: c})
            return inv ** (-e)
        result = LaurentPoly.const(self.space, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale_monomial(self, m: int, c: int = 1) -> "LaurentPoly":
        """Multiply by the single term ``c * m`` (packed)."""
        off = m - self.space.one
        return LaurentPoly._raw(self.space, {k + off: v * c for k, v in self.terms.items()})

    # conversions

    def to_space(self, space: VarSpace, rename: Mapping[str, str] | None = None) -> "LaurentPoly":
        """Re-express in ``space``, optionally renaming variables on the way."""
        if space is self.space and not rename:
            return self
        rename = rename or {}
        src = self.space
        targets = []
        for v in src.names:
            t = rename.get(v, v)
            targets.append(space.index(t) if t in space else None)
        out: dict[int, int] = {}
        n = len(space)
        for m, c in self.terms.items():
            vec = [0] * n
            for i, e in enumerate(src.unpack(m)):
                if e:
                    j = targets[i]
                    if j is None:
                        raise VarSpaceMismatch(f"variable {src.names[i]!r} missing from target space")
                    vec[j] += e
            k = space.pack(vec)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(space, out)

    def exponent_dicts(self) -> list[tuple[dict[str, int], int]]:
        names = self.space.names
        return [({names[i]: e for i, e in enumerate(vec) if e}, c) for vec, c in self]

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


def format_poly(p: LaurentPoly, names: Mapping[str, str] | None = None) -> str:
    """Render in the parser's grammar, terms in decreasing graded-lex order."""
    if not p.terms:
        return "0"
    labels = [names.get(v, v) if names else v for v in p.space.names]
    parts = []
    for vec, c in p:
        factors = []
        for i, e in enumerate(vec):
            if e == 1:
                factors.append(labels[i])
            elif e:
                factors.append(f"{labels[i]}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def _check_same(p: LaurentPoly, q: LaurentPoly):
    if p.space is not q.space and p.space != q.space:
        raise VarSpaceMismatch("polynomials live in different variable spaces")


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    _check_same(p, q)
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    _check_same(p, q)
    return p * q


def _min_monomial(p: LaurentPoly, include_parameters: bool = True) -> int:
    """Packed monomial holding the per-variable minimum exponent of ``p``."""
    sp = p.space
    terms = list(p.terms)
    lows = [min([(m >> s) & _MASK for m in terms]) - _BIAS for s in sp._shift]
    if not include_parameters:
        lows = [0 if sp.is_parameter(i) else e for i, e in enumerate(lows)]
    return sp.pack(lows)


def _shifted(p: LaurentPoly, m: int) -> dict[int, int]:
    """Terms of ``p`` divided by the packed monomial ``m``."""
    off = p.space.one - m
    return {k + off: c for k, c in p.terms.items()}


def _poly_exact_quotient(space: VarSpace, num: dict[int, int], den: dict[int, int]) -> dict[int, int] | None:
    """Exact division of polynomials (no negative exponents) under grlex.

    Returns None as soon as a leading term cannot be cancelled.
    """
    import heapq

    lm_d = max(den)
    lc_d = den[lm_d]
    one = space.one
    deg_d = space.degree(lm_d)
    rem = dict(num)
    heap = [-m for m in rem]
    heapq.heapify(heap)
    quot: dict[int, int] = {}
    rest = [(m, c) for m, c in den.items() if m != lm_d]
    while rem:
        m = -heapq.heappop(heap)
        c = rem.get(m)
        if c is None:
            continue
        if space.degree(m) < deg_d:
            return None
        diff = m - lm_d + one
        if not space.is_nonneg(diff):
            return None
        qc, r = divmod(c, lc_d)
        if r:
            return None
        quot[diff] = qc
        del rem[m]
        off = diff - one
        for md, cd in rest:
            k = md + off
            v = rem.get(k)
            if v is None:
                rem[k] = -qc * cd
                heapq.heappush(heap, -k)
            else:
                v -= qc * cd
                if v:
                    rem[k] = v
                else:
                    del rem[k]
    return quot


def lp_exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p`` in the Laurent ring, else raise NotDivisible.

    Exchange-variable monomials are units; parameter monomials are not, so a
    quotient with a negative parameter exponent is rejected.
    """
    _check_same(p, q)
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p
    sp = p.space
    if len(q.terms) == 1:
        (mq, cq), = q.terms.items()
        out = {}
        off = sp.one - mq
        for m, c in p.terms.items():
            qc, r = divmod(c, cq)
            if r:
                raise NotDivisible("coefficient not divisible")
            out[m + off] = qc
        res = LaurentPoly._raw(sp, out)
    else:
        mp = _min_monomial(p)
        mq = _min_monomial(q)
        quot = _poly_exact_quotient(sp, _shifted(p, mp), _shifted(q, mq))
        if quot is None:
            raise NotDivisible("polynomial division leaves a remainder")
        res = LaurentPoly._raw(sp, quot).scale_monomial(mp - mq + sp.one)
    params = [i for i in range(len(sp)) if sp.is_parameter(i)]
    if params:
        for m in res.terms:
            if any(sp.exponent(m, i) < 0 for i in params):
                raise NotDivisible("quotient needs a negative power of a parameter")
    return res


def divides(q: LaurentPoly, p: LaurentPoly) -> bool:
    try:
        lp_exact_div(p, q)
    except NotDivisible:
        return False
    return True


def lp_subst_inverse_ratio(p: LaurentPoly, var: str, Q: LaurentPoly) -> LaurentPoly:
    """Compute ``p`` with ``var`` replaced by ``Q / var``.

    A term ``var^d`` becomes ``Q^d var^-d``.  Negative ``d`` is accepted only
    when the overall result is still a Laurent polynomial (always true when
    ``Q`` is a unit), otherwise NotDivisible is raised.
    """
    _check_same(p, Q)
    if not Q.terms:
        raise ZeroDivisionError("substitution of a zero ratio")
    if Q.depends_on(var):
        raise ValueError(f"substitute depends on {var!r}")
    sp = p.space
    j = sp.index(var)
    groups: dict[int, dict[int, int]] = {}
    for m, c in p.terms.items():
        d = sp.exponent(m, j)
        flipped = m - (2 * d << sp._shift[j]) - (2 * d << sp._deg_shift)
        groups.setdefault(d, {})[flipped] = c
    if not groups:
        return p
    # Horner in Q: nonnegative powers by multiplication, negative ones by
    # exact division, which is exact at every step iff the result is Laurent
    lo, hi = min(groups), max(groups)
    part = lambda d: LaurentPoly._raw(sp, groups.get(d, {}))
    total = LaurentPoly.zero(sp)
    for d in range(hi, -1, -1):
        total = total * Q + part(d)
    if lo < 0:
        neg = LaurentPoly.zero(sp)
        for d in range(lo, 0):
            neg = lp_exact_div(neg + part(d), Q)
        total = total + neg
    return total


def lp_set_zero(p: LaurentPoly, var: str) -> LaurentPoly:
    """Specialize ``var`` to 0; terms containing it vanish."""
    sp = p.space
    j = sp.index(var)
    out = {}
    for m, c in p.terms.items():
        e = sp.exponent(m, j)
        if e < 0:
            raise ValueError(f"cannot set {var!r} to zero: negative exponent present")
        if e == 0:
            out[m] = c
    return LaurentPoly._raw(sp, out)


def lp_content_split(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``p = L * core`` with ``L`` a single term and ``core`` primitive.

    ``core`` is a polynomial, divisible by no variable (parameters included),
    has integer content 1 and a positive leading coefficient.
    """
    if not p.terms:
        raise ZeroDivisionError("content of the zero polynomial")
    sp = p.space
    m = _min_monomial(p)
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, c)
    lead = p.terms[max(p.terms)]
    if lead < 0:
        g = -g
    off = sp.one - m
    core = LaurentPoly._raw(sp, {k + off: c // g for k, c in p.terms.items()})
    return LaurentPoly._raw(sp, {m: g}), core


def lp_divide_out_max_power(p: LaurentPoly, q: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Divide ``p`` by the largest power of ``q`` that divides it.

    A unit ``q`` divides everything, so by convention b = 0 in that case.
    """
    _check_same(p, q)
    if not p.terms or not q.terms:
        raise ZeroDivisionError("zero operand")
    if q.is_unit():
        return p, 0
    b = 0
    while True:
        try:
            nxt = lp_exact_div(p, q)
        except NotDivisible:
            return p, b
        p, b = nxt, b + 1


def lp_specialize(p: LaurentPoly, assignment: Mapping[str, Fraction | int]) -> Fraction:
    """Exact value of ``p`` at a rational point."""
    sp = p.space
    vals = []
    for v in sp.names:
        vals.append(Fraction(assignment[v]) if v in assignment else None)
    total = Fraction(0)
    for m, c in p.terms.items():
        term = Fraction(c)
        for i, e in enumerate(sp.unpack(m)):
            if e:
                x = vals[i]
                if x is None:
                    raise KeyError(f"no value for {sp.names[i]!r}")
                if x == 0 and e < 0:
                    raise ZeroDivisionError(f"{sp.names[i]!r} = 0 with negative exponent")
                term *= x ** e
        total += term
    return total


def _eval_mod(p: LaurentPoly, point: list[int], main: int | None) -> list[int]:
    """Univariate image mod _PRIME in variable ``main``; others fixed to ``point``.

    Coefficients are returned low-to-high after shifting away the minimum
    exponent of ``main`` (a unit in the Laurent ring).
    """
    sp = p.space
    acc: dict[int, int] = {}
    for m, c in p.terms.items():
        vec = sp.unpack(m)
        t = c % _PRIME
        for i, e in enumerate(vec):
            if e and i != main:
                base = point[i] if e > 0 else pow(point[i], -1, _PRIME)
                t = t * pow(base, abs(e), _PRIME) % _PRIME
        d = vec[main] if main is not None else 0
        acc[d] = (acc.get(d, 0) + t) % _PRIME
    if not acc:
        return []
    lo, hi = min(acc), max(acc)
    coeffs = [acc.get(d, 0) for d in range(lo, hi + 1)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    return coeffs


def _rem_mod(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, _PRIME)
    while len(a) >= len(b):
        f = a[-1] * inv % _PRIME
        shift = len(a) - len(b)
        for k in range(len(b)):
            a[shift + k] = (a[shift + k] - f * b[k]) % _PRIME
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _gcd_degree_mod(a: list[int], b: list[int]) -> int:
    """Degree of gcd of two univariate polynomials over GF(_PRIME)."""
    while b:
        a, b = b, _rem_mod(a, b)
    return len(a) - 1


COPRIME = "coprime-probable"
COMMON_FACTOR = "common-factor-suspected"


def lp_coprime_probable(p: LaurentPoly, q: LaurentPoly, seed: int = 0, trials: int = 8) -> str:
    """Randomized coprimality test in ``A[x^±1]``.

    Exchange monomials are units and are ignored.  The integer and
    parameter-monomial contents are compared exactly.  For the primitive parts,
    every variable occurring in both is in turn kept free while the others are
    specialized to random integers drawn from ``COPRIME_RANGE``; a common factor
    involving that variable survives as a nontrivial univariate gcd (computed
    mod a 61-bit prime).  A shared factor can be missed only if every trial
    hits an unlucky specialization, so a "coprime" verdict is probabilistic.
    """
    _check_same(p, q)
    if not p.terms or not q.terms:
        raise ZeroDivisionError("coprimality with zero")
    sp = p.space
    lp_, cp = lp_content_split(p)
    lq_, cq = lp_content_split(q)
    (mp, kp), = lp_.terms.items()
    (mq, kq), = lq_.terms.items()
    if math.gcd(kp, kq) != 1:
        return COMMON_FACTOR
    for i in range(len(sp)):
        if sp.is_parameter(i) and sp.exponent(mp, i) > 0 and sp.exponent(mq, i) > 0:
            return COMMON_FACTOR
    # a parameter monomial in one content may still divide the other's core;
    # cores have no monomial content, so that cannot happen
    shared = sorted(
        sp.index(v) for v in cp.variables() & cq.variables()
    )
    if not shared:
        return COPRIME
    rng = random.Random(seed)
    lo, hi = COPRIME_RANGE
    for _ in range(trials):
        point = [rng.randint(lo, hi) for _ in range(len(sp))]
        found_coprime_image = True
        for main in shared:
            a = _eval_mod(cp, point, main)
            b = _eval_mod(cq, point, main)
            if len(a) > 1 and len(b) > 1 and _gcd_degree_mod(a, b) > 0:
                found_coprime_image = False
                break
        if found_coprime_image:
            return COPRIME
    return COMMON_FACTOR


def lp_compose(p: LaurentPoly, values: Mapping[str, LaurentPoly], target: VarSpace) -> LaurentPoly:
    """Substitute ``values[v]`` for each mapped variable of ``p``.

    Unmapped variables are carried over by name into ``target``.  A negative
    exponent is only allowed when the substituted value is a single term
    whose inverse stays in the ring.
    """
    sp = p.space
    cache: dict[tuple[int, int], LaurentPoly] = {}
    total = LaurentPoly.zero(target)
    for m, c in p.terms.items():
        term = LaurentPoly.const(target, c)
        for i, e in enumerate(sp.unpack(m)):
            if not e:
                continue
            f = cache.get((i, e))
            if f is None:
                v = sp.names[i]
                base = values[v] if v in values else LaurentPoly.var(target, v)
                f = cache[(i, e)] = base ** e
            term = term * f
        total = total + term
    return total


def equal_up_to_sign(p: LaurentPoly, q: LaurentPoly) -> bool:
    return p == q or p == -q


@dataclass(frozen=True)
class NotLaurent:
    """A division that left a remainder: evidence against Laurentness.

    Returned rather than raised, since it is the answer to the question
    being asked, not a malfunction.
    """

    location: object
    numerator: str
    denominator: str

    def __str__(self):
        return f"not Laurent at {self.location}: ({self.numerator}) / ({self.denominator})"
