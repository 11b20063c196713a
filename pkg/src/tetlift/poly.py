"""Sparse multivariate polynomials with coefficients in Q(sqrt 3).

A polynomial is a map from exponent tuples to nonzero :class:`Scalar`
coefficients.  Everything here is exact; nothing ever touches a float
except :meth:`Poly.to_float_function`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Poly",
    "NotDivisible",
    "NEG_INF",
    "poly_affine_compose",
    "poly_exact_divide",
    "poly_derive",
    "monomials",
    "weight_poly",
    "simplex_monomial_integral",
    "integrate_simplex",
]

NEG_INF = -math.inf  # degree of the zero polynomial


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, message: str, remainder: "Poly | None" = None) -> None:
        super().__init__(message)
        self.remainder = remainder


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree <= ``degree``, graded order."""
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exp = [0] * nvars
            for v in combo:
                exp[v] += 1
            out.append(tuple(exp))
    return out


def _add_into(acc: dict, exp: tuple, c: Scalar) -> None:
    prev = acc.get(exp)
    if prev is None:
        acc[exp] = c
    else:
        acc[exp] = prev + c


def _clean(terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c}


class Poly:
    """Polynomial in ``nvars`` variables over Q(sqrt 3)."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None) -> None:
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars or min(exp, default=0) < 0:
                    raise ValueError(f"bad exponent {exp} for {nvars} variables")
                c = as_scalar(c)
                if c:
                    _add_into(clean, exp, c)
            clean = _clean(clean)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Poly:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, value, nvars: int) -> Poly:
        value = as_scalar(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def var(cls, index: int, nvars: int) -> Poly:
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): ONE})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> Poly:
        """The affine form ``sum coeffs[j] * y_j + const``."""
        n = len(coeffs)
        terms = {}
        for j, a in enumerate(coeffs):
            a = as_scalar(a)
            if a:
                exp = [0] * n
                exp[j] = 1
                terms[tuple(exp)] = a
        const = as_scalar(const)
        if const:
            terms[(0,) * n] = const
        return cls._raw(n, terms)

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> float:
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> float:
        if not self.terms:
            return NEG_INF
        return max(e[var] for e in self.terms)

    def coeff(self, exp: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exp), ZERO)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, ZERO)

    def is_rational(self) -> bool:
        return all(not c.irr for c in self.terms.values())

    def __len__(self) -> int:
        return len(self.terms)

    def max_coeff_bits(self) -> int:
        """Largest numerator/denominator bit length among coefficients."""
        bits = 0
        for c in self.terms.values():
            for q in (c.rat, c.irr):
                bits = max(bits, q.numerator.bit_length(), q.denominator.bit_length())
        return bits

    # -- ring operations -----------------------------------------------
    def _check(self, other: Poly) -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        try:
            return Poly.const(other, self.nvars)
        except TypeError:
            return None

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        acc = dict(big)
        for e, c in small.items():
            _add_into(acc, e, c)
        return Poly._raw(self.nvars, _clean(acc))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(acc, e, -c)
        return Poly._raw(self.nvars, _clean(acc))

    def __rsub__(self, other) -> Poly:
        return (-self).__add__(other)

    def scale(self, s) -> Poly:
        s = as_scalar(s)
        if not s:
            return Poly.zero(self.nvars)
        if s == 1:
            return self
        return Poly._raw(self.nvars, {e: c * s for e, c in self.terms.items()})

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        acc: dict = {}
        get = acc.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = get(e)
                acc[e] = c1 * c2 if prev is None else prev + c1 * c2
        return Poly._raw(self.nvars, _clean(acc))

    def __rmul__(self, other) -> Poly:
        return self.__mul__(other)

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exp: Sequence[int]) -> Poly:
        """Multiply by the monomial ``x**exp``."""
        exp = tuple(exp)
        return Poly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Poly.const(other, self.nvars)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus ------------------------------------------------------
    def partial(self, var: int, times: int = 1) -> Poly:
        if times == 0:
            return self
        acc = {}
        for e, c in self.terms.items():
            k = e[var]
            if k < times:
                continue
            f = math.perm(k, times)
            ne = list(e)
            ne[var] = k - times
            acc[tuple(ne)] = c * f
        return Poly._raw(self.nvars, acc)

    def derive(self, direction: Sequence) -> Poly:
        return poly_derive(self, direction)

    # -- evaluation ----------------------------------------------------
    def __call__(self, *point) -> Scalar:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        pt = [as_scalar(x) for x in point]
        total = ZERO
        powers: dict = {}
        for e, c in self.terms.items():
            term = c
            for v, k in enumerate(e):
                if k:
                    key = (v, k)
                    pw = powers.get(key)
                    if pw is None:
                        pw = powers[key] = pt[v] ** k
                    term = term * pw
            total = total + term
        return total

    def to_float_function(self) -> Callable:
        """Vectorised float evaluator ``f(*coords)`` for numpy arrays."""
        exps = list(self.terms.keys())
        coeffs = [float(c) for c in self.terms.values()]

        def f(*coords):
            out = 0.0
            for e, c in zip(exps, coeffs):
                term = c
                for x, k in zip(coords, e):
                    if k:
                        term = term * x**k
                out = out + term
            return out

        return f

    # -- substitution --------------------------------------------------
    def compose(self, matrix: Sequence[Sequence], offset: Sequence | None = None) -> Poly:
        return poly_affine_compose(self, matrix, offset)

    def substitute(self, polys: Sequence[Poly]) -> Poly:
        """Replace variable ``i`` by ``polys[i]`` (all in the same ring)."""
        if len(polys) != self.nvars:
            raise ValueError("need one substitute per variable")
        if not polys:
            return self
        n_out = polys[0].nvars
        for q in polys:
            if q.nvars != n_out:
                raise ValueError("substitutes must share a variable count")
        return _substitute(self, list(polys), n_out)

    # -- display -------------------------------------------------------
    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ["x", "y", "z"] if self.nvars == 3 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(
                names[v] if k == 1 else f"{names[v]}^{k}" for v, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _substitute(p: Poly, subs: list[Poly], n_out: int) -> Poly:
    if not p.terms:
        return Poly.zero(n_out)

    # Fast path: every substitute is a constant or a scaled single variable,
    # so each monomial maps to a single monomial.
    simple = []
    for q in subs:
        if len(q.terms) == 0:
            simple.append((None, ZERO))
        elif len(q.terms) == 1:
            (e, c), = q.terms.items()
            if sum(e) == 0:
                simple.append((None, c))
            elif sum(e) == 1:
                simple.append((e.index(1), c))
            else:
                simple = None
                break
        else:
            simple = None
            break
    if simple is not None:
        acc: dict = {}
        for e, c in p.terms.items():
            ne = [0] * n_out
            coeff = c
            for (target, s), k in zip(simple, e):
                if not k:
                    continue
                if target is None:
                    coeff = coeff * (s ** k)
                    if not coeff:
                        break
                else:
                    ne[target] += k
                    if s != 1:
                        coeff = coeff * (s ** k)
            if coeff:
                _add_into(acc, tuple(ne), coeff)
        return Poly._raw(n_out, _clean(acc))

    # General path: Horner-style recursion over the first variable with
    # cached powers of each substitute.
    cache: list[dict] = [{0: Poly.const(1, n_out)} for _ in subs]

    def power(v: int, k: int) -> Poly:
        table = cache[v]
        if k not in table:
            table[k] = power(v, k - 1) * subs[v]
        return table[k]

    def rec(terms: dict, v: int) -> Poly:
        if v == len(subs):
            (c,) = terms.values() if terms else (ZERO,)
            return Poly.const(c, n_out)
        groups: dict = {}
        for e, c in terms.items():
            groups.setdefault(e[0], {})[e[1:]] = c
        total = Poly.zero(n_out)
        for k, sub in groups.items():
            inner = rec(sub, v + 1)
            if inner:
                total = total + (inner if k == 0 else inner * power(v, k))
        return total

    return rec(p.terms, 0)


def poly_affine_compose(p: Poly, matrix: Sequence[Sequence], offset: Sequence | None = None) -> Poly:
    """Return ``y -> p(A y + c)``.

    ``matrix`` is ``p.nvars`` rows by ``e`` columns; the result lives in
    ``e`` variables.
    """
    if len(matrix) != p.nvars:
        raise ValueError(f"matrix has {len(matrix)} rows, polynomial has {p.nvars} variables")
    widths = {len(row) for row in matrix}
    if len(widths) > 1:
        raise ValueError("ragged substitution matrix")
    n_out = widths.pop() if widths else 0
    if offset is None:
        offset = [0] * p.nvars
    if len(offset) != p.nvars:
        raise ValueError("offset length must equal the number of variables")
    subs = [Poly.linear(row, c) if n_out else Poly.const(c, 0) for row, c in zip(matrix, offset)]
    return _substitute(p, subs, n_out)


# Weights used by exact division: coordinate hyperplanes and the
# barycentric form 1 - sum(x).
_WEIGHT_ALIASES = {"x1": 0, "x2": 1, "x3": 2, "z": 2}
BARY = "bary"


def _weight_index(weight, nvars: int):
    if isinstance(weight, int):
        idx = weight
    elif weight in (BARY, "1-sum", "omega3"):
        return BARY
    elif weight in _WEIGHT_ALIASES:
        idx = _WEIGHT_ALIASES[weight]
    else:
        raise ValueError(f"unknown weight {weight!r}")
    if not 0 <= idx < nvars:
        raise ValueError(f"weight variable {weight!r} out of range for {nvars} variables")
    return idx


def weight_poly(weight, nvars: int) -> Poly:
    """The weight polynomial named by ``weight`` (a variable index, ``'x1'``..., or ``'bary'``)."""
    idx = _weight_index(weight, nvars)
    if idx == BARY:
        return Poly.linear([-1] * nvars, 1)
    return Poly.var(idx, nvars)


def poly_exact_divide(p: Poly, weight, r: int = 1) -> Poly:
    """Quotient ``q`` with ``q * weight**r == p``.

    Raises :class:`NotDivisible` carrying the remainder otherwise.
    """
    if r < 0:
        raise ValueError("power must be nonnegative")
    if r == 0 or not p.terms:
        return p
    n = p.nvars
    idx = _weight_index(weight, n)
    if idx != BARY:
        rem = {e: c for e, c in p.terms.items() if e[idx] < r}
        if rem:
            raise NotDivisible(
                f"polynomial not divisible by x{idx + 1}^{r}", Poly._raw(n, rem)
            )
        return Poly._raw(
            n,
            {e[:idx] + (e[idx] - r,) + e[idx + 1:]: c for e, c in p.terms.items()},
        )
    # Change variables so that the last coordinate becomes t = 1 - sum(x).
    to_t = [Poly.var(i, n) for i in range(n - 1)]
    to_t.append(Poly.linear([-1] * (n - 1) + [-1], 1))  # x_n = 1 - t - x_1 - ... - x_{n-1}
    q = p.substitute(to_t)
    rem = {e: c for e, c in q.terms.items() if e[-1] < r}
    if rem:
        back_rem = Poly._raw(n, rem).substitute(to_t)  # the map is an involution
        raise NotDivisible(f"polynomial not divisible by (1 - sum x)^{r}", back_rem)
    shifted = Poly._raw(n, {e[:-1] + (e[-1] - r,): c for e, c in q.terms.items()})
    return shifted.substitute(to_t)


def poly_derive(p: Poly, direction: Sequence) -> Poly:
    """Directional derivative ``direction . grad p``."""
    if len(direction) != p.nvars:
        raise ValueError("direction length must equal the number of variables")
    total = Poly.zero(p.nvars)
    for v, a in enumerate(direction):
        a = as_scalar(a)
        if a:
            total = total + p.partial(v).scale(a)
    return total


def simplex_monomial_integral(exp: Iterable[int]) -> Fraction:
    """Integral of ``x**exp`` over the unit simplex in ``len(exp)`` dimensions."""
    exp = list(exp)
    num = 1
    for k in exp:
        num *= math.factorial(k)
    return Fraction(num, math.factorial(sum(exp) + len(exp)))


def integrate_simplex(p: Poly) -> Scalar:
    """Exact integral of ``p`` over the reference simplex of its dimension."""
    total = ZERO
    for e, c in p.terms.items():
        total = total + c * simplex_monomial_integral(e)
    return total

