"""Exact sparse bivariate polynomial arithmetic over the rationals.

Every symbolic object in this package (trace polynomials, quaternion
components) is a :class:`RatPoly2`: a dict of ``(i, j) -> Fraction`` terms
together with a basis tag naming the variable pair, either ``"xz"`` or
``"uv"``.  Arithmetic between mismatched bases is refused, which catches a
whole class of unit errors (the two coordinate systems are related by a
non-trivial change of variables).

Values are immutable by convention: no method mutates ``terms`` after
construction, so instances can be shared freely across threads.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Mapping, Sequence, Union

import numpy as np

BASIS_XZ = "xz"
BASIS_UV = "uv"

_VAR_NAMES = {BASIS_XZ: ("x", "z"), BASIS_UV: ("u", "v")}

Coeff = Union[int, Fraction]

# Beyond this many coefficient pair-products, multiplication switches from
# the schoolbook dict loop to Kronecker-packed big-integer multiplication.
_KRONECKER_CUTOFF = 20_000


class BasisMismatchError(ValueError):
    """Operands live over different variable pairs."""


def _coeff(c: Coeff) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class RatPoly2:
    """Sparse bivariate polynomial with exact rational coefficients."""

    __slots__ = ("terms", "basis")

    def __init__(self, terms: Mapping[tuple[int, int], Coeff], basis: str, _clean: bool = False):
        if basis not in _VAR_NAMES:
            raise ValueError(f"unknown basis {basis!r}")
        if _clean:
            self.terms = dict(terms)
        else:
            clean: dict[tuple[int, int], Fraction] = {}
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term {(i, j)}")
                fc = _coeff(c)
                if fc:
                    clean[(i, j)] = fc
            self.terms = clean
        self.basis = basis

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, basis: str) -> "RatPoly2":
        return cls({}, basis, _clean=True)

    @classmethod
    def const(cls, c: Coeff, basis: str) -> "RatPoly2":
        fc = _coeff(c)
        return cls({(0, 0): fc} if fc else {}, basis, _clean=True)

    @classmethod
    def one(cls, basis: str) -> "RatPoly2":
        return cls.const(1, basis)

    @classmethod
    def var1(cls, basis: str) -> "RatPoly2":
        """The first variable (x or u)."""
        return cls({(1, 0): Fraction(1)}, basis, _clean=True)

    @classmethod
    def var2(cls, basis: str) -> "RatPoly2":
        """The second variable (z or v)."""
        return cls({(0, 1): Fraction(1)}, basis, _clean=True)

    # -- basic protocol ----------------------------------------------------

    def _check(self, other: "RatPoly2") -> None:
        if self.basis != other.basis:
            raise BasisMismatchError(f"cannot combine {self.basis} with {other.basis}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatPoly2):
            return self.basis == other.basis and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == RatPoly2.const(other, self.basis)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"RatPoly2({self!s})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Union["RatPoly2", Coeff]) -> "RatPoly2":
        if isinstance(other, (int, Fraction)):
            other = RatPoly2.const(other, self.basis)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RatPoly2(out, self.basis, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly2":
        return RatPoly2({k: -c for k, c in self.terms.items()}, self.basis, _clean=True)

    def __sub__(self, other: Union["RatPoly2", Coeff]) -> "RatPoly2":
        if isinstance(other, (int, Fraction)):
            other = RatPoly2.const(other, self.basis)
        return self + (-other)

    def __rsub__(self, other: Coeff) -> "RatPoly2":
        return (-self) + other

    def scale(self, c: Coeff) -> "RatPoly2":
        fc = _coeff(c)
        if not fc:
            return RatPoly2.zero(self.basis)
        return RatPoly2({k: v * fc for k, v in self.terms.items()}, self.basis, _clean=True)

    def __mul__(self, other: Union["RatPoly2", Coeff]) -> "RatPoly2":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return RatPoly2.zero(self.basis)
        if len(self.terms) * len(other.terms) <= _KRONECKER_CUTOFF:
            out: dict[tuple[int, int], Fraction] = {}
            for (i1, j1), c1 in self.terms.items():
                for (i2, j2), c2 in other.terms.items():
                    k = (i1 + i2, j1 + j2)
                    s = out.get(k, 0) + c1 * c2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            return RatPoly2(out, self.basis, _clean=True)
        return _mul_kronecker(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly2":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = RatPoly2.one(self.basis)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure queries --------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def degree1(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree2(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def constant(self) -> Fraction:
        return self.coeff(0, 0)

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def is_half_integer(self) -> bool:
        """True if every coefficient has denominator 1 or 2."""
        return all(c.denominator in (1, 2) for c in self.terms.values())

    def coeff_of_second_power(self, j: int) -> "RatPoly2":
        """The coefficient of (second variable)**j, as a polynomial in the first."""
        return RatPoly2(
            {(i, 0): c for (i, jj), c in self.terms.items() if jj == j},
            self.basis,
            _clean=True,
        )

    # -- calculus and evaluation --------------------------------------------

    def diff2(self) -> "RatPoly2":
        """Formal derivative with respect to the second variable."""
        out = {}
        for (i, j), c in self.terms.items():
            if j:
                out[(i, j - 1)] = c * j
        return RatPoly2(out, self.basis, _clean=True)

    def diff1(self) -> "RatPoly2":
        out = {}
        for (i, j), c in self.terms.items():
            if i:
                out[(i - 1, j)] = c * i
        return RatPoly2(out, self.basis, _clean=True)

    def eval(self, v1, v2):
        """Evaluate at a point.

        With Fraction (or int) arguments the result is an exact Fraction;
        with floats/complexes it is computed in that arithmetic.
        """
        exact = isinstance(v1, (int, Fraction)) and isinstance(v2, (int, Fraction))
        total = Fraction(0) if exact else 0j
        # group by power of the first variable, Horner in each variable
        by_i: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), c in self.terms.items():
            by_i.setdefault(i, []).append((j, c))
        for i in sorted(by_i):
            inner = Fraction(0) if exact else 0j
            for j, c in sorted(by_i[i], reverse=True):
                inner = inner + (c if exact else complex(c)) * v2 ** j
            total = total + inner * v1 ** i
        return total

    def substitute_first(self, value) -> list:
        """Coefficient list (ascending in the second variable) after fixing var1."""
        exact = isinstance(value, (int, Fraction))
        n = self.degree2() + 1
        if n == 0:
            return []
        coeffs = [Fraction(0) if exact else 0j] * n
        for (i, j), c in self.terms.items():
            coeffs[j] = coeffs[j] + (c if exact else complex(c)) * value ** i
        return coeffs

    def compose_second(self, q: "RatPoly2") -> "RatPoly2":
        """Substitute ``q`` for the second variable: p(x, q(x, z))."""
        self._check(q)
        qpows = [RatPoly2.one(self.basis)]
        d2 = self.degree2()
        for _ in range(d2):
            qpows.append(qpows[-1] * q)
        out = RatPoly2.zero(self.basis)
        by_j: dict[int, dict[tuple[int, int], Fraction]] = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, {})[(i, 0)] = c
        for j, terms in by_j.items():
            out = out + RatPoly2(terms, self.basis, _clean=True) * qpows[j]
        return out

    # -- division -----------------------------------------------------------

    def divides_exactly(self, d: "RatPoly2") -> Union["RatPoly2", None]:
        """Exact quotient self / d, or None if the division leaves a remainder."""
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return RatPoly2.zero(self.basis)
        lt_d = max(d.terms)  # lexicographic leading term
        cd = d.terms[lt_d]
        rem = dict(self.terms)
        quot: dict[tuple[int, int], Fraction] = {}
        while rem:
            lt_r = max(rem)
            i = lt_r[0] - lt_d[0]
            j = lt_r[1] - lt_d[1]
            if i < 0 or j < 0:
                return None
            c = rem[lt_r] / cd
            quot[(i, j)] = quot.get((i, j), Fraction(0)) + c
            for (di, dj), dc in d.terms.items():
                k = (di + i, dj + j)
                s = rem.get(k, Fraction(0)) - dc * c
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return RatPoly2(quot, self.basis, _clean=True)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        terms = [
            {"i": i, "j": j, "num": str(c.numerator), "den": str(c.denominator)}
            for (i, j), c in sorted(self.terms.items())
        ]
        return {"basis": self.basis, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "RatPoly2":
        terms = {
            (int(t["i"]), int(t["j"])): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return cls(terms, data["basis"])


# -- fast multiplication -----------------------------------------------------


def _split_int(p: RatPoly2) -> tuple[dict[tuple[int, int], int], int]:
    """Write p as (integer term dict) / denominator."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {k: int(c * den) for k, c in p.terms.items()}, den


def _mul_kronecker(p: RatPoly2, q: RatPoly2) -> RatPoly2:
    """Exact multiplication by packing each factor into one big integer.

    Exponent pairs are flattened row-major with a stride wide enough for the
    product; coefficients are placed in base 2**b digits with b large enough
    that no digit overflows.  Negative coefficients are handled by splitting
    each factor into positive and negative parts.
    """
    ap, da = _split_int(p)
    bp, db = _split_int(q)
    stride2 = p.degree2() + q.degree2() + 1
    maxa = max(abs(c) for c in ap.values())
    maxb = max(abs(c) for c in bp.values())
    bound = maxa * maxb * min(len(ap), len(bp))
    bits = bound.bit_length() + 1

    def pack(d: dict[tuple[int, int], int], positive: bool) -> int:
        n = 0
        for (i, j), c in d.items():
            if (c > 0) == positive:
                n |= abs(c) << ((i * stride2 + j) * bits)
        return n

    a_pos, a_neg = pack(ap, True), pack(ap, False)
    b_pos, b_neg = pack(bp, True), pack(bp, False)
    pos = a_pos * b_pos + a_neg * b_neg
    neg = a_pos * b_neg + a_neg * b_pos

    den = da * db
    mask = (1 << bits) - 1
    out: dict[tuple[int, int], Fraction] = {}
    idx = 0
    while pos or neg:
        c = (pos & mask) - (neg & mask)
        if c:
            i, j = divmod(idx, stride2)
            f = Fraction(c, den)
            if f:
                out[(i, j)] = f
        pos >>= bits
        neg >>= bits
        idx += 1
    return RatPoly2(out, p.basis, _clean=True)


# -- helpers outside the class ------------------------------------------------


def format_poly(p: RatPoly2, names: tuple[str, str] | None = None) -> str:
    """Human-readable rendering, graded-lex term order, caret powers."""
    if not p.terms:
        return "0"
    n1, n2 = names or _VAR_NAMES[p.basis]
    parts = []
    for (i, j) in sorted(p.terms, key=lambda k: (k[0] + k[1], k[0]), reverse=True):
        c = p.terms[(i, j)]
        mono = []
        if i:
            mono.append(n1 if i == 1 else f"{n1}^{i}")
        if j:
            mono.append(n2 if j == 1 else f"{n2}^{j}")
        mstr = "*".join(mono)
        if not mstr:
            cstr = str(c)
        elif c == 1:
            cstr = mstr
        elif c == -1:
            cstr = f"-{mstr}"
        else:
            cstr = f"{c}*{mstr}"
        if parts and not cstr.startswith("-"):
            parts.append("+ " + cstr)
        elif parts:
            parts.append("- " + cstr[1:])
        else:
            parts.append(cstr)
    return " ".join(parts)


def mod2_reduce(p: RatPoly2) -> frozenset:
    """Support of p over GF(2).  Requires integer coefficients."""
    if not p.is_integer():
        raise ValueError("mod-2 reduction needs integer coefficients")
    return frozenset(k for k, c in p.terms.items() if c.numerator % 2)


def _fraction_sqrt(c: Fraction) -> Union[Fraction, None]:
    if c < 0:
        return None
    rn, rd = isqrt(c.numerator), isqrt(c.denominator)
    if rn * rn != c.numerator or rd * rd != c.denominator:
        return None
    return Fraction(rn, rd)


def poly_sqrt(p: RatPoly2) -> Union[RatPoly2, None]:
    """Exact polynomial square root, or None if p is not a perfect square."""
    if p.is_zero():
        return p
    lt = max(p.terms)
    if lt[0] % 2 or lt[1] % 2:
        return None
    c0 = _fraction_sqrt(p.terms[lt])
    if c0 is None:
        return None
    root = RatPoly2({(lt[0] // 2, lt[1] // 2): c0}, p.basis, _clean=True)
    # Peel leading terms of the remainder; the leading monomial strictly
    # decreases in lex order, so this terminates.
    max_terms = (p.degree1() + 2) * (p.degree2() + 2)
    for _ in range(max_terms):
        rem = p - root * root
        if rem.is_zero():
            return root
        lt_r = max(rem.terms)
        i, j = lt_r[0] - lt[0] // 2, lt_r[1] - lt[1] // 2
        if i < 0 or j < 0 or (i, j) >= (lt[0] // 2, lt[1] // 2):
            return None
        c = rem.terms[lt_r] / (2 * c0)
        root = root + RatPoly2({(i, j): c}, p.basis, _clean=True)
    return None


def roots_univariate(
    coeffs: Sequence[complex], cluster_radius: float = 1e-6
) -> list[tuple[complex, int]]:
    """All complex roots of a univariate polynomial, grouped by multiplicity.

    ``coeffs`` is ascending (constant term first).  Roots are found from the
    companion matrix (numpy), polished by a Newton step where the derivative
    allows, then clustered within ``cluster_radius``.
    """
    cs = [complex(c) for c in coeffs]
    while cs and abs(cs[-1]) == 0.0:
        cs.pop()
    if len(cs) <= 1:
        raise ValueError("need degree >= 1 with a nonzero leading coefficient")
    arr = np.array(cs[::-1], dtype=complex)
    roots = np.roots(arr)
    der = np.polyder(arr)
    for _ in range(2):
        vals = np.polyval(arr, roots)
        dvals = np.polyval(der, roots)
        safe = np.abs(dvals) > 1e-8
        roots = np.where(safe, roots - vals / np.where(safe, dvals, 1), roots)
    used = [False] * len(roots)
    out: list[tuple[complex, int]] = []
    roots_sorted = sorted(roots, key=lambda r: (round(r.real, 8), round(r.imag, 8)))
    for i, r in enumerate(roots_sorted):
        if used[i]:
            continue
        cluster = [r]
        used[i] = True
        for k in range(i + 1, len(roots_sorted)):
            if not used[k] and abs(roots_sorted[k] - r) < cluster_radius:
                cluster.append(roots_sorted[k])
                used[k] = True
        center = sum(cluster) / len(cluster)
        out.append((complex(center), len(cluster)))
    return out
