"""Good word -> quaternion -> polynomial pipeline.

The heart of the package: every good word gets an exact quadruple
(r, s, t, w) of half-integer polynomials, the congruence polynomial g, and
the trace polynomial p describing how the commutator parameter transforms
under the word.  Regular balanced even words are decomposed into the three
generators of the even subgroup and mapped to products of three explicit
norm-one quaternions; everything else reduces to that case by the
definitional chain

    irregular -> flip b-signs;  odd -> append a;  unbalanced -> strip a b.

A second, independent construction (`chebyshev_rstw`) computes the same
quadruples for five-block words f^n1 g f^n2 g^-1 f^n3 g f^n4 g^-1 f^n5 by
direct symbolic matrix multiplication over a Laurent ring in the half-trace
eigenvalue, reassembled through Chebyshev polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactpoly import BASIS_UV, BASIS_XZ, RatPoly2
from .quatalg import (
    ALG_Q0,
    ALG_QUV,
    Quat,
    congruence_g,
    qconj,
    qmul,
    qone,
    rho,
)
from .words import (
    GEN_A2,
    GEN_BA2B,
    GEN_COMM,
    Classification,
    GoodWord,
    append_a,
    classify,
    decompose_rbe,
    multiply,
    to_regular,
    word_from_letters,
)

__all__ = [
    "WordPolys",
    "generator_quats",
    "word_to_quat",
    "word_polys",
    "trace_poly",
    "rstw_uv",
    "chebyshev_rstw",
    "cheb_T",
    "cheb_U",
    "word_bundle",
]


def _half(a, b=0, c=0, d=0) -> tuple:
    return tuple(Fraction(v, 2) for v in (a, b, c, d))


@lru_cache(maxsize=1)
def generator_quats() -> dict[str, Quat]:
    """The norm-one quaternions of a^2, b a^2 b^-1 and [b, a]."""
    x = RatPoly2.var1(BASIS_XZ)
    z = RatPoly2.var2(BASIS_XZ)
    half = Fraction(1, 2)
    w1 = Quat((x + 2).scale(half), x.scale(half), RatPoly2.zero(BASIS_XZ), RatPoly2.zero(BASIS_XZ), ALG_Q0)
    w2 = Quat(
        (x + 2).scale(half),
        (x - z.scale(2)).scale(half),
        RatPoly2.zero(BASIS_XZ),
        RatPoly2.const(-1, BASIS_XZ),
        ALG_Q0,
    )
    w3 = Quat(
        (z + 2).scale(half),
        z.scale(-half),
        RatPoly2.const(Fraction(-1, 2), BASIS_XZ),
        RatPoly2.const(Fraction(-1, 2), BASIS_XZ),
        ALG_Q0,
    )
    return {GEN_A2: w1, GEN_BA2B: w2, GEN_COMM: w3}


@lru_cache(maxsize=4096)
def word_to_quat(w: GoodWord) -> Quat:
    """Quaternion of a regular balanced even word.

    The generator tokens from the subgroup decomposition are multiplied out
    left to right; inverse tokens use the conjugate (the generators have
    norm one).
    """
    gens = generator_quats()
    q = qone(ALG_Q0)
    for name, e in decompose_rbe(w):
        g = gens[name]
        q = qmul(q, g if e == 1 else qconj(g))
    return q


@dataclass(frozen=True)
class WordPolys:
    """Exact polynomial data attached to a good word (xz basis)."""

    source: GoodWord
    r: RatPoly2
    s: RatPoly2
    t: RatPoly2
    w: RatPoly2
    g: RatPoly2  # congruence polynomial of the balanced even regular core
    p: RatPoly2  # trace polynomial
    balanced: bool
    core: GoodWord  # the regular balanced even word the quadruple reduces to
    core_quat: Quat


def _core_reduce(w: GoodWord) -> GoodWord:
    """Reduce to the regular balanced even core used for the quaternion."""
    cls = classify(w)
    if cls.regularity == "irregular":
        return _core_reduce(to_regular(w))
    if cls.parity == "odd":
        return _core_reduce(append_a(w))
    if cls.balance == "unbalanced":
        b_inv = word_from_letters([("b", -1)], w.order2)
        return _core_reduce(multiply(w, b_inv))
    return w


@lru_cache(maxsize=4096)
def word_polys(w: GoodWord) -> WordPolys:
    """The full (r, s, t, w, g, p) bundle for an arbitrary good word."""
    if w.is_identity:
        raise ValueError("the empty word has no polynomial data")
    cls = classify(w)
    if cls.regularity == "irregular":
        inner = word_polys(to_regular(w))
        return WordPolys(w, inner.r, inner.s, inner.t, inner.w, inner.g, inner.p,
                         inner.balanced, inner.core, inner.core_quat)
    if cls.parity == "odd":
        inner = word_polys(append_a(w))
        return WordPolys(w, inner.r, inner.s, inner.t, inner.w, inner.g, inner.p,
                         inner.balanced, inner.core, inner.core_quat)

    x = RatPoly2.var1(BASIS_XZ)
    z = RatPoly2.var2(BASIS_XZ)
    if cls.balance == "balanced":
        q = word_to_quat(w)
        g = congruence_g(q)
        r, s, t, ww = q.components()
        p = _trace_formula(t, ww, balanced=True)
        return WordPolys(w, r, s, t, ww, g, p, True, w, q)

    # unbalanced: strip the final b and transport the balanced data across it
    b_inv = word_from_letters([("b", -1)], w.order2)
    core = multiply(w, b_inv)
    # stripping one b from a regular even unbalanced word always lands on the
    # regular balanced even class (possibly the identity)
    assert core.is_identity or classify(core) == Classification("even", "balanced", "regular")
    q = word_to_quat(core)
    rt, st, tt, wt = q.components()
    gt = congruence_g(q)
    r = rt - z * tt
    s = gt
    t = rt + (x - z) * tt
    ww = gt + wt
    p = _trace_formula(t, ww, balanced=False)
    return WordPolys(w, r, s, t, ww, gt, p, False, core, q)


def _trace_formula(t: RatPoly2, w: RatPoly2, balanced: bool) -> RatPoly2:
    x = RatPoly2.var1(BASIS_XZ)
    z = RatPoly2.var2(BASIS_XZ)
    if balanced:
        p = z * (x - z) * (x * (t * t) - (x + 4) * (w * w))
    else:
        p = z * (t * t - x * (x + 4) * (w * w))
    assert p.is_integer(), "trace polynomial must have integer coefficients"
    assert all(j >= 1 for _, j in p.terms), "trace polynomial must vanish at z = 0"
    return p


def trace_poly(w: GoodWord) -> RatPoly2:
    """The integer polynomial p with gamma(f, w(f,g)) = p(beta, gamma)."""
    return word_polys(w).p


def rstw_uv(w: GoodWord) -> Quat:
    """The norm-one (R, S, T, W) quadruple on the uv side.

    This is the rho-image of the quaternion of the word's regular balanced
    even core, so it satisfies the symmetric norm identity exactly for every
    good word.
    """
    wp = word_polys(w)
    return rho(wp.core_quat)


# -- symbolic Chebyshev construction for five-block words -----------------------


@lru_cache(maxsize=256)
def cheb_T(n: int) -> RatPoly2:
    """Chebyshev T_|n| in the first uv variable."""
    n = abs(n)
    if n == 0:
        return RatPoly2.one(BASIS_UV)
    if n == 1:
        return RatPoly2.var1(BASIS_UV)
    return RatPoly2.var1(BASIS_UV).scale(2) * cheb_T(n - 1) - cheb_T(n - 2)


@lru_cache(maxsize=256)
def cheb_U(n: int) -> RatPoly2:
    """Chebyshev U_{n-1} in the first uv variable, with U_{-1} = 0 and
    U_{n-1} = -U_{|n|-1} for n < 0."""
    if n == 0:
        return RatPoly2.zero(BASIS_UV)
    if n < 0:
        return -cheb_U(-n)
    if n == 1:
        return RatPoly2.one(BASIS_UV)
    return RatPoly2.var1(BASIS_UV).scale(2) * cheb_U(n - 1) - cheb_U(n - 2)


class _Laurent:
    """Element of Q[v, g][alpha, alpha^-1] with g^2 = v^2 - 1.

    alpha is the eigenvalue of the diagonal generator (alpha^2 has
    half-trace u) and g is the normalized off-diagonal factor.  Terms are
    keyed by (alpha exponent, g parity) with v-polynomial coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], RatPoly2] | None = None):
        self.terms = {k: p for k, p in (terms or {}).items() if not p.is_zero()}

    @classmethod
    def mono(cls, k: int, gpow: int, coeff: RatPoly2) -> "_Laurent":
        return cls({(k, gpow): coeff})

    def __add__(self, other: "_Laurent") -> "_Laurent":
        out = dict(self.terms)
        for k, p in other.terms.items():
            cur = out.get(k)
            s = p if cur is None else cur + p
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return _Laurent(out)

    def __neg__(self) -> "_Laurent":
        return _Laurent({k: -p for k, p in self.terms.items()})

    def __mul__(self, other: "_Laurent") -> "_Laurent":
        gsq = _vsq_minus_1()
        out: dict[tuple[int, int], RatPoly2] = {}
        for (k1, g1), p1 in self.terms.items():
            for (k2, g2), p2 in other.terms.items():
                k = k1 + k2
                g = g1 + g2
                prod = p1 * p2
                if g == 2:
                    g = 0
                    prod = prod * gsq
                key = (k, g)
                cur = out.get(key)
                s = prod if cur is None else cur + prod
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return _Laurent(out)


@lru_cache(maxsize=1)
def _vsq_minus_1() -> RatPoly2:
    v = RatPoly2.var2(BASIS_UV)
    return v * v - 1


def _lc(fr) -> RatPoly2:
    return RatPoly2.const(fr, BASIS_UV)


def _cosh_like(n: int) -> _Laurent:
    h = Fraction(1, 2)
    return _Laurent({(n, 0): _lc(h), (-n, 0): _lc(h)}) if n else _Laurent({(0, 0): _lc(1)})


def _sinh_like(n: int, gpow: int = 0) -> _Laurent:
    if n == 0:
        return _Laurent()
    h = Fraction(1, 2)
    return _Laurent({(n, gpow): _lc(h), (-n, gpow): _lc(-h)})


def _mat_mul(m1, m2):
    return [
        [m1[0][0] * m2[0][0] + m1[0][1] * m2[1][0], m1[0][0] * m2[0][1] + m1[0][1] * m2[1][1]],
        [m1[1][0] * m2[0][0] + m1[1][1] * m2[1][0], m1[1][0] * m2[0][1] + m1[1][1] * m2[1][1]],
    ]


def _diag_block(n: int):
    one = _lc(1)
    return [
        [_Laurent.mono(n, 0, one), _Laurent()],
        [_Laurent(), _Laurent.mono(-n, 0, one)],
    ]


def _bb_block(n: int):
    """The middle factor (order-two letter) sandwich around n diagonal steps."""
    v = RatPoly2.var2(BASIS_UV)
    c = _cosh_like(n)
    s = _sinh_like(n)
    vs = _Laurent({k: p * v for k, p in s.terms.items()})
    p_n = -(c + vs)
    pbar_n = -(c + (-vs))
    q_n = _sinh_like(n, gpow=1)
    return [[p_n, q_n], [-q_n, pbar_n]]


def _reassemble_even(coeffs: dict[int, RatPoly2], kind: str) -> RatPoly2:
    """Collapse a symmetric / antisymmetric Laurent profile through Chebyshev."""
    out = RatPoly2.zero(BASIS_UV)
    ks = sorted(k for k in coeffs if k > 0)
    if kind == "sym":
        c0 = coeffs.get(0)
        if c0 is not None:
            out = out + c0
        for k in ks:
            assert coeffs[k] == coeffs.get(-k), "expected a symmetric profile"
            out = out + coeffs[k].scale(2) * cheb_T(k // 2)
    else:
        assert 0 not in coeffs, "antisymmetric profile cannot have a constant term"
        for k in ks:
            assert coeffs[k] == -coeffs.get(-k, RatPoly2.zero(BASIS_UV))
            out = out + coeffs[k].scale(2) * cheb_U(k // 2)
    return out


def _split_profiles(entry: _Laurent, gpow: int) -> dict[int, RatPoly2]:
    prof: dict[int, RatPoly2] = {}
    for (k, g), p in entry.terms.items():
        assert g == gpow, "unexpected off-diagonal parity"
        assert k % 2 == 0, "odd eigenvalue exponent: word is not even"
        prof[k] = p
    return prof


def chebyshev_rstw(n1: int, n2: int, n3: int, n4: int, n5: int) -> Quat:
    """(R, S, T, W) of f^n1 g f^n2 g^-1 f^n3 g f^n4 g^-1 f^n5, g of order two.

    Independent of the quaternion pipeline: the word is multiplied out as a
    2x2 matrix whose entries are Laurent polynomials in the eigenvalue of
    the diagonal letter, then the exponent profiles are folded into
    Chebyshev polynomials of the first and second kind.  Requires an even
    exponent sum.
    """
    if (n1 + n2 + n3 + n4 + n5) % 2:
        raise ValueError("exponent sum must be even")
    m = _diag_block(n1)
    m = _mat_mul(m, _bb_block(n2))
    m = _mat_mul(m, _diag_block(n3))
    m = _mat_mul(m, _bb_block(n4))
    m = _mat_mul(m, _diag_block(n5))

    half = Fraction(1, 2)
    sum_diag = _split_profiles(m[0][0] + m[1][1], 0)
    dif_diag = _split_profiles(m[0][0] + (-m[1][1]), 0)
    off = _split_profiles(m[0][1], 1)

    r = _reassemble_even(sum_diag, "sym").scale(half)
    s = _reassemble_even(dif_diag, "anti").scale(half)
    t_sym = {}
    w_anti = {}
    for k, p in off.items():
        t_sym[k] = t_sym.get(k, RatPoly2.zero(BASIS_UV)) + p.scale(half)
        t_sym[-k] = t_sym.get(-k, RatPoly2.zero(BASIS_UV)) + p.scale(half)
        w_anti[k] = w_anti.get(k, RatPoly2.zero(BASIS_UV)) + p.scale(half)
        w_anti[-k] = w_anti.get(-k, RatPoly2.zero(BASIS_UV)) + p.scale(-half)
    t = _reassemble_even({k: p for k, p in t_sym.items() if not p.is_zero()}, "sym")
    w = _reassemble_even({k: p for k, p in w_anti.items() if not p.is_zero()}, "anti")
    return Quat(r, s, t, w, ALG_QUV)


# -- presentation ----------------------------------------------------------------


def word_bundle(w: GoodWord) -> dict:
    """JSON-ready bundle of all polynomial data for a word."""
    from .quatalg import qnorm  # local import to keep module load light
    from . import numeric

    wp = word_polys(w)
    norm_ok = qnorm(wp.core_quat) == RatPoly2.one(BASIS_XZ)
    trace_ok = numeric.spot_check_word(w, wp)
    return {
        "word": str(w),
        "order2": w.order2,
        "classification": classify(w).as_dict(),
        "r": wp.r.to_json(),
        "s": wp.s.to_json(),
        "t": wp.t.to_json(),
        "w": wp.w.to_json(),
        "g": wp.g.to_json(),
        "p": wp.p.to_json(),
        "balanced": wp.balanced,
        "checks": {"norm_ok": norm_ok, "trace_ok": trace_ok},
    }
