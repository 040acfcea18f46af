"""Necessary-condition discreteness tests and killer-word search.

Every test here is one-sided: a violated inequality certifies that the group
cannot be discrete (given the applicability exclusions), while "no
certificate" is always inconclusive.  Certificates carry enough data to be
re-validated from scratch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exactpoly import RatPoly2, roots_univariate
from .words import GoodWord, enumerate_order2_words, parse_word
from .wordpoly import trace_poly, word_polys

__all__ = [
    "CAO_CONSTANT",
    "InequalityReport",
    "inequality_tests",
    "Certificate",
    "killer_search",
    "revalidate_certificate",
    "axis_coincidence",
    "multiple_root_check",
    "multiplier_at_zero",
    "ScreenResult",
    "arithmeticity_screen",
    "STANDARD_ITERATION_WORDS",
]

# sharp constant of the same-trace commutator bound, attained by the
# (2,3,7) triangle group
CAO_CONSTANT = 2 - 2 * math.cos(math.pi / 7)

_ZERO_TOL = 1e-12


Number = Union[int, float, complex, Fraction]


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def _eq(a, b) -> bool:
    if _is_exact(a) and _is_exact(b):
        return a == b
    return abs(complex(a) - complex(b)) < _ZERO_TOL


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of the three necessary inequalities at (beta, gamma~).

    A flag is True when the inequality holds OR its exclusion applies;
    ``excluded`` lists the tests whose precondition failed.  Any False flag
    is a non-discreteness signal for the pair (f, w(f,g)).
    """

    jorgensen: bool
    variant: bool
    cao: bool
    excluded: frozenset[str]
    values: dict

    @property
    def violated(self) -> Optional[str]:
        for name in ("jorgensen", "variant", "cao"):
            if not getattr(self, name):
                return name
        return None


def inequality_tests(beta: Number, gamma_t: Number) -> InequalityReport:
    """|b| + |g| >= 1, |b| + |b - g| >= 1 and |g||g - b| >= c0, with exclusions.

    The first needs g != 0, the second g != b, the third g not in {0, b}
    (excluded tests count as holding).
    """
    b = complex(beta)
    g = complex(gamma_t)
    excluded = set()
    values = {
        "jorgensen": abs(b) + abs(g),
        "variant": abs(b) + abs(b - g),
        "cao": abs(g) * abs(g - b),
    }
    if _eq(gamma_t, 0):
        excluded.add("jorgensen")
        excluded.add("cao")
    if _eq(gamma_t, beta):
        excluded.add("variant")
        excluded.add("cao")
    jorg = "jorgensen" in excluded or values["jorgensen"] >= 1
    var = "variant" in excluded or values["variant"] >= 1
    cao = "cao" in excluded or values["cao"] >= CAO_CONSTANT
    return InequalityReport(jorg, var, cao, frozenset(excluded), values)


@dataclass(frozen=True)
class Certificate:
    """Witness of non-discreteness at (beta, gamma).

    ``chain`` is the composition chain applied innermost-first; the final
    commutator parameter ``gamma_tilde`` violates the inequality named by
    ``kind`` (for chains of length > 1 the kind is "semigroup-escape" and
    ``violated`` names the inequality).
    """

    kind: str
    witness_word: GoodWord
    chain: tuple[GoodWord, ...]
    beta: complex
    gamma: complex
    gamma_tilde: complex
    violated: str
    lhs: float
    rhs: float

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "word": str(self.witness_word),
            "chain": [str(w) for w in self.chain],
            "beta": [self.beta.real, self.beta.imag],
            "gamma": [self.gamma.real, self.gamma.imag],
            "gamma_tilde": [self.gamma_tilde.real, self.gamma_tilde.imag],
            "violated": self.violated,
            "values": {"lhs": self.lhs, "rhs": self.rhs},
        }


_RHS = {"jorgensen": 1.0, "variant": 1.0, "cao": CAO_CONSTANT}

# words whose trace polynomials drive the composition chains; the last one
# is superattracting at the origin
STANDARD_ITERATION_WORDS = ("bab", "babab", "babAb", "bababab", "bA^2bababA^2bab")


def _standard_words() -> list[GoodWord]:
    return [parse_word(t, order2=True) for t in STANDARD_ITERATION_WORDS]


def _poly_eval(w: GoodWord, beta, gamma):
    p = trace_poly(w)
    if _is_exact(beta) and _is_exact(gamma):
        return p.eval(beta, gamma)
    return p.eval(complex(beta), complex(gamma))


def _certificate_from(report, kind, word, chain, beta, gamma, gt) -> Certificate:
    name = report.violated
    return Certificate(
        kind,
        word,
        tuple(chain),
        complex(beta),
        complex(gamma),
        complex(gt),
        name,
        report.values[name],
        _RHS[name],
    )


def killer_search(
    beta: Number,
    gamma: Number,
    max_depth: int = 30,
    word_budget: int = 200,
    corpus: Optional[Iterable[GoodWord]] = None,
    escape_radius: float = 1e9,
) -> Optional[Certificate]:
    """Breadth-first hunt for a word certifying non-discreteness at (beta, gamma).

    Order: the pair itself (the one-letter word b), then single good words
    from the corpus (syllable count, then exponent size), then composition
    chains of the standard iteration words up to ``max_depth``.  Returns the
    first certificate found, or None (inconclusive: these tests are only
    necessary conditions, so nothing is ever claimed discrete).
    """
    word_b = parse_word("b", order2=True)
    report = inequality_tests(beta, gamma)
    if report.violated:
        return _certificate_from(report, report.violated, word_b, [word_b], beta, gamma, gamma)

    if corpus is None:
        corpus = enumerate_order2_words(4, 2)
    count = 0
    for w in corpus:
        if count >= word_budget:
            break
        count += 1
        gt = _poly_eval(w, beta, gamma)
        report = inequality_tests(beta, gt)
        if report.violated:
            return _certificate_from(report, report.violated, w, [w], beta, gamma, gt)

    for w in _standard_words():
        gt = gamma
        chain: list[GoodWord] = []
        for _ in range(max_depth):
            gt = _poly_eval(w, beta, gt)
            chain.append(w)
            if abs(complex(gt)) > escape_radius:
                break
            report = inequality_tests(beta, gt)
            if report.violated:
                kind = report.violated if len(chain) == 1 else "semigroup-escape"
                return _certificate_from(report, kind, w, chain, beta, gamma, gt)
            if _eq(gt, 0):
                break
    return None


def revalidate_certificate(cert: Certificate, tol: float = 1e-9) -> bool:
    """Recompute the certificate's chain and inequality from scratch."""
    gt = cert.gamma
    for w in cert.chain:
        gt = _poly_eval(w, cert.beta, gt)
    if abs(complex(gt) - cert.gamma_tilde) > tol:
        return False
    report = inequality_tests(cert.beta, gt)
    if report.violated is None:
        return False
    return abs(report.values[cert.violated] - cert.lhs) <= tol and cert.lhs < cert.rhs


# -- axis and root diagnostics ---------------------------------------------------


def _check_axis_preconditions(beta, gamma):
    if _eq(beta, -4):
        raise ValueError("beta = -4 is excluded (half-turn first generator)")
    if _eq(gamma, 0) or _eq(gamma, beta):
        raise ValueError("gamma in {0, beta} is excluded (shared fixed point)")


def axis_coincidence(w: GoodWord, beta: Number, gamma: Number, tol: float = 1e-9) -> bool:
    """True iff the word's fixed-point set coincides with the first generator's.

    Happens exactly when both t and w vanish at (beta, gamma); the test is
    exact when the inputs are rational.
    """
    _check_axis_preconditions(beta, gamma)
    wp = word_polys(w)
    if _is_exact(beta) and _is_exact(gamma):
        return wp.t.eval(beta, gamma) == 0 and wp.w.eval(beta, gamma) == 0
    tb = wp.t.eval(complex(beta), complex(gamma))
    wb = wp.w.eval(complex(beta), complex(gamma))
    return abs(tb) < tol and abs(wb) < tol


def multiple_root_check(w: GoodWord, beta: Number, gamma: Number, tol: float = 1e-9) -> bool:
    """Is gamma a multiple root of p_w(beta, .)?  Exact for rational inputs."""
    p = trace_poly(w)
    dp = p.diff2()
    if _is_exact(beta) and _is_exact(gamma):
        return p.eval(beta, gamma) == 0 and dp.eval(beta, gamma) == 0
    b, g = complex(beta), complex(gamma)
    return abs(p.eval(b, g)) < tol and abs(dp.eval(b, g)) < tol


def multiplier_at_zero(w: GoodWord) -> RatPoly2:
    """The multiplier of the fixed point 0 of z -> p_w(x, z), as a polynomial in x."""
    return trace_poly(w).coeff_of_second_power(1)


# -- arithmeticity screen ----------------------------------------------------------


@dataclass(frozen=True)
class ScreenResult:
    passed: bool
    diagnostics: dict


def arithmeticity_screen(
    minpoly: Sequence[int], v_expr: Sequence[int], tol: float = 1e-9
) -> ScreenResult:
    """Screen for the arithmetic-Kleinian sufficient condition.

    ``minpoly`` is the candidate minimal polynomial of u (ascending integer
    coefficients, monic); ``v_expr`` expresses v as an integer polynomial in
    u.  Requires exactly one conjugate pair of complex roots, all real roots
    strictly inside (-1, 1), and the image of v at every real embedding
    inside (-1, 1).  Irreducibility is checked heuristically (rational-root
    test; certified only up to degree 3) and reported in the diagnostics.
    """
    coeffs = [int(c) for c in minpoly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs or coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic with integer coefficients")
    deg = len(coeffs) - 1
    if deg < 2:
        return ScreenResult(False, {"reason": "degree must be at least 2 to have a complex root"})

    diagnostics: dict = {"degree": deg}
    # rational-root screen: a monic integer polynomial can only have integer
    # rational roots, and they divide the constant term
    c0 = coeffs[0]
    rational_roots = []
    if c0 == 0:
        rational_roots.append(0)
    else:
        for d in range(1, abs(c0) + 1):
            if abs(c0) % d == 0:
                for cand in (d, -d):
                    if sum(c * cand ** i for i, c in enumerate(coeffs)) == 0:
                        rational_roots.append(cand)
    rational_roots = sorted(set(rational_roots))
    diagnostics["rational_roots"] = rational_roots
    if rational_roots:
        diagnostics["irreducible"] = False
        return ScreenResult(False, diagnostics)
    diagnostics["irreducible"] = True if deg <= 3 else "not certified (no rational roots)"

    roots = [complex(r) for r, _m in roots_univariate(coeffs)]
    real = [r.real for r in roots if abs(r.imag) < tol]
    cplx = [r for r in roots if abs(r.imag) >= tol]
    diagnostics["real_roots"] = real
    diagnostics["complex_roots"] = [[r.real, r.imag] for r in cplx]
    if len(cplx) != 2:
        diagnostics["reason"] = "need exactly one conjugate pair of complex roots"
        return ScreenResult(False, diagnostics)
    if len(real) != deg - 2:
        diagnostics["reason"] = "root count mismatch"
        return ScreenResult(False, diagnostics)
    if any(abs(r) >= 1 for r in real):
        diagnostics["reason"] = "a real conjugate of u lies outside (-1, 1)"
        return ScreenResult(False, diagnostics)
    v_vals = [sum(c * r ** i for i, c in enumerate(v_expr)) for r in real]
    diagnostics["v_at_real_embeddings"] = v_vals
    if any(abs(v) >= 1 for v in v_vals):
        diagnostics["reason"] = "a real embedding of v lies outside (-1, 1)"
        return ScreenResult(False, diagnostics)
    diagnostics["v_algebraic_integer"] = "yes (integer polynomial in an algebraic integer)"
    return ScreenResult(True, diagnostics)
