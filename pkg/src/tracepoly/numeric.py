"""Canonical matrix pairs and numeric evaluation maps.

Everything here is double-precision and serves as the independent oracle for
the exact symbolic layer: canonical representatives for two-generator groups
with prescribed trace parameters, literal word evaluation, and the
evaluation homomorphisms that send quaternions with indeterminates to
concrete matrices.  All square roots are principal.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .quatalg import ALG_Q0, ALG_QUV, Quat, congruence_g
from .words import GoodWord, classify

__all__ = [
    "GroupParams",
    "CanonicalPair",
    "canonical_pair",
    "canonical_pair_lm",
    "eval_word_matrix",
    "phi_eval",
    "psi_eval",
    "verify_limits",
    "second_limit_deviation",
    "section3_identities_check",
    "beta_from_tau_eta",
    "gamma_from_axes",
    "mat",
    "inv2",
]

_SQ = cmath.sqrt


def mat(a11, a12, a21, a22) -> np.ndarray:
    return np.array([[a11, a12], [a21, a22]], dtype=complex)


def inv2(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return mat(m[1, 1], -m[0, 1], -m[1, 0], m[0, 0]) / det


@dataclass(frozen=True)
class GroupParams:
    """Conjugacy parameters (beta, beta', gamma) of a two-generator group."""

    beta: complex
    beta2: complex
    gamma: complex

    @property
    def lam(self) -> complex:
        return (self.beta + 2) / 2

    @property
    def lam2(self) -> complex:
        return (self.beta2 + 2) / 2

    @property
    def mu(self) -> complex:
        if self.beta == 0:
            raise ValueError("mu is undefined for parabolic first generator")
        return 1 - 2 * self.gamma / self.beta


@dataclass(frozen=True)
class CanonicalPair:
    A: np.ndarray
    B: np.ndarray
    case: int
    subchoice: Optional[tuple[complex, complex]]


_OFFDIAG_CHOICES = ((0, 1), (1, 0), (0, 0))


def canonical_pair(
    p: GroupParams,
    subchoice: Optional[tuple[complex, complex]] = None,
    ell: complex = 0,
) -> CanonicalPair:
    """Matrices realizing (beta, beta', gamma), by the three-case normal form.

    Case 1: beta != 0 (first generator diagonal).  Case 2: beta = 0,
    gamma != 0.  Case 3: beta = gamma = 0, where ``ell`` is the free upper
    entry available exactly when beta' = 0.  ``subchoice`` selects the
    off-diagonal pair (b, c) among (0,1), (1,0), (0,0) in the gamma = 0
    cases of Case 1; passing it with gamma != 0 is an inconsistent request.
    """
    beta, beta2, gamma = p.beta, p.beta2, p.gamma
    if beta != 0:
        if gamma != 0 and subchoice is not None:
            raise ValueError("off-diagonal subchoice requires a shared fixed point (gamma = 0)")
        q = _SQ(beta * (beta + 4))
        sb = _SQ(beta)
        A = mat((q + beta) / (2 * sb), 0, 0, (q - beta) / (2 * sb))
        a = (_SQ(beta2 + 4) + _SQ((4 * gamma + beta * beta2) / beta)) / 2
        d = (_SQ(beta2 + 4) - _SQ((4 * gamma + beta * beta2) / beta)) / 2
        if gamma != 0:
            c = _SQ(gamma / beta)
            b = -c
            chosen = None
        else:
            chosen = subchoice if subchoice is not None else _OFFDIAG_CHOICES[0]
            if chosen not in _OFFDIAG_CHOICES:
                raise ValueError(f"subchoice must be one of {_OFFDIAG_CHOICES}")
            b, c = chosen
        return CanonicalPair(A, mat(a, b, c, d), 1, chosen)
    A = mat(1, 1, 0, 1)
    if gamma != 0:
        if subchoice is not None:
            raise ValueError("subchoice applies only to Case 1 with gamma = 0")
        sg = _SQ(gamma)
        B = mat(0, -1 / sg, sg, _SQ(beta2 + 4))
        return CanonicalPair(A, B, 2, None)
    if beta2 != 0 and ell != 0:
        raise ValueError("the free entry exists only when beta' = 0")
    sp = _SQ(beta2 + 4)
    sm = _SQ(beta2)
    B = mat((sp + sm) / 2, ell, 0, (sp - sm) / 2)
    return CanonicalPair(A, B, 3, None)


def canonical_pair_lm(
    lam: complex,
    lam2: complex,
    mu: complex,
    subchoice: Optional[tuple[complex, complex]] = None,
) -> CanonicalPair:
    """Canonical pair in the (lambda, lambda', mu) parameters; needs lambda != 1."""
    if lam == 1:
        raise ValueError("lambda = 1 is outside this chart (use the beta parameters)")
    s21 = _SQ(2 * (lam - 1))
    sl = _SQ(lam * lam - 1)
    A = mat((sl + lam - 1) / s21, 0, 0, (sl - lam + 1) / s21)
    a = (_SQ(lam2 + 1) + _SQ(lam2 - mu)) / cmath.sqrt(2)
    d = (_SQ(lam2 + 1) - _SQ(lam2 - mu)) / cmath.sqrt(2)
    if mu != 1:
        if subchoice is not None:
            raise ValueError("off-diagonal subchoice requires mu = 1")
        c = _SQ((1 - mu) / 2)
        b = -c
        chosen = None
    else:
        chosen = subchoice if subchoice is not None else _OFFDIAG_CHOICES[0]
        b, c = chosen
    return CanonicalPair(A, mat(a, b, c, d), 1, chosen)


def eval_word_matrix(A: np.ndarray, B: np.ndarray, w: GoodWord) -> np.ndarray:
    """Literal matrix product of the word's letters."""
    out = np.eye(2, dtype=complex)
    for sym, e in w.letters():
        base = A if sym == "a" else B
        out = out @ np.linalg.matrix_power(base, e)
    return out


# -- evaluation homomorphisms ---------------------------------------------------


def phi_eval(
    q: Quat,
    p: GroupParams,
    D1: Optional[complex] = None,
    D2: Optional[complex] = None,
) -> np.ndarray:
    """Evaluate a q0 quaternion at concrete parameters.

    For beta != 0 the off-diagonal scale pair (D1, D2) may be anything with
    D1*D2 = gamma(gamma-beta)/beta^2; the default is the product pair of
    the canonical matrices.  The parabolic cases use the specialized forms
    (which need the congruence polynomial g).
    """
    if q.algebra != ALG_Q0:
        raise ValueError("phi evaluates q0 quaternions")
    beta, beta2, gamma = p.beta, p.beta2, p.gamma
    if beta != 0:
        rv, sv, tv, wv = (c.eval(beta, gamma) for c in q.components())
        qq = _SQ(beta * (beta + 4))
        if D1 is None or D2 is None:
            cp = canonical_pair(p)
            a, b = cp.B[0, 0], cp.B[0, 1]
            c, d = cp.B[1, 0], cp.B[1, 1]
            D1, D2 = a * b, c * d
        return mat(
            rv + sv * qq / beta,
            D1 * (beta * tv + wv * qq),
            D2 * (beta * tv - wv * qq),
            rv - sv * qq / beta,
        )
    g = congruence_g(q)
    if gamma != 0:
        rv, tv, wv = (c.eval(0, gamma) for c in (q.r, q.t, q.w))
        gv = g.eval(0, gamma)
        return mat(rv + gamma * tv, 4 * gv + 2 * wv, 2 * gamma * wv, rv - gamma * tv)
    rv = q.r.eval(0, 0)
    wv = q.w.eval(0, 0)
    gv = g.eval(0, 0)
    return mat(rv, 4 * gv - (beta2 + _SQ(beta2) * _SQ(beta2 + 4)) * wv, 0, rv)


def psi_eval(
    q: Quat,
    lam: complex,
    lam2: complex,
    mu: complex,
    subchoice: Optional[tuple[complex, complex]] = None,
) -> np.ndarray:
    """Evaluate a quv quaternion at concrete (lambda, lambda', mu)."""
    if q.algebra != ALG_QUV:
        raise ValueError("psi evaluates quv quaternions")
    cp = canonical_pair_lm(lam, lam2, mu, subchoice)
    a, b = cp.B[0, 0], cp.B[0, 1]
    c, d = cp.B[1, 0], cp.B[1, 1]
    sl = _SQ(lam * lam - 1)
    rv, sv, tv, wv = (comp.eval(lam, mu) for comp in q.components())
    return mat(
        rv + sv * sl,
        2 * a * b * (tv + wv * sl),
        2 * c * d * (tv - wv * sl),
        rv - sv * sl,
    )


# -- parabolic limits -------------------------------------------------------------


def _limit_conjugator(beta: complex, beta2: complex, gamma: complex) -> np.ndarray:
    k = _SQ(1 / _SQ(beta))
    qq = _SQ(beta * (beta + 4))
    qp = _SQ(beta) * _SQ(beta + 4)
    m = -(1 / k) * (1 / _SQ(beta) + _SQ(beta2 + 4) / (2 * _SQ(gamma)))
    root = _SQ(4 * gamma + beta * beta2) / _SQ(beta)
    D1 = -0.5 * _SQ(gamma / beta) * (_SQ(beta2 + 4) + root)
    D2 = 0.5 * _SQ(gamma / beta) * (_SQ(beta2 + 4) - root)
    inner = 2 * _SQ(gamma) * _SQ(1 + beta * beta2 / (4 * gamma)) / _SQ(beta)
    D1p = -(_SQ(gamma) / (2 * _SQ(beta))) * (_SQ(beta2 + 4) + inner)
    D2p = (_SQ(gamma) / (2 * _SQ(beta))) * (_SQ(beta2 + 4) - inner)
    if abs(qp - qq) <= abs(qp + qq):
        C = mat(_SQ(D1p / D1), 0, 0, _SQ(D2p / D2))
    else:
        C = mat(0, 1j * _SQ(D1p / D2), 1j * _SQ(D2p / D1), 0)
    return mat(k, m, 0, 1 / k) @ C


def verify_limits(
    q: Quat, beta2: complex, gamma: complex, betas: Sequence[complex]
) -> list[float]:
    """Deviations of the conjugated evaluations from the parabolic limit.

    For each beta in the sequence, conjugates the beta-evaluation of q by
    the explicit matrix that aligns fixed points and measures the sup-norm
    distance to the beta = 0 evaluation.  Needs gamma != 0.
    """
    if gamma == 0:
        raise ValueError("the first limit needs gamma != 0")
    target = phi_eval(q, GroupParams(0, beta2, gamma))
    devs = []
    for beta in betas:
        M = _limit_conjugator(beta, beta2, gamma)
        val = M @ phi_eval(q, GroupParams(beta, beta2, gamma)) @ inv2(M)
        devs.append(float(np.max(np.abs(val - target))))
    return devs


def second_limit_deviation(
    q: Quat, beta2: complex, gammas: Sequence[complex]
) -> list[float]:
    """Deviation of conjugated (0, gamma)-evaluations from the (0, 0) limit."""
    target = phi_eval(q, GroupParams(0, beta2, 0))
    devs = []
    for gamma in gammas:
        m1 = (_SQ(beta2 + 4) + _SQ(beta2)) / (2 * _SQ(gamma))
        M1 = mat(1, m1, 0, 1)
        val = M1 @ phi_eval(q, GroupParams(0, beta2, gamma)) @ inv2(M1)
        devs.append(float(np.max(np.abs(val - target))))
    return devs


# -- classical trace identities ---------------------------------------------------


def section3_identities_check(
    k: complex, m: complex, a: complex, b: complex, c: complex, d: complex, tol: float = 1e-10
) -> bool:
    """Verify the upper-triangular / parabolic conjugation and commutator identities."""
    if abs(a * d - b * c - 1) > 1e-12:
        raise ValueError("N must have determinant 1")
    N = mat(a, b, c, d)
    M = mat(k, m, 0, 1 / k)
    P = mat(1, 1, 0, 1)
    Qm = mat(0, 1j * _SQ(k), 1j / _SQ(k), 0)

    def close(x, y):
        return float(np.max(np.abs(x - y))) < tol

    ok = close(Qm @ N @ inv2(Qm), mat(d, k * c, b / k, a))
    ok &= close(
        M @ N @ inv2(M),
        mat(a + m * c / k, -m * m * c + m * k * (d - a) + k * k * b, c / k ** 2, d - m * c / k),
    )
    M0 = mat(k, 0, 0, 1 / k)
    comm = M0 @ N @ inv2(M0) @ inv2(N)
    ok &= close(
        comm,
        mat(a * d - k * k * b * c, a * b * (k * k - 1), c * d * (1 / k ** 2 - 1), a * d - b * c / k ** 2),
    )
    pcomm = P @ N @ inv2(P) @ inv2(N)
    ok &= close(pcomm, mat(1 + c * c + a * c, 1 - a * a - a * c, c * c, 1 - a * c))
    ok &= abs(np.trace(comm) - (2 - (k - 1 / k) ** 2 * b * c)) < tol
    ok &= abs(np.trace(pcomm) - (2 + c * c)) < tol
    return bool(ok)


# -- geometric parameter conversions ----------------------------------------------


def beta_from_tau_eta(tau: float, eta: float) -> complex:
    """beta of a loxodromic/elliptic with translation length tau and holonomy eta."""
    return 4 * cmath.sinh((tau + 1j * eta) / 2) ** 2


def gamma_from_axes(beta_f: complex, beta_g: complex, delta: complex) -> complex:
    """gamma from the complex distance between the axis and its translate."""
    return beta_f * beta_g * cmath.sinh(delta) ** 2 / 4


# -- spot check used by presentation bundles ---------------------------------------


def spot_check_word(w: GoodWord, wp) -> bool:
    """Cheap numeric confirmation of the word's polynomial data.

    Evaluates the word at one fixed non-degenerate parameter point and
    checks the commutator-trace identity (and the plain trace identity when
    the word is balanced and even).
    """
    p = GroupParams(0.7 + 0.3j, -0.4 + 0.9j, 1.1 - 0.6j)
    cp = canonical_pair(p)
    Wm = eval_word_matrix(cp.A, cp.B, w)
    comm = cp.A @ Wm @ inv2(cp.A) @ inv2(Wm)
    ok = abs(np.trace(comm) - 2 - wp.p.eval(p.beta, p.gamma)) < 1e-8
    cls = classify(w)
    if cls.balance == "balanced" and cls.parity == "even":
        ok &= abs(np.trace(Wm) - 2 * wp.r.eval(p.beta, p.gamma)) < 1e-8
    return bool(ok)
