"""Acceptance suite: one test per numbered criterion, one printed verdict each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Two sub-claims are expected failures (strict xfail) because they contradict
the rest of the contract; see the test docstrings and the failure reasons.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from tracepoly import cli
from tracepoly.discreteness import killer_search, multiplier_at_zero
from tracepoly.exactpoly import BASIS_UV, BASIS_XZ, RatPoly2, roots_univariate
from tracepoly.numeric import (
    GroupParams,
    canonical_pair,
    eval_word_matrix,
    inv2,
    phi_eval,
    second_limit_deviation,
    verify_limits,
)
from tracepoly.quatalg import (
    ALG_QUV,
    Quat,
    enumerate_units,
    in_order_O,
    qnorm,
    quat_from_coeffs,
    rho,
    verify_irrational_unit,
)
from tracepoly.words import parse_word, star, word_from_letters
from tracepoly.wordpoly import (
    chebyshev_rstw,
    generator_quats,
    rstw_uv,
    trace_poly,
    word_polys,
    word_to_quat,
)

from conftest import make_params, make_word

X = RatPoly2.var1(BASIS_XZ)
Z = RatPoly2.var2(BASIS_XZ)
U = RatPoly2.var1(BASIS_UV)
V = RatPoly2.var2(BASIS_UV)
HALF = Fraction(1, 2)
ONE_UV = RatPoly2.one(BASIS_UV)


def report(criterion, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"criterion {criterion}: {tag}{'  (' + detail + ')' if detail else ''}")
    assert ok, f"criterion {criterion} failed: {detail}"


# -- 1: the ten standard word polynomials ------------------------------------------

TABLE1_EXPECTED = {
    "bab": Z * (Z - X),
    "ba^2b": (X + 4) * (Z - X) * Z,
    "babab": (X - Z + 1) ** 2 * Z,
    "babAb": Z * (1 - X.scale(2) + Z * Z - (X - 2) * Z),
    "baba^2b": Z * (1 + X * (X + 1) * (X + 4) - (X + 4) * (X.scale(2) + 1) * Z + (X + 4) * Z * Z),
    "ba^2ba^2b": (X * X - (Z - 4) * X - Z.scale(4) + 1) ** 2 * Z,
    "bababab": Z * (Z - X) * (X - Z + 2) ** 2,
    "bababAb": Z * (X * X + Z ** 3 - X.scale(2) * Z * Z + (X - 1) * X * Z),
    "baba^2bAb": Z * (X + 4) * (X * X + Z ** 3 - X.scale(2) * Z * Z + (X - 1) * X * Z),
    "bA^2bababA^2bab": Z ** 3 * (Z - X) * (X + 4)
    * (X * (Z * Z - Z.scale(3) - 4) - X * X * (Z + 1) + Z * Z * 4 + Z.scale(4) + 1),
}


def test_criterion_1_table1(capsys):
    start = time.monotonic()
    for text, expected in TABLE1_EXPECTED.items():
        w = parse_word(text, order2=True)
        assert trace_poly(w) == expected, text
    assert cli.main(["poly", "--table1"]) == 0
    out = capsys.readouterr().out
    assert len([l for l in out.splitlines() if l.strip()]) == 10
    elapsed = time.monotonic() - start
    with capsys.disabled():
        report(1, elapsed < 5.0, f"10 rows exact, {elapsed:.2f}s")


# -- 2: bounded-degree unit table ----------------------------------------------------


def _canon(p: RatPoly2) -> RatPoly2:
    if not p.terms:
        return p
    lead = max(p.terms, key=lambda k: (k[0] + k[1], k))
    return -p if p.terms[lead] < 0 else p


def _unit_key(r, s, t, w):
    return tuple(frozenset(c.terms.items()) for c in (r, _canon(s), _canon(t), _canon(w)))


TABLE2_ROWS = [
    (1, 0, 0, 0),
    ("u", 1, 0, 0),
    ("v", 0, 1, 0),
    ("u", "v", 0, 1),
    ("v", 0, "u", 1),
    ("uv", 1, "u", 0),
    ("uv", "v", 1, 0),
    ("uv", "v", "u", 1),
    ("2u2-1", "2u", 0, 0),
    ("2v2-1", 0, "2v", 0),
    ("(1+u+v-uv)/2", "(v-1)/2", "(u-1)/2", "1/2"),
    ("(1+u-v+uv)/2", "(v+1)/2", "(u-1)/2", "1/2"),
    ("(1-u+v+uv)/2", "(v-1)/2", "(u+1)/2", "1/2"),
    ("(-1+u+v+uv)/2", "(v+1)/2", "(u+1)/2", "1/2"),
]

_ATOM = {
    "u": U,
    "v": V,
    "uv": U * V,
    "2u": U.scale(2),
    "2v": V.scale(2),
    "2u2-1": U * U * 2 - 1,
    "2v2-1": V * V * 2 - 1,
    "(1+u+v-uv)/2": (1 + U + V - U * V).scale(HALF),
    "(1+u-v+uv)/2": (1 + U - V + U * V).scale(HALF),
    "(1-u+v+uv)/2": (1 - U + V + U * V).scale(HALF),
    "(-1+u+v+uv)/2": (U + V + U * V - 1).scale(HALF),
    "(v-1)/2": (V - 1).scale(HALF),
    "(v+1)/2": (V + 1).scale(HALF),
    "(u-1)/2": (U - 1).scale(HALF),
    "(u+1)/2": (U + 1).scale(HALF),
    "1/2": RatPoly2.const(HALF, BASIS_UV),
}


def _lift(c) -> RatPoly2:
    if isinstance(c, str):
        return _ATOM[c]
    return RatPoly2.const(c, BASIS_UV)


def test_criterion_2_table2(capsys):
    start = time.monotonic()
    units = enumerate_units(2, 2)
    got = {_unit_key(*q.components()) for q in units}
    expected = {_unit_key(*(_lift(c) for c in row)) for row in TABLE2_ROWS}
    elapsed = time.monotonic() - start
    assert len(units) == 14
    assert got == expected
    with capsys.disabled():
        report(2, elapsed < 120.0, f"14 units exact, {elapsed:.1f}s")


# -- 3: generator quaternions and their images ---------------------------------------


def test_criterion_3_generators(capsys):
    gens = generator_quats()
    zero = RatPoly2.zero(BASIS_XZ)
    assert gens["a2"] == Quat((X + 2).scale(HALF), X.scale(HALF), zero, zero, "q0")
    assert gens["ba2B"] == Quat(
        (X + 2).scale(HALF), (X - Z.scale(2)).scale(HALF), zero, RatPoly2.const(-1, BASIS_XZ), "q0"
    )
    assert gens["comm"] == Quat(
        (Z + 2).scale(HALF), Z.scale(-HALF),
        RatPoly2.const(-HALF, BASIS_XZ), RatPoly2.const(-HALF, BASIS_XZ), "q0"
    )
    assert word_to_quat(parse_word("a^2")) == gens["a2"]
    assert word_to_quat(parse_word("b a^2 B")) == gens["ba2B"]
    assert word_to_quat(parse_word("[b,a]")) == gens["comm"]
    assert rho(gens["a2"]) == quat_from_coeffs(U, 1, 0, 0, ALG_QUV)
    assert rho(gens["ba2B"]) == quat_from_coeffs(U, V, 0, -1, ALG_QUV)
    assert rho(gens["comm"]) == Quat(
        (1 + U + V - U * V).scale(HALF), (V - 1).scale(HALF),
        (1 - U).scale(HALF), RatPoly2.const(-HALF, BASIS_UV), ALG_QUV,
    )
    with capsys.disabled():
        report(3, True, "explicit quadruples and images exact")


# -- 4: symbolic norm identity ---------------------------------------------------------


def test_criterion_4_norm_identity(rng, capsys):
    start = time.monotonic()
    for _ in range(500):
        w = make_word(rng, max_syllables=8, max_exp=5, max_lead=2)
        assert qnorm(rstw_uv(w)) == ONE_UV, str(w)
    elapsed = time.monotonic() - start
    with capsys.disabled():
        report(4, elapsed < 60.0, f"500 words, symbolic zero, {elapsed:.1f}s")


# -- 5: numeric oracle agreement -------------------------------------------------------


def test_criterion_5_oracle(rng, capsys):
    """Trace and commutator identities at 500 random samples.

    Word sizes are kept moderate (<= 4 syllables, exponents <= 2) so that
    double-precision matrix products stay within the 1e-9 absolute
    tolerance; the identities themselves are size-independent and the
    symbolic side is exact.  The trace identity requires balanced even
    words; the commutator identity holds for every good word.
    """
    worst_tr = worst_comm = worst_bp = 0.0
    for _ in range(500):
        w = make_word(rng, 4, 2, max_lead=1, balanced=True, even=True)
        wp = word_polys(w)
        beta, beta2, gamma = make_params(rng)
        p = GroupParams(beta, beta2, gamma)
        cp = canonical_pair(p)
        Wm = eval_word_matrix(cp.A, cp.B, w)
        worst_tr = max(worst_tr, abs(np.trace(Wm) - 2 * wp.r.eval(beta, gamma)))
        comm = cp.A @ Wm @ inv2(cp.A) @ inv2(Wm)
        worst_comm = max(worst_comm, abs(np.trace(comm) - 2 - wp.p.eval(beta, gamma)))
        traces = []
        for _k in range(10):
            b2 = make_params(rng)[1]
            cp2 = canonical_pair(GroupParams(beta, b2, gamma))
            traces.append(np.trace(eval_word_matrix(cp2.A, cp2.B, w)))
        worst_bp = max(worst_bp, max(abs(t - traces[0]) for t in traces))
    ok = worst_tr < 1e-9 and worst_comm < 1e-9 and worst_bp < 1e-10
    with capsys.disabled():
        report(
            5, ok,
            f"trace {worst_tr:.1e}, commutator {worst_comm:.1e}, beta' {worst_bp:.1e}",
        )


# -- 6: parabolic limits ----------------------------------------------------------------


def test_criterion_6_parabolic_limits(rng, capsys):
    """Convergence of the conjugated evaluations, and exact parabolic forms.

    The conjugated maps converge to the parabolic evaluation (deviations
    strictly decreasing, empirically at a square-root rate); the explicit
    threshold sub-claim lives in the companion xfail test.
    """
    w3 = generator_quats()["comm"]
    quats = [w3] + [
        word_to_quat(make_word(rng, 4, 2, balanced=True, even=True, regular=True))
        for _ in range(5)
    ]
    betas = [10 ** -n for n in range(1, 7)]
    for q in quats:
        devs = verify_limits(q, 0.0, 1.0, betas)
        assert all(b < a for a, b in zip(devs, devs[1:])), devs
        devs2 = second_limit_deviation(q, 0.3 + 0.1j, betas)
        assert all(b < a for a, b in zip(devs2, devs2[1:])), devs2
    # parabolic matrix forms match the direct word product to 1e-9
    worst = 0.0
    for _ in range(20):
        w = make_word(rng, 4, 2, balanced=True, even=True, regular=True)
        q = word_to_quat(w)
        gamma = make_params(rng)[2]
        beta2 = make_params(rng)[1]
        p = GroupParams(0, beta2, gamma)
        cp = canonical_pair(p)
        worst = max(worst, float(np.max(np.abs(
            phi_eval(q, p) - eval_word_matrix(cp.A, cp.B, w)
        ))))
        p0 = GroupParams(0, beta2, 0)
        cp0 = canonical_pair(p0)
        worst = max(worst, float(np.max(np.abs(
            phi_eval(q, p0) - eval_word_matrix(cp0.A, cp0.B, w)
        ))))
    ok = worst < 1e-9
    with capsys.disabled():
        report(6, ok, f"limits decrease; parabolic forms match to {worst:.1e}")


@pytest.mark.xfail(
    strict=True,
    reason="the displayed conjugators converge at a square-root rate: the "
    "deviation for the commutator quaternion at beta = 1e-6 is ~1.5e-3 "
    "(= 1.5 sqrt(beta)), so the 1e-4 threshold cannot be met at that beta; "
    "it is reached only around beta = 4e-9",
)
def test_criterion_6_threshold_subclaim():
    w3 = generator_quats()["comm"]
    devs = verify_limits(w3, 0.0, 1.0, [1e-6])
    print(f"criterion 6 threshold sub-claim: deviation at beta=1e-6 is {devs[0]:.3e}")
    assert devs[0] < 1e-4


# -- 7: composition law -------------------------------------------------------------------


def test_criterion_7_composition(rng, capsys):
    checked = 0
    while checked < 100:
        w1 = make_word(rng, 4, 3, order2=True)
        w2 = make_word(rng, 4, 3, order2=True)
        w = star(w1, w2)
        if w.is_identity:
            continue
        assert trace_poly(w) == trace_poly(w1).compose_second(trace_poly(w2)), (str(w1), str(w2))
        checked += 1
    with capsys.disabled():
        report(7, True, "100 pairs, exact polynomial equality")


# -- 8: multiplier table -------------------------------------------------------------------


def test_criterion_8_multipliers(capsys):
    """Multipliers at the origin for the standard iteration words.

    Three of the four printed multipliers and the superattracting word are
    reproduced exactly; the fourth printed value is inconsistent with the
    word's own trace polynomial and is covered by the companion xfail test.
    """
    assert multiplier_at_zero(parse_word("bab", order2=True)) == -X
    assert multiplier_at_zero(parse_word("babab", order2=True)) == (X + 1) ** 2
    assert multiplier_at_zero(parse_word("babAb", order2=True)) == 1 - X.scale(2)
    assert multiplier_at_zero(parse_word("bA^2bababA^2bab", order2=True)).is_zero()
    # the fourth word's true multiplier, derived from its trace polynomial
    assert multiplier_at_zero(parse_word("bababab", order2=True)) == -X * (X + 2) ** 2
    with capsys.disabled():
        report(8, True, "-b, (1+b)^2, 1-2b, superattracting 0 exact; see xfail for the 4th printed value")


@pytest.mark.xfail(
    strict=True,
    reason="the printed multiplier (1-3b)^2 for the seven-letter alternating "
    "word contradicts its own trace polynomial g(g-b)(b-g+2)^2, whose "
    "linear coefficient is -b(b+2)^2; the polynomial is confirmed "
    "independently by the matrix oracle",
)
def test_criterion_8_fourth_multiplier_subclaim():
    w = parse_word("bababab", order2=True)
    actual = multiplier_at_zero(w)
    print(f"criterion 8 sub-claim: multiplier of bababab is {actual}, not (1-3b)^2")
    assert actual == (1 - X.scale(3)) ** 2


# -- 9: relator detection --------------------------------------------------------------------


def _solve_tw_zero(t: RatPoly2, w: RatPoly2):
    """Common zeros of two polynomials of v-degree <= 1.

    Returns (isolated points, line u-values): a line arises at a u where all
    four v-coefficients vanish simultaneously, so every v solves the system.
    """
    assert t.degree2() <= 1 and w.degree2() <= 1
    t0, t1 = t.coeff_of_second_power(0), t.coeff_of_second_power(1)
    w0, w1 = w.coeff_of_second_power(0), w.coeff_of_second_power(1)
    res = t0 * w1 - t1 * w0
    coeffs = [complex(res.coeff(i, 0)) for i in range(res.degree1() + 1)]
    solutions = []
    lines = []
    for u0, _mult in roots_univariate(coeffs):
        t1v = t1.eval(u0, 0)
        w1v = w1.eval(u0, 0)
        if abs(t1v) > 1e-8:
            v0 = -t0.eval(u0, 0) / t1v
        elif abs(w1v) > 1e-8:
            v0 = -w0.eval(u0, 0) / w1v
        else:
            # both v-slopes vanish: a solution line iff the constants vanish too
            if abs(t0.eval(u0, 0)) < 1e-7 and abs(w0.eval(u0, 0)) < 1e-7:
                lines.append(u0)
            continue
        if abs(t.eval(u0, v0)) < 1e-7 and abs(w.eval(u0, v0)) < 1e-7:
            if not any(abs(u0 - us) + abs(v0 - vs) < 1e-6 for us, vs in solutions):
                solutions.append((u0, v0))
    return solutions, lines


def test_criterion_9_relators(capsys):
    # W = f g f^5 g^-1 f g f^2 g^-1 f^-3: unique zero of (t, w), a relator point
    w1 = parse_word("a b a^5 B a b a^2 B a^-3")
    q = rstw_uv(w1)
    sols, lines = _solve_tw_zero(q.t, q.w)
    assert len(sols) == 1 and not lines
    (u0, v0) = sols[0]
    assert abs(u0 - (-0.5)) < 1e-9 and abs(v0 - (-1 / 3)) < 1e-9
    us, vs = Fraction(-1, 2), Fraction(-1, 3)
    assert q.t.eval(us, vs) == 0 and q.w.eval(us, vs) == 0
    assert q.s.eval(us, vs) == 0
    assert q.r.eval(us, vs) == -1

    # W = f g f^5 g^-1 f^-2: t and w share the factor -1 + 2u + 4u^2, s stays away
    w2 = parse_word("a b a^5 B a^-2")
    q2 = rstw_uv(w2)
    fac = U * U * 4 + U.scale(2) - 1
    assert q2.t.divides_exactly(fac) is not None
    assert q2.w.divides_exactly(fac) is not None
    for root, _m in roots_univariate([-1, 2, 4]):
        for v_probe in (0.123, 7.0, -2.5):
            assert abs(q2.s.eval(root, v_probe)) > 0.1
    with capsys.disabled():
        report(9, True, "relator at (-1/2, -1/3) with s=0, r=-1; shared factor confirmed")


# -- 10: discreteness sweep --------------------------------------------------------------------


def test_criterion_10_sweep(capsys):
    from tracepoly.words import enumerate_order2_words

    start = time.monotonic()
    corpus = list(enumerate_order2_words(4, 2))
    n = 100
    failures = []
    for iy in range(n):
        for ix in range(n):
            g = complex(-1.5 + (ix + 0.5) * 3.0 / n, -1.5 + (iy + 0.5) * 3.0 / n)
            cert = killer_search(0, g, max_depth=30, word_budget=200, corpus=corpus)
            if 0 < abs(g) < 1 and cert is None:
                failures.append(g)
    assert not failures, failures[:5]
    assert killer_search(0, 2.0, max_depth=30) is None
    assert killer_search(0, 4.0, max_depth=30) is None
    elapsed = time.monotonic() - start
    with capsys.disabled():
        report(10, elapsed < 600.0, f"unit disk fully certified, free points untouched, {elapsed:.0f}s")


# -- 11: half-integrality ------------------------------------------------------------------------


def test_criterion_11_half_integrality(rng, capsys):
    for _ in range(60):
        w = make_word(rng, 6, 4)
        ok, witness = in_order_O(rstw_uv(w))
        assert ok and witness is not None
        parts, P = witness
        assert P.is_integer() and all(c.is_integer() for c in parts)
    for q in enumerate_units(2, 2):
        ok, witness = in_order_O(q)
        assert ok and witness is not None
    assert verify_irrational_unit()
    with capsys.disabled():
        report(11, True, "word quaternions and units decompose; irrational unit confirmed")


# -- 12: independent Chebyshev construction -------------------------------------------------------


def test_criterion_12_chebyshev(rng, capsys):
    def five_block(ns):
        letters = [("a", ns[0]), ("b", 1), ("a", ns[1]), ("b", -1),
                   ("a", ns[2]), ("b", 1), ("a", ns[3]), ("b", -1), ("a", ns[4])]
        return word_from_letters(letters, order2=False)

    checked = 0
    sign_notes = set()
    while checked < 50:
        ns = [rng.randint(-4, 4) for _ in range(5)]
        if sum(ns) % 2:
            ns[0] += 1
        w = five_block(ns)
        if w.is_identity:
            continue
        qc = chebyshev_rstw(*ns)
        qp = rstw_uv(w)
        assert qc.r == qp.r and qc.s == qp.s
        if qc.t == qp.t and qc.w == qp.w:
            sign_notes.add("+T")
        elif qc.t == -qp.t and qc.w == -qp.w:
            sign_notes.add("-T")
        else:
            raise AssertionError(f"no sign resolution matches for {ns}")
        checked += 1
    with capsys.disabled():
        report(12, True, f"50 tuples, exact equality (sign resolution: {sorted(sign_notes)})")
