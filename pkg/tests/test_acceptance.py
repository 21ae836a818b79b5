"""Acceptance suite: every criterion prints one PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines on
passing runs as well.
"""

import time

import numpy as np

from boundkey import (
    MODE_FULL,
    MODE_STRUCTURED,
    ORDERING_R1,
    ORDERING_R2,
    LocalFilter,
    OptimizationProblem,
    apply_filter,
    belldiag_blocks,
    belldiag_condition,
    check_relation_family1,
    decompose_blocks,
    hermitian_eigenvalues,
    hermitian_eigh,
    kdw_of_state,
    make_family,
    make_family1,
    make_family2,
    make_family3,
    min_eigenvalue,
    optimize,
    partial_transpose,
    pbit_sufficient_condition,
    success_probability,
    trace_norm,
    validate_state,
    xyzw,
)
from boundkey.filtering import PARAM_FLOOR
from boundkey.states import FAMILY_DOMAINS, P_MAX_FAMILY23, SQRT2

from conftest import random_hermitian

_SUITE_START = time.perf_counter()

# frozen by a standalone numpy evaluation of the corrected closed form
F2_KDW_LOWER = -0.3004380183464279
F2_KDW_UPPER = 0.021339915649837615


def _grid(family, points=50):
    lo, hi = FAMILY_DOMAINS[family]
    return np.linspace(lo, hi, points)


def _report(number, ok, detail):
    print(f"\nACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_c01_state_validity():
    start = time.perf_counter()
    worst_trace, worst_eig = 0.0, np.inf
    for family in ("Family1", "Family2", "Family3", "Horodecki"):
        for p in _grid(family):
            report = validate_state(make_family(family, float(p)))
            worst_trace = max(worst_trace, report.trace_residual)
            worst_eig = min(worst_eig, report.min_eigenvalue)
    elapsed = time.perf_counter() - start
    ok = worst_trace <= 1e-12 and worst_eig >= -1e-10 and elapsed < 5.0
    _report(1, ok, f"constructor grids: |tr-1|<={worst_trace:.2e}, "
                   f"min eig>={worst_eig:.2e}, {elapsed:.2f}s")


def test_c02_partial_transpose_claims():
    worst_fixed_point = 0.0
    for p in _grid("Family2"):
        m = make_family2(float(p)).matrix
        pt = partial_transpose(m, ORDERING_R1, ("B", "B'"))
        worst_fixed_point = max(worst_fixed_point, float(np.abs(pt - m).max()))
    ok_a = worst_fixed_point <= 1e-14

    worst_r2 = np.inf
    for family in ("Family1", "Family2", "Family3"):
        for p in _grid(family):
            pt = partial_transpose(make_family(family, float(p)).matrix, ORDERING_R2, ("B", "B'"))
            worst_r2 = min(worst_r2, min_eigenvalue(pt))
    ok_b = worst_r2 >= -1e-10

    pt = partial_transpose(make_family1(0.5).matrix, ORDERING_R1, ("B", "B'"))
    discrepancy = min_eigenvalue(pt)
    ok_c = discrepancy <= -0.05

    _report(2, ok_a and ok_b and ok_c,
            f"(a) R1 fixed point <= {worst_fixed_point:.2e}; "
            f"(b) R2 min PT eig {worst_r2:.2e}; "
            f"(c) R1 discrepancy at p=0.5: {discrepancy:.4f}")


def test_c03_closed_form_weights():
    worst = 0.0
    for p in _grid("Family1"):
        p = float(p)
        got = xyzw(decompose_blocks(make_family1(p)))
        x = 4 * abs(p / (1 + 2 * p))
        zw = 0.5 * abs((-1 + 2 * p) / (1 + 2 * p))
        worst = max(worst, *(abs(g - w) for g, w in zip(got.as_tuple(), (x, 0.0, zw, zw))))
    for p in _grid("Family2"):
        p = float(p)
        got = xyzw(decompose_blocks(make_family2(p)))
        want = (4 * p, 0.0, (1 - 4 * p + 2 * SQRT2 * p) / 2, (1 - 4 * p - 2 * SQRT2 * p) / 2)
        worst = max(worst, *(abs(g - w) for g, w in zip(got.as_tuple(), want)))
    _report(3, worst <= 1e-12, f"generic vs closed-form weights: max dev {worst:.2e}")


def test_c04_zero_crossing():
    lo, hi = 0.25, 0.40
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if kdw_of_state(make_family1(mid)).kdw < 0:
            lo = mid
        else:
            hi = mid
    crossing = 0.5 * (lo + hi)
    _report(4, abs(crossing - 0.315) <= 0.005, f"family-1 rate crosses zero at p*={crossing:.6f}")


def test_c05_family2_endpoint_rates():
    low = kdw_of_state(make_family2(0.125)).kdw
    high = kdw_of_state(make_family2(P_MAX_FAMILY23)).kdw
    ok = abs(low - (-0.3004)) <= 1e-3 and abs(high - 0.0214) <= 1e-3
    ok = ok and abs(low - F2_KDW_LOWER) <= 1e-10 and abs(high - F2_KDW_UPPER) <= 1e-10
    _report(5, ok, f"family-2 endpoint rates {low:.6f} / {high:+.6f}")


def test_c06_family3_negative_everywhere():
    rates = [kdw_of_state(make_family3(float(p))).kdw for p in _grid("Family3")]
    _report(6, max(rates) < 0, f"family-3 unfiltered rate max {max(rates):.4f} < 0")


def test_c07_filtration_enhancement():
    worst_after, worst_eff = np.inf, np.inf
    degenerate_ok = True
    for family in (1, 2, 3):
        for p in _grid(f"Family{family}"):
            p = float(p)
            state = make_family(family, p)
            result = optimize(OptimizationProblem(state, mode=MODE_STRUCTURED), seed=0)
            if family == 1 and p == 0.0:
                # with no corner blocks the x weight vanishes identically,
                # so every diagonal filter yields rate exactly zero; the
                # enhancement claim is void at this single boundary point
                degenerate_ok = (
                    abs(kdw_of_state(state).kdw) <= 1e-10
                    and abs(result.effective_rate) <= 1e-10
                )
                continue
            worst_after = min(worst_after, result.kdw)
            worst_eff = min(worst_eff, result.effective_rate)
    ok = worst_after >= 0.99 and worst_eff > 0 and degenerate_ok

    eps = PARAM_FLOOR
    eps_filter = LocalFilter(1, eps, eps, 1, 1, 1, 1, 1)
    worst_prob = 0.0
    for p in _grid("Family1"):
        p = float(p)
        got = success_probability(make_family1(p), eps_filter)
        want = (4 * p + eps**2 * (1 - 2 * p)) / (1 + 2 * p)
        worst_prob = max(worst_prob, abs(got - want))
    ok = ok and worst_prob <= 1e-6

    _report(7, ok, f"optimal filtering: min rate {worst_after:.6f}, min effective {worst_eff:.2e} "
                   f"(p=0 boundary rate pinned at zero: {degenerate_ok}); "
                   f"probability closed form dev {worst_prob:.2e}")


def test_c08_optimal_filter_structure():
    worst_unit, worst_split = 1.0, 0.0
    for family in (1, 2, 3):
        lo, hi = FAMILY_DOMAINS[f"Family{family}"]
        for p in np.linspace(lo, hi, 10):
            state = make_family(family, float(p))
            result = optimize(OptimizationProblem(state, mode=MODE_FULL), seed=0)
            a, b, c, d, r, s, t, u = result.filter.as_tuple()
            worst_unit = min(worst_unit, a, d, r, s, t, u)
            worst_split = max(worst_split, abs(b - c))
    ok = worst_unit >= 0.999 and worst_split <= 1e-3
    _report(8, ok, f"full search structure: min of (a,d,r,s,t,u)={worst_unit:.6f}, "
                   f"max |b-c|={worst_split:.2e}")


def test_c09_ppt_preservation(rng):
    worst = np.inf
    families = ("Family1", "Family2", "Family3")
    for k in range(1000):
        family = families[k % 3]
        lo, hi = FAMILY_DOMAINS[family]
        p = float(rng.uniform(lo, hi))
        f = LocalFilter.from_params(rng.uniform(PARAM_FLOOR, 1.0, 8))
        filtered = apply_filter(make_family(family, p), f).state
        pt = partial_transpose(filtered.matrix, ORDERING_R2, ("B", "B'"))
        worst = min(worst, min_eigenvalue((pt + pt.conj().T) / 2))
    _report(9, worst >= -1e-10, f"1000 filtered states: min PT eigenvalue {worst:.2e} under R2")


def test_c10_corner_mixing_relation():
    worst = max(check_relation_family1(float(p)) for p in _grid("Horodecki"))
    _report(10, worst <= 1e-12, f"conjugation relation residual <= {worst:.2e}")


def test_c11_sufficient_conditions():
    worst_norm_dev, worst_overlap = 0.0, 0.0
    interior_ok = True
    for p in _grid("Family2"):
        p = float(p)
        report = belldiag_condition(*belldiag_blocks(make_family2(p)))
        worst_norm_dev = max(worst_norm_dev, abs(report.difference_norm - 4 * p))
        worst_overlap = max(worst_overlap, abs(report.overlap))
        if p > 0.125:
            interior_ok = interior_ok and report.satisfied
    # at the closed left endpoint the norm is exactly 1/2, which does not
    # clear the strict threshold; the family-2 parameter range is open there
    edge = belldiag_condition(*belldiag_blocks(make_family2(0.125)))
    edge_ok = abs(edge.difference_norm - 0.5) <= 1e-12 and not edge.satisfied

    pbit_true = pbit_sufficient_condition(decompose_blocks(make_family1(0.4))).satisfied
    pbit_false = pbit_sufficient_condition(decompose_blocks(make_family1(0.05))).satisfied

    ok = (worst_norm_dev <= 1e-12 and worst_overlap <= 1e-12 and interior_ok
          and edge_ok and pbit_true and not pbit_false)
    _report(11, ok, f"|sigma0-sigma1| = 4p +/- {worst_norm_dev:.2e}, overlap <= {worst_overlap:.2e}, "
                    f"condition true on open interior (marginal 4p=1/2 at p=1/8); "
                    f"pbit condition {pbit_true}/{pbit_false} at p=0.4/0.05")


def test_c12_kernel_oracles_and_runtime(rng):
    worst_norm, worst_recon = 0.0, 0.0
    for _ in range(1000):
        h = random_hermitian(rng, 16)
        worst_norm = max(worst_norm, abs(trace_norm(h) - np.abs(hermitian_eigenvalues(h)).sum()))
        w, v = hermitian_eigh(h)
        worst_recon = max(worst_recon, float(np.abs(v @ np.diag(w) @ v.conj().T - h).max()))
    elapsed = time.perf_counter() - _SUITE_START
    ok = worst_norm <= 1e-10 and worst_recon <= 1e-10 and elapsed < 60.0
    _report(12, ok, f"trace norm vs eigenvalue oracle {worst_norm:.2e}, "
                    f"reconstruction {worst_recon:.2e}, suite {elapsed:.1f}s")
