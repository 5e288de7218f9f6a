"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Every tolerance below is the one fixed by the acceptance criteria; none is
tuned to the implementation. Criterion 10 is informational.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from quadrupole_screw import (
    FREE,
    NoSignChange,
    OracleConfig,
    PotentialParams,
    QuantumNumbers,
    SystemParams,
    beta_confinement_threshold,
    beta_kink,
    build_solution,
    energy,
    energy_free,
    energy_pseudoharmonic,
    omega_c_bisect,
    omega_c_closed,
    solve_radial,
)
from quadrupole_screw.oracle import raw_eigenvalues
from quadrupole_screw.wavefunction import radial_wavefunction

BASE = SystemParams(m=1.0, M=1.0, lam=1.0, omega=20.0, k=0.5, beta=0.5)
PSEUDO = PotentialParams(1.0, 1.0, 1.0)
HARMONIC = PotentialParams(c1=1.0)
INVERSE = PotentialParams(c2=1.0)

# (potential, beta) -> {n: (published omega_c, tolerance)}
CRITERION_TABLES = {
    1: {(FREE, 0.5): {0: (9.71, 0.01), 1: (48.83, 0.01), 2: (116.39, 0.01), 3: (212.39, 0.01)},
        (FREE, 0.0): {0: (6.73, 0.01)}},
    2: {(PSEUDO, 0.5): {0: (26.41, 0.02), 1: (77.71, 0.02), 2: (157.39, 0.02),
                        3: (265.50, 0.02)}},
    3: {(HARMONIC, 0.5): {0: (10.69, 0.02), 1: (49.82, 0.02), 2: (117.39, 0.02),
                          3: (213.39, 0.02)},
        (INVERSE, 0.5): {0: (22.88, 0.02), 1: (74.09, 0.02), 2: (153.75, 0.02),
                         3: (261.85, 0.02)}},
    4: {(PSEUDO, 0.0): {1: (46.48, 0.02)}, (PSEUDO, 0.8): {1: (117.52, 0.05)},
        (HARMONIC, 0.0): {1: (31.74, 0.02)}, (HARMONIC, 0.5): {1: (49.82, 0.02)},
        (HARMONIC, 0.8): {1: (71.91, 0.02)},
        (INVERSE, 0.0): {1: (43.53, 0.05)}, (INVERSE, 0.5): {1: (74.09, 0.05)},
        (INVERSE, 0.8): {1: (113.24, 0.05)}},
}


def _table_check(criterion, acceptance_report):
    misses, worst = [], 0.0
    for (v, beta), table in CRITERION_TABLES[criterion].items():
        for n, (expected, tol) in table.items():
            got = omega_c_closed(BASE.replace(beta=beta), v, QuantumNumbers(n, 1)).omega_c
            worst = max(worst, abs(got - expected) / tol)
            if abs(got - expected) > tol:
                misses.append((v, beta, n, got, expected))
    ok = not misses
    acceptance_report(criterion, ok, f"worst |omega_c - published| / tol = {worst:.3f}"
                      + (f"; misses {misses}" if misses else ""))
    return ok


@pytest.mark.parametrize("criterion", [1, 2, 3, 4])
def test_published_critical_velocities(criterion, acceptance_report):
    assert _table_check(criterion, acceptance_report)


def test_criterion_5_closed_form_vs_bisection(acceptance_report):
    worst = 0.0
    for tables in CRITERION_TABLES.values():
        for (v, beta), table in tables.items():
            for n in table:
                p, q = BASE.replace(beta=beta), QuantumNumbers(n, 1)
                diff = abs(omega_c_closed(p, v, q).omega_c - omega_c_bisect(p, v, q).omega_c)
                worst = max(worst, diff)
    ok = worst < 1e-6
    acceptance_report(5, ok, f"max |closed - bisect| = {worst:.3e} (< 1e-6)")
    assert ok


def _fit_order(p, v):
    exact = np.array([energy(p, v, QuantumNumbers(n, 1)).energy for n in range(4)])
    sizes = np.array([500, 1000, 2000, 4000])
    errs = np.array([np.abs(raw_eigenvalues(p, v, 1, n, 4) - exact) for n in sizes])
    return [np.polyfit(np.log(1.0 / sizes), np.log(errs[:, j]), 1)[0] for j in range(4)]


def test_criterion_6_oracle_equivalence(acceptance_report):
    worst_rel, orders = 0.0, []
    for v in (PSEUDO, HARMONIC, INVERSE):
        for beta in (0.0, 0.5, 0.8):
            p = BASE.replace(beta=beta)
            closed = [energy(p, v, QuantumNumbers(n, 1)).energy for n in range(4)]
            found = solve_radial(p, v, 1, OracleConfig(eigs_requested=4)).eigenvalues
            worst_rel = max(worst_rel, float(np.max(np.abs(found - closed) / np.abs(closed))))
            orders += _fit_order(p, v)
    lo, hi = min(orders), max(orders)
    ok = worst_rel < 1e-5 and abs(lo - 2.0) <= 0.2 and abs(hi - 2.0) <= 0.2
    acceptance_report(6, ok, f"max rel error {worst_rel:.3e} (< 1e-5); "
                             f"order in [{lo:.3f}, {hi:.3f}] (2.0 +- 0.2)")
    assert ok


def test_criterion_7_reduction_identity(acceptance_report):
    rng = np.random.default_rng(7)
    mismatches = 0
    for _ in range(10_000):
        m, M, lam = rng.uniform(0.05, 10.0, 3)
        p = SystemParams(m, M, lam, omega=rng.uniform(-0.5 * M * lam / m, 100.0),
                         k=rng.uniform(-5.0, 5.0), beta=rng.uniform(0.0, 3.0))
        q = QuantumNumbers(int(rng.integers(0, 20)), int(rng.integers(-10, 11)))
        zero = PotentialParams(0.0, 0.0, 0.0)
        mismatches += energy_pseudoharmonic(p, zero, q).energy != energy_free(p, q).energy
    ok = mismatches == 0
    acceptance_report(7, ok, f"{mismatches} bitwise mismatches in 10000 draws")
    assert ok


def test_criterion_8_degeneracy(acceptance_report):
    p = SystemParams(1.0, 1.0, 1.0, omega=0.0, k=0.0, beta=0.0)
    states = [(n, ell) for n in range(6) for ell in range(-5, 6)]
    e = {s: energy_free(p, QuantumNumbers(*s)).energy for s in states}
    indep = all(e[(n, ell)] == e[(n, 0)] for n in range(6) for ell in range(6))
    neg = [s for s in states if s[1] < 0]
    coincide = all((e[a] == e[b]) == (a[0] - a[1] == b[0] - b[1]) for a in neg for b in neg)
    split = True
    for omega in (0.3, 1.0, 20.0):
        pw = p.replace(omega=omega)
        ew = {s: energy_free(pw, QuantumNumbers(*s)).energy for s in states}
        for a in states:
            for b in states:
                if a < b and e[a] == e[b] and ew[a] == ew[b]:
                    split = False
    ok = indep and coincide and split
    acceptance_report(8, ok, f"ell-independence {indep}, n+|ell| coincidence {coincide}, "
                             f"omega != 0 splits {split}")
    assert ok


def _measure_quad(f, measure):
    weight = (lambda r: r) if measure == "rho" else (lambda r: 1.0)
    return quad(lambda r: f(r) * weight(r), 0.0, np.inf, limit=400, epsabs=1e-13)[0]


def test_criterion_9_wavefunctions(acceptance_report):
    norm_err = closed_err = ortho = flat_overlap = resid = 0.0
    zeros_ok = True
    for v in (FREE, PSEUDO):
        p = BASE
        nu = 1 - p.beta * p.k
        a = math.sqrt(nu**2 + 2 * p.m * v.c2)
        w = math.sqrt(p.M**2 * p.lam**2 + 2 * p.m * p.M * p.lam * p.omega + 2 * p.m * v.c1)
        for measure in ("rho", "flat"):
            sols = [build_solution(p, v, QuantumNumbers(n, 1), measure) for n in range(4)]
            for n, sol in enumerate(sols):
                def psi(r, sol=sol):
                    return float(radial_wavefunction(sol, r))
                norm_err = max(norm_err, abs(_measure_quad(lambda r: psi(r) ** 2, measure) - 1))
                if measure == "rho":
                    gamma_form = math.sqrt(2 * w ** (a + 1) * math.exp(
                        math.lgamma(n + 1) - math.lgamma(n + a + 1)))
                    closed_err = max(closed_err, abs(sol.norm / gamma_form - 1))
                    # interior zeros on a fine grid
                    rho = np.linspace(1e-6, 8 / math.sqrt(w) * math.sqrt(n + 1), 20001)
                    vals = radial_wavefunction(sol, rho)
                    zeros_ok &= int(np.count_nonzero(np.diff(np.sign(vals)))) == n
                    # radial equation residual with central differences
                    e = energy(p, v, QuantumNumbers(n, 1)).energy
                    h = 1e-4
                    r = np.linspace(0.1, 2.5, 50) / math.sqrt(w)
                    f0, fp, fm = (radial_wavefunction(sol, r + d) for d in (0, h, -h))
                    terms = [
                        (fp - 2 * f0 + fm) / h**2,
                        (fp - fm) / (2 * h * r),
                        -(a**2 / r**2 + w**2 * r**2) * f0,
                        (2 * p.m * e - p.k**2 + 2 * (p.M * p.lam + p.m * p.omega) * nu
                         - 2 * p.m * v.c3) * f0,
                    ]
                    rel = np.abs(sum(terms)) / sum(np.abs(t) for t in terms)
                    resid = max(resid, float(rel.max()))
            # the radial operator is self-adjoint only under rho d rho, so that is
            # where orthogonality holds; flat-measure overlaps are reported
            for i in range(4):
                for j in range(i + 1, 4):
                    overlap = _measure_quad(
                        lambda r: float(radial_wavefunction(sols[i], r)
                                        * radial_wavefunction(sols[j], r)), measure)
                    if measure == "rho":
                        ortho = max(ortho, abs(overlap))
                    else:
                        flat_overlap = max(flat_overlap, abs(overlap))
    ok = (norm_err < 1e-9 and closed_err < 1e-10 and ortho < 1e-8
          and resid < 1e-5 and zeros_ok)
    acceptance_report(9, ok, f"|norm - 1| {norm_err:.2e} (< 1e-9), closed form {closed_err:.2e} "
                             f"(< 1e-10), rho-measure orthogonality {ortho:.2e} (< 1e-8; flat-measure "
                             f"overlap {flat_overlap:.2f}, not an inner product of the operator), "
                             f"ODE residual {resid:.2e} (< 1e-5), zeros == n {zeros_ok}")
    assert ok


def test_criterion_10_documented_discrepancies(acceptance_report):
    """Informational: reports computed values next to the published ones."""
    kink = beta_kink(BASE, 1)
    thresholds = {}
    for n in (0, 1):
        try:
            thresholds[n] = round(beta_confinement_threshold(BASE, FREE, QuantumNumbers(n, 1)), 6)
        except NoSignChange:
            thresholds[n] = None
    acceptance_report(10, True, f"beta kink computed {kink.beta_star} (ell/k) vs quoted "
                                f"{kink.quoted} (k/ell)", status="INFO")
    acceptance_report(10, True, f"free omega=20 beta thresholds computed {thresholds} vs "
                                "published {0: 1.43, 1: 0.3}", status="INFO")
    best = None
    for p in (BASE.replace(omega=0.0), BASE):
        for v in (FREE, PSEUDO):
            for states in ((0, 1, 2), (1, 2, 3)):
                for measure in ("rho", "flat"):
                    norms = [build_solution(p, v, QuantumNumbers(n, 1), measure).norm
                             for n in states]
                    dev = max(abs(x - y) for x, y in zip(norms, (2.10, 1.62, 1.35)))
                    if best is None or dev < best[0]:
                        best = (dev, norms, p.omega, v, states, measure)
    dev, norms, omega, v, states, measure = best
    acceptance_report(
        10, True,
        f"normalization constants closest reading {[round(x, 3) for x in norms]} vs "
        f"published [2.1, 1.62, 1.35], max dev {dev:.3f} (match needs 0.02): omega={omega}, "
        f"c=({v.c1}, {v.c2}, {v.c3}), n={states}, measure={measure}",
        status="PASS" if dev <= 0.02 else "INFO",
    )
    assert kink.beta_star == 2.0
