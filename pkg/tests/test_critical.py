import math
import warnings

import numpy as np
import pytest

from quadrupole_screw import (
    FREE,
    DegenerateDenominator,
    NoSignChange,
    PotentialParams,
    QuantumNumbers,
    RealityViolatedInBracket,
    SpuriousRoot,
    SystemParams,
    ZeroWaveNumber,
    beta_confinement_threshold,
    beta_kink,
    energy_free,
    omega_c_bisect,
    omega_c_closed,
)
from quadrupole_screw.critical import _omega_c_free_expr, _omega_c_pseudo_expr
from quadrupole_screw.spectrum import energy_value

PSEUDO = PotentialParams(1.0, 1.0, 1.0)
HARMONIC = PotentialParams(c1=1.0)
INVERSE = PotentialParams(c2=1.0)

TABLES = {
    ("free", 0.5): (FREE, [9.71, 48.83, 116.39, 212.39], 0.01),
    ("pseudo", 0.5): (PSEUDO, [26.41, 77.71, 157.39, 265.50], 0.01),
    ("harmonic", 0.5): (HARMONIC, [10.69, 49.82, 117.39, 213.39], 0.01),
    ("inverse", 0.5): (INVERSE, [22.88, 74.09, 153.75, 261.85], 0.01),
}


@pytest.mark.parametrize("key", list(TABLES))
def test_closed_form_tables(base, key):
    v, expected, tol = TABLES[key]
    got = [omega_c_closed(base, v, QuantumNumbers(n, 1)).omega_c for n in range(4)]
    np.testing.assert_allclose(got, expected, atol=tol)
    assert np.all(np.diff(got) > 0)


def test_no_dislocation_threshold(base):
    assert omega_c_closed(base.replace(beta=0.0), FREE, QuantumNumbers(0, 1)).omega_c == \
        pytest.approx(6.73, abs=0.01)


@pytest.mark.parametrize(
    "v, betas, expected",
    [(HARMONIC, (0.0, 0.5, 0.8), (31.74, 49.82, 71.91)),
     (INVERSE, (0.0, 0.5, 0.8), (43.53, 74.09, 113.24))],
)
def test_first_excited_state_versus_beta(base, v, betas, expected):
    for beta, want in zip(betas, expected):
        got = omega_c_bisect(base.replace(beta=beta), v, QuantumNumbers(1, 1)).omega_c
        assert got == pytest.approx(want, abs=0.01)


def test_bisection_free_ground_state(base):
    res = omega_c_bisect(base, FREE, QuantumNumbers(0, 1), bracket=(0.0, 100.0), tol=1e-10)
    closed = omega_c_closed(base, FREE, QuantumNumbers(0, 1))
    assert res.method == "bisection" and closed.method == "closed-form"
    assert res.omega_c == pytest.approx(9.711, abs=1e-3)
    assert abs(res.omega_c - closed.omega_c) < 1e-9


def test_inverse_square_table_by_bisection(base):
    got = [omega_c_bisect(base, INVERSE, QuantumNumbers(n, 1)).omega_c for n in range(4)]
    np.testing.assert_allclose(got, [22.88, 74.09, 153.75, 261.85], atol=0.01)


@pytest.mark.parametrize("v", [FREE, PSEUDO, HARMONIC, INVERSE])
@pytest.mark.parametrize("beta", [0.0, 0.5, 0.8, 1.5])
@pytest.mark.parametrize("n", range(4))
def test_closed_form_agrees_with_bisection(base, v, beta, n):
    p, q = base.replace(beta=beta), QuantumNumbers(n, 1)
    a = omega_c_closed(p, v, q)
    b = omega_c_bisect(p, v, q)
    assert abs(a.omega_c - b.omega_c) < 1e-6
    assert a.residual < 1e-8 * max(1.0, a.omega_c)


@pytest.mark.parametrize("v", [FREE, PSEUDO])
def test_sign_structure_around_root(base, v):
    for n in range(4):
        q = QuantumNumbers(n, 1)
        wc = omega_c_closed(base, v, q).omega_c
        for d in (1e-3, 0.1, 1.0):
            assert energy_value(base.replace(omega=wc - d), v, q) > 0
            assert energy_value(base.replace(omega=wc + d), v, q) < 0


def test_pseudo_expression_reduces_to_free_expression(base):
    for beta in (0.0, 0.3, 0.5, 0.8, 1.7, 3.0):
        for n in range(5):
            for ell in (-2, -1, 1, 2, 3):
                p, q = base.replace(beta=beta), QuantumNumbers(n, ell)
                if q.ell - p.beta * p.k == 0:
                    continue
                a = _omega_c_free_expr(p, q, 1.0)
                b = _omega_c_pseudo_expr(p, FREE, q, 1.0)
                assert b == pytest.approx(a, rel=1e-12, abs=1e-12)


def test_degenerate_denominator(base):
    with pytest.raises(DegenerateDenominator):
        omega_c_closed(base.replace(beta=2.0), FREE, QuantumNumbers(0, 1))


def test_minus_branch(base):
    q = QuantumNumbers(0, 1)
    with pytest.warns(UserWarning):
        low = omega_c_closed(base, FREE, q, "minus")
    # free case: a genuine second zero just above the reality bound omega = -1/2
    assert -0.5 < low.omega_c < 0
    assert omega_c_bisect(base, FREE, q, bracket=(-0.5, 0.0)).omega_c == pytest.approx(
        low.omega_c, abs=1e-9)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(SpuriousRoot) as info:
            omega_c_closed(base, PSEUDO, q, "minus")
    assert info.value.residual > 1.0


def test_bisection_errors(base):
    q = QuantumNumbers(0, 1)
    with pytest.raises(NoSignChange):
        omega_c_bisect(base, FREE, q, bracket=(20.0, 30.0))
    with pytest.raises(RealityViolatedInBracket):
        omega_c_bisect(base, FREE, q, bracket=(-1.0, 30.0))
    # negative lam: omega_sq turns negative as omega grows
    with pytest.raises(RealityViolatedInBracket):
        omega_c_bisect(base.replace(lam=-1.0), FREE, q)


def test_beta_kink_examples():
    k = beta_kink(SystemParams(k=0.5), 1)
    assert k.beta_star == 2.0 and k.quoted == 0.5
    assert beta_kink(SystemParams(k=2.0), 2).beta_star == 1.0
    with pytest.raises(ZeroWaveNumber):
        beta_kink(SystemParams(k=0.0), 1)


def test_beta_kink_located_by_scan(base):
    """Locate the slope discontinuity of E(beta) from second differences."""
    betas = np.linspace(0.0, 4.0, 4001)
    e = np.array([energy_free(base.replace(beta=b), QuantumNumbers(0, 1)).energy for b in betas])
    second = np.abs(np.diff(e, 2))
    found = betas[1:-1][np.argmax(second)]
    assert found == pytest.approx(beta_kink(base, 1).beta_star, abs=2e-3)


def test_beta_threshold_ground_state(base):
    beta = beta_confinement_threshold(base, FREE, QuantumNumbers(0, 1), (0.0, 1.6))
    # E = k^2/2 - 21 nu + sqrt(41)(1 + nu) vanishes at nu = (1/8 + sqrt 41)/(21 - sqrt 41)
    nu = (0.125 + math.sqrt(41)) / (21 - math.sqrt(41))
    assert beta == pytest.approx(2 * (1 - nu), abs=1e-9)
    assert abs(energy_free(base.replace(beta=beta), QuantumNumbers(0, 1)).energy) < 1e-8


def test_beta_threshold_first_excited_has_no_root(base):
    with pytest.raises(NoSignChange):
        beta_confinement_threshold(base, FREE, QuantumNumbers(1, 1), (0.0, 1.6))


def test_no_root_without_rotation():
    p = SystemParams(omega=0.0, k=0.5)
    # every term is non-negative at omega = 0 on the nu > 0 branch
    with pytest.raises(NoSignChange):
        beta_confinement_threshold(p, FREE, QuantumNumbers(0, 1), (0.0, 1.6))
