"""Smoke tests for the python bindings; run with PYTHONPATH at build/python."""

import math

import numpy as np

import qdarwin as qd


def test_scalars():
    assert abs(qd.lambert_w0(math.e) - 1.0) < 1e-12
    nbar, entropy = qd.gibbs_entropy(1.0)
    assert abs(nbar - 1.0 / math.expm1(1.0)) < 1e-14
    assert abs(entropy - 1.0406518522564083) < 1e-12

    analytic, degenerate = qd.mean_energy_analytic(1.0, "1e17")
    assert not degenerate
    assert abs(analytic - 17 * (2 / 7) ** (14 / 17) * 0.1) < 1e-12

    n = qd.LogReal("1e60")
    assert abs(n.ln - 60 * math.log(10)) < 1e-9
    assert str(n) == "1e+60"


def test_optimizers():
    r1 = qd.minimize_mean_energy(1.0, "1e60")
    assert 0.03 <= r1.zeta / 0.01 <= 0.3

    r2 = qd.minimize_exp_cutoff(1.0, "1e29")
    assert r2.zeta / 0.01 <= 5e-4
    assert r2.route in ("worst-moment", "cutoff-params")

    rows = [(qd.LogReal(10.0 ** k), 5.0 * (10.0 ** k) ** (-0.1) / 0.01)
            for k in range(5, 15)]
    fit = qd.power_law_fit(rows, 0.01)
    assert abs(fit.beta - 5.0) < 1e-9
    assert abs(fit.alpha - 10.0) < 1e-9


def test_fock_and_channels():
    gibbs = qd.gibbs_state(1.0, 8, "exact-tail")
    assert abs(np.trace(gibbs).real - (1 - math.exp(-8))) < 1e-12

    tms = qd.two_mode_squeezed(1.0, 3)
    assert abs(np.trace(tms).real - (1 - math.exp(-3))) < 1e-12
    reduced = qd.partial_trace(tms, 3, 3, "A")
    assert np.allclose(reduced, qd.gibbs_state(1.0, 3, "exact-tail"), atol=1e-12)

    entropy = qd.von_neumann_entropy(np.eye(2, dtype=complex) / 2, "bits")
    assert abs(entropy - 1.0) < 1e-12

    ch = qd.random_channel(3, 2, 3, 7)
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = 1.0
    out = ch.apply(rho)
    assert abs(np.trace(out).real - 1.0) < 1e-10

    j = qd.modified_choi(ch, 0.5)
    assert abs(np.trace(j).real - (1 - math.exp(-1.5))) < 1e-10

    identity = qd.QuantumChannel.identity(2)
    dephasing = qd.QuantumChannel.dephasing(2)
    est = qd.ecd_lower_bound(identity, dephasing, 1.0)
    assert est.lower_bound >= 0.95


def test_gaussian_and_verify():
    vac = qd.GaussianState(0j, 0.0, 0.0)
    assert abs(qd.exp_moment(vac, 0.5).moment - 1.0) < 1e-13
    assert abs(qd.cutoff_params(1.0, 0.5, 4.0) - 2.0 / 15.0) < 1e-15

    cert = qd.certify_set(1.0, 0.5, 4.0, 500, 1)
    assert cert.all_pass

    report = qd.check_gentle_measurement(trials=50, dim=4, seed=1)
    assert report.passed
    assert report.worst_slack >= -1e-9


if __name__ == "__main__":
    test_scalars()
    test_optimizers()
    test_fock_and_channels()
    test_gaussian_and_verify()
    print("python smoke tests passed")
