import json
import math
import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

import hnm

CONFIGS = Path(os.environ.get("HNM_CONFIGS", Path(__file__).resolve().parents[2] / "configs"))


def sinusoidal(eps0=0.0):
    return hnm.Model(hnm.Coupling.sinusoidal(1.0, 1.0, 1.0), eps0)


def test_flat_is_exponential():
    tr = hnm.amplitude(hnm.Model(hnm.Coupling.flat(1.0), 2.0), 0.01, 2.0)
    assert len(tr) == 201
    np.testing.assert_allclose(tr.a, np.exp(-(0.5 + 2j) * tr.t), atol=1e-14)


def test_backends_agree():
    m = hnm.Model(hnm.Coupling.exp_comb(4.0, 1.0, 0.0), 0.0)
    ref = hnm.amplitude(m, 1 / 200, 3.0)
    for backend, tol in [("volterra", 1e-12), ("laplace", 1e-8), ("modes", 1e-3)]:
        other = hnm.amplitude(m, 1 / 200, 3.0, backend=backend)
        assert other.backend == backend
        assert np.max(np.abs(other.a - ref.a)) < tol


def test_horizon_and_defect():
    tr = hnm.amplitude(sinusoidal(), 0.25, 2.0)
    assert hnm.semigroup_defect(tr, 3, 3) == pytest.approx(0.25 * math.exp(-0.25), rel=1e-13)
    fine = hnm.amplitude(sinusoidal(), 1 / 1000, 3.0)
    assert abs(hnm.hidden_horizon(fine) - 1.0) <= 1e-3


def test_channel():
    a = 0.3 - 0.4j
    rho = np.array([[0.7, 0.2 + 0.1j], [0.2 - 0.1j, 0.3]])
    out = hnm.evolve(rho, a)
    assert out.trace().real == pytest.approx(1.0)
    vec = hnm.channel_superoperator(a) @ rho.reshape(4)
    np.testing.assert_allclose(vec, out.reshape(4), atol=1e-15)
    assert np.linalg.eigvalsh(hnm.choi_matrix(1.1)).min() < 0


def test_rates_and_bound_state():
    gamma, eps = hnm.extract_rates(hnm.amplitude(hnm.Model(hnm.Coupling.flat(1.0), 2.0), 1e-3, 1.0))
    np.testing.assert_allclose(gamma, 1.0, atol=1e-6)
    np.testing.assert_allclose(eps, 2.0, atol=1e-6)
    m = sinusoidal(2 * math.pi)
    report = hnm.bound_state_check(m, hnm.amplitude(m, 0.01, 10.0))
    assert report["predicted"] and report["consistent"]


def test_errors_carry_kind():
    with pytest.raises(hnm.HnmError) as info:
        hnm.Model(hnm.Coupling.custom(1.0, 1.0, [0.9]))
    assert info.value.args[0] == "NonPositiveDensity"
    with pytest.raises(hnm.HnmError) as info:
        hnm.amplitude(sinusoidal(), 0.3, 2.0, backend="volterra")
    assert info.value.args[0] == "GridMismatch"


@pytest.mark.skipif("HNM_CLI" not in os.environ, reason="CLI path not provided")
@pytest.mark.parametrize("name", ["flat", "sinusoidal", "exp_comb", "custom", "bound_state"])
def test_cli_validates_shipped_configs(name):
    run = subprocess.run([os.environ["HNM_CLI"], "validate", "--config", str(CONFIGS / f"{name}.json")],
                         capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    assert json.loads(run.stdout)["valid"] is True


@pytest.mark.skipif("HNM_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_amplitude_csv(tmp_path):
    out = tmp_path / "flat.csv"
    run = subprocess.run([os.environ["HNM_CLI"], "amplitude", "--config", str(CONFIGS / "flat.json"),
                          "--out", str(out)], capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    data = np.genfromtxt(out, delimiter=",", names=True)
    assert data.dtype.names == ("t", "re_a", "im_a", "abs2_a", "gamma", "eps")
    np.testing.assert_allclose(data["abs2_a"], np.exp(-data["t"]), rtol=1e-13)
