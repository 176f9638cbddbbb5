import math
from fractions import Fraction

import pytest

import ncchain

CHAIN = {"N": 4, "m": "3/2", "omega": "3/4", "k": "5/4", "theta_sq": "1/10", "eta_sq": "1/20"}


def test_commutative_limit():
    cfg = {"N": 6, "m": 2, "omega": "1/2", "k": 1}
    for a, w in enumerate(ncchain.frequencies(cfg), start=1):
        s = math.sin(math.pi * a / 6) ** 2
        assert w == pytest.approx(math.sqrt(0.25 + 4 * s), rel=1e-12)


def test_effective_params_exact():
    m_eff, w2 = ncchain.effective_params({"N": 2, "m": 1, "omega": 1, "k": 0, "c_theta": 1, "c_eta": 1})
    # <theta^2> = <eta^2> = 3/2 with unit hbar and Planck length
    assert m_eff == Fraction(4, 5)
    assert w2 == Fraction(5, 4) * Fraction(5, 4)


def test_moments_from_fractions():
    assert ncchain.moments({"N": 1, "theta_sq": Fraction(1, 3), "eta_sq": 0.1}) == (Fraction(1, 3), Fraction(1, 10))


def test_oracle_agrees():
    report = ncchain.oracle(CHAIN)
    assert report["passed"] and report["multiplicities_match"]
    assert len(report["oracle_frequencies"]) == 12


def test_hessian_shape_and_symmetry():
    h = ncchain.hessian(CHAIN)
    assert h.shape == (24, 24)
    assert (h == h.T).all()


def test_relations_hold():
    checked, failures = ncchain.verify_relations({"N": 2, "c_theta": "2/3", "c_eta": "-1/2", "hbar": "3/2"})
    assert checked > 0 and failures == 0


def test_energy_and_sample():
    cfg = {"N": 2, "m": 1, "omega": 1, "k": 1}
    assert ncchain.energy(cfg, "1:1,0,0") == pytest.approx(9.0)
    assert ncchain.sample_model(5) == ncchain.sample_model(5)


def test_normalize_and_errors():
    assert ncchain.normalize({"N": 3, "m": 0.5})["m"] == "1/2"
    with pytest.raises(ValueError):
        ncchain.frequencies({"N": 3, "bogus": 1})


def test_cli_in_process():
    code, out, err = ncchain.run("energy", "-N", "2", "-k", "1", "--omega", "1", "1:1,0,0")
    assert code == 0 and "# energy=9" in out
