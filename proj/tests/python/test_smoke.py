import math

import pytest

import twrc

UNIT = {"h": [1] * 4, "g": [1] * 4, "P": [1] * 4, "sigma2": [1] * 4, "sigmaR2": 1, "PR": 1}


def test_unit_terms():
    t = twrc.terms(UNIT)
    assert t["C"] == [0.5] * 4
    assert t["D"] == [0.5] * 4


def test_certify_unit():
    report = twrc.certify(UNIT)
    assert report["pass"] is True
    assert all(c["pass"] for c in report["combined"])


def test_missing_field():
    bad = dict(UNIT)
    del bad["PR"]
    with pytest.raises(twrc.TwrcError) as info:
        twrc.terms(bad)
    assert info.value.code == twrc.EXIT_VALIDATION
    assert "PR" in str(info.value)


def test_rates():
    assert twrc.gaussian_rate(3, 0, 1) == pytest.approx(1.0)
    assert twrc.lattice_rate(1, 0, 1) == pytest.approx(0.5 * math.log2(1.5))


def test_monte_carlo_reproducible():
    a = twrc.monte_carlo(10, 7)
    assert a == twrc.monte_carlo(10, 7)
    assert a["passed"] == 10


def test_unit_box():
    code, out, _ = twrc.run_cli(["vertices", "--unit-box"])
    assert code == twrc.EXIT_OK
    assert '"count": 16' in out
