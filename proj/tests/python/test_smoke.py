import json
import math
import pathlib

import pytest

import attrpriv

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_conditional_count_distribution_reference():
    points, probs = attrpriv.conditional_count_distribution(4, 0.4, 0.6, 0)
    assert points == [0.0, 1.0, 2.0, 3.0, 4.0]
    expected = [0.0256, 0.1536, 0.3456, 0.3456, 0.1296]
    assert probs == pytest.approx(expected, abs=1e-12)
    _, rev = attrpriv.conditional_count_distribution(4, 0.4, 0.6, 4)
    assert rev == pytest.approx(expected[::-1], abs=1e-12)


def test_parameter_mapped_counts_reference():
    _, high = attrpriv.conditional_count_distribution_param(4, 0.8, 0.6, -0.2)
    expected = [0.0983, 0.3091, 0.3643, 0.1908, 0.0375]
    assert high == pytest.approx(expected, abs=1e-4)
    _, low = attrpriv.conditional_count_distribution_param(4, 0.2, 0.6, -0.2)
    assert low == pytest.approx(expected[::-1], abs=1e-4)


def test_w_infinity():
    p0, q0 = attrpriv.conditional_count_distribution(4, 0.4, 0.6, 0)
    p4, q4 = attrpriv.conditional_count_distribution(4, 0.4, 0.6, 4)
    assert attrpriv.w_infinity(p0, q0, p4, q4) == pytest.approx(1.0, abs=1e-12)


def test_divergences_and_effective_privacy():
    assert attrpriv.max_divergence([0.0, 1.0], [0.5, 0.5], [0.25, 0.75]) == (
        pytest.approx(math.log(2.0))
    )
    d = attrpriv.approx_max_divergence([0.0, 1.0], [0.5, 0.5], [0.75, 0.25], 0.1)
    assert d == pytest.approx(math.log(0.4 / 0.25))
    eps, delta, clamped = attrpriv.effective_privacy(1.0, 1e-5, 0.01, 0.1)
    assert eps == pytest.approx(1.2)
    assert delta == pytest.approx(math.exp(0.1) * 1e-5 + 0.01)
    assert not clamped


def test_quantiles():
    assert attrpriv.normal_cdf(0.0) == pytest.approx(0.5)
    assert attrpriv.gaussian_inverse_cdf(0.975) == pytest.approx(
        1.959963984540054, abs=1e-9
    )
    with pytest.raises(ValueError):
        attrpriv.gaussian_inverse_cdf(1.5)


def test_release_is_deterministic_per_seed():
    framework = (DATA / "example61_framework.json").read_text()
    csv_text = (DATA / "example61.csv").read_text()
    first = attrpriv.release(framework, csv_text, "wasserstein", epsilon=1.0, seed=3)
    second = attrpriv.release(framework, csv_text, "wasserstein", epsilon=1.0, seed=3)
    assert first == second
    other = attrpriv.release(framework, csv_text, "wasserstein", epsilon=1.0, seed=4)
    assert other != first
    report = json.loads(first)
    assert report["mechanism"] == "wasserstein"
    assert report["W"] == pytest.approx(1.0)
    assert "noise" not in report


def test_release_rejects_bad_mechanism():
    framework = (DATA / "example61_framework.json").read_text()
    csv_text = (DATA / "example61.csv").read_text()
    with pytest.raises(ValueError):
        attrpriv.release(framework, csv_text, "nonsense")
