import math

import tcdkit


def test_special_functions():
    assert tcdkit.norm_cdf(0.0) == 0.5
    assert abs(tcdkit.norm_quantile(0.9 ** (1 / 60)) - 2.92) < 0.01
    assert abs(tcdkit.chi2_cdf(2 * math.log(2), 2) - 0.5) < 1e-12
    assert abs(tcdkit.chi2_quantile(0.99 ** (1 / 60), 6) - 26.67) < 0.05
    assert tcdkit.hermite_poly(4, 0.0) == 3.0
    assert tcdkit.gaussian_raw_moment(0.0, 1.0, 4) == 3.0


def test_threshold_constants():
    assert abs(tcdkit.cusum_threshold(0.1, 60) - 6.40) < 0.01
    assert abs(tcdkit.cusum_threshold(0.01, 60) - 8.70) < 0.01
    assert abs(tcdkit.cusum_threshold(0.01, 300) - 10.31) < 0.01


def test_mean_change_chain():
    mu0 = 10 ** 4.4
    delta = mu0 * (10 ** 0.3 - 1)
    model = tcdkit.mean_change(mu0, (delta / 3) ** 2, 10 ** 3.7, 10 ** 3.4)
    a, b, c = model.llr_coeffs()
    assert a == 0.0
    assert b < 0.0  # mean drops under multipath

    h = tcdkit.detector_threshold(model, "fma", 6, 60, 0.1, rule="quantile")
    assert abs(h - 2.92) < 0.01
    assert abs(tcdkit.pmd_bound(model, h, 6) - 6.97e-4) / 6.97e-4 < 0.03


def test_detectors():
    alarm = tcdkit.run_detector("fma", 2, 1.0, [0.3, 0.8, 0.4])
    assert alarm == (2, 1.1) or (alarm[0] == 2 and abs(alarm[1] - 1.1) < 1e-12)
    assert tcdkit.run_detector("cusum", 1, 1.4, [0.5, -2.0, 0.8, 0.7])[0] == 4
    assert tcdkit.run_detector("fma", 3, 5.0, [-1.0, -1.0, -1.0]) is None

    det = tcdkit.Detector("shewhart", 1, 0.7)
    assert det.step(0.3) is None
    assert det.step(0.8) == (2, 0.8)
    assert det.stopped


def test_availability_verdicts():
    dll_tuned = tcdkit.variance_change(1.11e-5, 2.78e-4)
    rep = tcdkit.availability(dll_tuned, "fma", 6, 60, 0.01, 0.01, metric="dll")
    assert not rep["available"]
    assert abs(rep["beta_bound"] - 1.70e-2) / 1.70e-2 < 0.02

    dll_actual = tcdkit.variance_change(1.11e-5, 2.78e-4, 5.44e-4)
    rep = tcdkit.availability(dll_actual, "fma", 6, 60, 0.01, 0.01, metric="dll")
    assert rep["available"]

    sam = tcdkit.general_change(0.1, 1.14e-3, 0.2, 2.03e-3)
    rep = tcdkit.availability(sam, "fma", 6, 300, 0.01, 0.01, metric="sam")
    assert rep["available"]
    assert abs(rep["h"] - 5.53) < 0.05
    rep = tcdkit.availability(sam, "cusum", 6, 300, 0.01, 0.01, metric="sam")
    assert not rep["available"]


def test_simulation_determinism():
    model = tcdkit.mean_change(0.0, 1.0, 1.0)
    a = tcdkit.simulate_pfa(model, "fma", 1.5, 3, 12, runs=4000, seed=99, threads=1)
    b = tcdkit.simulate_pfa(model, "fma", 1.5, 3, 12, runs=4000, seed=99, threads=4)
    assert a["p_hat"] == b["p_hat"]
    pmd = tcdkit.simulate_pmd(model, "fma", 1.5, 3, 12, runs=4000, seed=99)
    assert 0.0 <= pmd["p_hat"] <= 1.0
