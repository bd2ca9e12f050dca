"""Smoke tests for the lzsm Python module.

Run directly with the build directory as the first argument::

    python tests/python/test_smoke.py /path/to/build

or under pytest (the default build directory ``<repo>/build`` is used when
no argument is given).
"""

import math
import pathlib
import sys
import tempfile

_candidates = []
if len(sys.argv) > 1 and pathlib.Path(sys.argv[1]).is_dir():
    _candidates.append(str(pathlib.Path(sys.argv[1]).resolve()))
_candidates.append(str(pathlib.Path(__file__).resolve().parents[2] / "build"))
for _c in _candidates:
    if _c not in sys.path:
        sys.path.insert(0, _c)

import numpy as np

import lzsm


def fast_options():
    opts = lzsm.SolverOptions()
    opts.M = 256
    opts.K_modes = 32
    opts.K_X = 16
    opts.K = 3
    opts.workers = 2
    return opts


def test_driving_shapes():
    sh = lzsm.DrivingShape.preset("f2")
    assert abs(sh.period - 2.0 * math.pi) < 1e-15
    assert abs(sh(0.0) - 2.0) < 1e-12  # cos 0 + cos 0
    assert abs(sh.integral(0.0)) < 1e-12
    assert abs(sh.integral(math.pi / 2.0) - 1.0) < 1e-12  # sin t + sin(2t)/2
    assert sh.symmetric() and not sh.antisymmetric()
    assert lzsm.DrivingShape.is_preset("f3")
    assert not lzsm.DrivingShape.is_preset("nope")


def test_static_quasienergies():
    q = lzsm.QubitParams(3.0, 0.5, 0.0)
    sh = lzsm.DrivingShape.preset("cos")
    lo, hi, degenerate = lzsm.quasienergies(q, sh, 1e-10, 256, 32)
    half_gap = 0.5 * math.hypot(3.0, 0.5)
    folded = half_gap - round(half_gap)  # into [-1/2, 1/2)
    assert not degenerate
    assert abs(lo + abs(folded)) < 1e-9
    assert abs(hi - abs(folded)) < 1e-9


def test_thermal_point():
    q = lzsm.QubitParams(1.0, 0.5, 0.0)
    sh = lzsm.DrivingShape.preset("cos")
    bath = lzsm.BathParams(1e-4, 2.0, 0.0)
    res = lzsm.solve_point(q, sh, bath, fast_options())
    gibbs = 1.0 / (1.0 + math.exp(2.0 * math.hypot(1.0, 0.5)))
    assert abs(res.population - gibbs) < 1e-3
    assert res.trace_defect < 1e-8
    assert res.min_eigenvalue > -1e-6


def test_sweep_fft_roundtrip_overlap():
    q = lzsm.QubitParams(0.0, 0.5, 0.0)
    sh = lzsm.DrivingShape.preset("cos")
    bath = lzsm.BathParams(1e-3, 10.0, 0.0)
    eps = np.linspace(-2.0, 2.0, 9)
    amp = np.linspace(9.0, 11.0, 7)
    pat = lzsm.sweep_pattern(q, sh, bath, eps, amp, fast_options())
    assert pat.values.shape == (9, 7)
    assert pat.failed_points == 0
    assert np.all(pat.values >= 0.0) and np.all(pat.values <= 1.0)

    spec = lzsm.fourier2d(pat, 2, True)
    assert spec.values.shape == (18, 14)
    assert spec.tau_eps_axis[9] == 0.0  # fft-shifted origin
    back = lzsm.inverse_fourier2d(spec)
    assert np.max(np.abs(back.values - pat.values)) < 1e-9

    assert lzsm.pattern_overlap(pat, pat) == 1.0


def test_sideband_sum_rule():
    q = lzsm.QubitParams(0.0, 0.5, 7.5)
    sh = lzsm.DrivingShape.preset("f1")
    dn = np.asarray(lzsm.delta_n_range(q, sh, 60))
    assert abs(np.sum(np.abs(dn) ** 2) - 0.25) < 1e-8


def test_arc_predictions():
    sh = lzsm.DrivingShape.preset("cos")
    lo, hi = lzsm.arc_generic(sh, 1.0)
    assert abs(lo - 2.0 * math.sin(0.5)) < 1e-12
    assert abs(hi + 2.0 * math.sin(0.5)) < 1e-12
    curves = lzsm.arc_full(sh, list(np.linspace(0.3, 2.8, 40)))
    assert len(curves) >= 2
    assert all(len(c.samples) >= 1 for c in curves)


def test_pattern_file_roundtrip():
    pat = lzsm.PatternGrid()
    pat.eps_axis = np.linspace(-1.0, 1.0, 5)
    pat.A_axis = np.linspace(0.0, 4.0, 3)
    rng = np.random.default_rng(7)
    pat.values = rng.uniform(0.0, 1.0, size=(5, 3))
    pat.provenance = "python smoke"
    with tempfile.TemporaryDirectory() as d:
        path = str(pathlib.Path(d) / "roundtrip.lzsm")
        lzsm.write_pattern(path, pat)
        back = lzsm.read_pattern(path)
    assert np.array_equal(back.values, pat.values)
    assert back.provenance == "python smoke"


def main():
    tests = [
        test_driving_shapes,
        test_static_quasienergies,
        test_thermal_point,
        test_sweep_fft_roundtrip_overlap,
        test_sideband_sum_rule,
        test_arc_predictions,
        test_pattern_file_roundtrip,
    ]
    for fn in tests:
        fn()
        print(f"{fn.__name__}: ok")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
