import subprocess
import sys

from lcongr import _kernels_py, kernels
from lcongr.curves import CurveData, count_points_naive, sieve_primes

E11 = CurveData("11a1", (0, -1, 1, -10, -20), 11)


def test_backend_reports_name():
    assert kernels.BACKEND in ("cython", "numpy")


def test_ap_single_against_naive_counts():
    b2, b4, b6, _ = E11.b_invariants
    for p in (3, 5, 7, 13, 101):
        expected = p + 1 - count_points_naive(E11, p)
        assert kernels.ap_single(b2, b4, b6, p) == expected
        assert _kernels_py.ap_single(b2, b4, b6, p) == expected


def test_sweep_matches_single():
    b2, b4, b6, _ = E11.b_invariants
    ps = [p for p in sieve_primes(500) if p > 2 and p != 11]
    sweep = kernels.ap_sweep(b2, b4, b6, ps)
    assert list(sweep) == [kernels.ap_single(b2, b4, b6, p) for p in ps]


def test_backends_agree():
    b2, b4, b6, _ = E11.b_invariants
    ps = [p for p in sieve_primes(2000) if p > 2 and p != 11]
    assert list(kernels.ap_sweep(b2, b4, b6, ps)) == \
        list(_kernels_py.ap_sweep(b2, b4, b6, ps))


def test_quartic_root_count_against_naive():
    coeffs = (3, -4, -60, -237, -21)
    for p in (5, 13, 19, 193, 337):
        naive = sum(1 for x in range(p)
                    if (((((3 * x - 4) * x - 60) * x - 237) * x - 21) % p) == 0)
        assert kernels.quartic_root_count(*coeffs, p) == naive
        assert _kernels_py.quartic_root_count(*coeffs, p) == naive


def test_pure_python_env_selection():
    out = subprocess.run(
        [sys.executable, "-c", "from lcongr import kernels; print(kernels.BACKEND)"],
        env={"LCONGR_PURE_PY": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
