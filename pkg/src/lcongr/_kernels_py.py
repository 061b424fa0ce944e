"""NumPy fallback implementations of the point-counting kernels.

Same contracts as the compiled extension: a_p for odd good primes via one
quadratic-residue table and one Legendre sum per prime, and root counting
for an integer quartic mod p.  All arithmetic stays below 2^63 because the
Horner steps reduce mod p at every multiplication.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _chi_table(p: int) -> np.ndarray:
    """chi[v] = Legendre symbol (v/p) as int8, chi[0] = 0."""
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int8)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def ap_single(b2: int, b4: int, b6: int, p: int) -> int:
    """Trace of Frobenius at an odd good prime, from y^2 = 4x^3+b2x^2+2b4x+b6."""
    x = np.arange(p, dtype=np.int64)
    f = (4 * x + b2 % p) % p
    f = (f * x + (2 * b4) % p) % p
    f = (f * x + b6 % p) % p
    chi = _chi_table(p)
    return -int(np.sum(chi[f], dtype=np.int64))


def ap_sweep(b2: int, b4: int, b6: int, primes) -> list[int]:
    return [ap_single(b2, b4, b6, int(p)) for p in primes]


def quartic_root_count(c4: int, c3: int, c2: int, c1: int, c0: int, p: int) -> int:
    """Number of x in F_p with c4 x^4 + ... + c0 = 0."""
    x = np.arange(p, dtype=np.int64)
    f = np.full(p, c4 % p, dtype=np.int64)
    for c in (c3, c2, c1, c0):
        f = (f * x + c % p) % p
    return int(np.count_nonzero(f == 0))


def quartic_root_count_sweep(coeffs, primes) -> list[int]:
    c4, c3, c2, c1, c0 = coeffs
    return [quartic_root_count(c4, c3, c2, c1, c0, int(p)) for p in primes]
