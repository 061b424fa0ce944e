"""Residual densities of twisted L-values: predictions and prime sweeps.

The sweep never evaluates a twisted L-function: the residue of the twisted
value mod <1 - zeta_q> is -Lratio * #E(F_p) for prime conductor p, so one
point count per prime suffices.  Predictions dispatch on the q-adic
valuation of the L-ratio and, when needed, on the bundled Galois-image
tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels, lseries, matgrp
from .curves import CurveData, sieve_primes, torsion_order
from .matgrp import DensityProfile

TWELVE_TRIPLES = [
    ("1", "0", "0"), ("3/8", "3/8", "1/4"), ("3/8", "1/4", "3/8"),
    ("1/2", "1/2", "0"), ("1/2", "0", "1/2"), ("1/8", "3/4", "1/8"),
    ("1/8", "1/8", "3/4"), ("1/4", "1/2", "1/4"), ("1/4", "1/4", "1/2"),
    ("5/9", "2/9", "2/9"), ("1/3", "2/3", "0"), ("1/3", "0", "2/3"),
]


class MissingImageData(ValueError):
    pass


def admissible_triples(q: int = 3) -> set:
    return {tuple(Fraction(v) for v in t) for t in TWELVE_TRIPLES}


def _point_profile(values: dict, q: int) -> DensityProfile:
    return DensityProfile(q, {lam: values.get(lam, Fraction(0)) for lam in range(q)})


def delta_at_zero(q: int) -> DensityProfile:
    return _point_profile({0: Fraction(1)}, q)


def ord_q(x: Fraction, q: int) -> int:
    num, den, e = x.numerator, x.denominator, 0
    while num % q == 0:
        num //= q
        e += 1
    while den % q == 0:
        den //= q
        e -= 1
    return e


def predict(curve: CurveData, q: int = 3, image_label: Optional[str] = None,
            ) -> DensityProfile:
    """Predicted residue distribution of the twisted values mod <1 - zeta_q>.

    Dispatch: positive valuation of the L-ratio, or q | torsion, force the
    point mass at 0; valuation 0 uses the level-q image; valuation -1 the
    level-q^2 image.  Image generators come from the bundled tables via the
    curve's image label (`galois3`), except that the surjective case can be
    requested for any q.
    """
    lr = lseries.lratio(curve)
    v = ord_q(lr, q)
    if v > 0:
        return delta_at_zero(q)
    if v == 0 and torsion_order(curve) % q == 0:
        return delta_at_zero(q)
    if v < -1:
        raise ValueError(f"{curve.label}: ord_{q}(Lratio) = {v} < -1")
    label = image_label or curve.galois3
    if q != 3:
        if label not in (None, "GL3"):
            raise MissingImageData(f"only surjective images supported for q = {q}")
        return matgrp.closed_form_density(q, lr)
    if label is None:
        raise MissingImageData(f"{curve.label}: no mod-3 image label in dataset")
    row, which = _table_row(label)
    level = row["level"]
    group = matgrp.generate([tuple(g) for g in row["generators"]], level)
    m = 1 - v
    target = 3 ** m
    slice_ = matgrp.det1_slice(matgrp.at_modulus(group, target))
    if which == 1 and m != 1:
        raise MissingImageData(f"{curve.label}: level-3 image but ord_3 = {v}")
    if which == 2 and m != 2:
        raise MissingImageData(f"{curve.label}: 3-adic image but ord_3 = {v}")
    return matgrp.density_profile(slice_, lr, m)


def _table_row(label: str):
    tables = matgrp.load_tables()
    for row in tables["table1"]:
        if row["label"] == label:
            return row, 1
    for row in tables["table2"]:
        if row["label"] == label:
            return row, 2
    raise MissingImageData(f"no bundled image row named {label}")


@dataclass
class SweepResult:
    curve: str
    q: int
    limit: int
    counts: dict
    eligible: int
    empirical: DensityProfile
    predicted: Optional[DensityProfile]
    max_abs_deviation: Optional[float]


def residue_for_count(npoints: int, lr: Fraction, q: int) -> int:
    """lambda with L(E,chi) = lambda mod <1-zeta_q>, from #E(F_p) alone.

    For ord_q(lr) = -1 the congruence lives at level q^2 and q | #E(F_p)
    always (the symbol sum clears the denominator), so the residue comes
    from #E(F_p)/q against the q-unit q*lr.
    """
    v = ord_q(lr, q)
    if v >= 0:
        unit = lr
        count = npoints
    elif v == -1:
        if npoints % q:
            raise ValueError(f"point count {npoints} not divisible by {q} "
                             f"though ord_q(Lratio) = -1")
        unit = lr * q
        count = npoints // q
    else:
        raise ValueError(f"ord_q(Lratio) = {v} < -1")
    num, den = unit.numerator, unit.denominator
    return (-count * num * pow(den, -1, q)) % q


def sweep(curve: CurveData, q: int, limit: int,
          predicted: Optional[DensityProfile] = None,
          image_label: Optional[str] = None) -> SweepResult:
    """Tally residues over prime conductors p < limit, p = 1 mod q, p good."""
    lr = lseries.lratio(curve)
    b2, b4, b6, _ = curve.b_invariants
    ps = [p for p in sieve_primes(limit - 1)
          if p % q == 1 and curve.conductor % p != 0 and curve.is_good(p)]
    traces = kernels.ap_sweep(b2, b4, b6, ps)
    counts: dict = {lam: 0 for lam in range(q)}
    for p, tr in zip(ps, traces):
        counts[residue_for_count(p + 1 - int(tr), lr, q)] += 1
    eligible = len(ps)
    empirical = _point_profile(
        {lam: Fraction(c, eligible) for lam, c in counts.items()}, q)
    if predicted is None:
        try:
            predicted = predict(curve, q, image_label)
        except MissingImageData:
            predicted = None
    dev = None
    if predicted is not None:
        dev = max(abs(float(empirical.values[lam] - predicted.values[lam]))
                  for lam in range(q))
    return SweepResult(curve.label, q, limit, counts, eligible, empirical,
                       predicted, dev)
