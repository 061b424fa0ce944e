"""Matrix groups over Z/q^m Z and the trace-determinant statistics behind
residual densities.

Matrices are row-major 4-tuples (a, b, c, d).  A generated subgroup carries
a census of (trace, det) pairs; everything downstream (density profiles,
table verification) reads only the census or the element set.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

Mat = tuple[int, int, int, int]

IDENTITY: Mat = (1, 0, 0, 1)


class NotInvertible(ValueError):
    pass


class NotUnit(ValueError):
    pass


class Mismatch(ValueError):
    pass


def mat_mul(x: Mat, y: Mat, m: int) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % m, (a * f + b * h) % m,
            (c * e + d * g) % m, (c * f + d * h) % m)


def mat_det(x: Mat, m: int) -> int:
    return (x[0] * x[3] - x[1] * x[2]) % m


def mat_trace(x: Mat, m: int) -> int:
    return (x[0] + x[3]) % m


def _base_prime(modulus: int) -> int:
    p = 2
    while modulus % p != 0:
        p += 1
    return p


@dataclass
class SubgroupCensus:
    modulus: int
    generators: list[Mat]
    elements: frozenset[Mat]
    census: Counter  # (trace, det) -> count

    def __len__(self):
        return len(self.elements)

    @property
    def base_prime(self) -> int:
        return _base_prime(self.modulus)


def _census_of(elements, modulus) -> Counter:
    c: Counter = Counter()
    for x in elements:
        c[(mat_trace(x, modulus), mat_det(x, modulus))] += 1
    return c


def generate(generators, modulus: int) -> SubgroupCensus:
    """Breadth-first closure of the generators (deterministic order)."""
    gens = [tuple(int(v) % modulus for v in g) for g in generators]
    q = _base_prime(modulus)
    for g in gens:
        if mat_det(g, modulus) % q == 0:
            raise NotInvertible(f"{g} is singular mod {q}")
    seen = {IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(x, g, modulus)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    elements = frozenset(seen)
    return SubgroupCensus(modulus, gens, elements, _census_of(elements, modulus))


def det1_slice(group: SubgroupCensus) -> SubgroupCensus:
    """Elements with det = 1 mod q (q the base prime of the modulus)."""
    q = group.base_prime
    elements = frozenset(x for x in group.elements if mat_det(x, group.modulus) % q == 1)
    return SubgroupCensus(group.modulus, group.generators, elements,
                          _census_of(elements, group.modulus))


def lift_to_modulus(group: SubgroupCensus, target: int) -> SubgroupCensus:
    """Full preimage under reduction GL(target) ->> GL(modulus)."""
    m = group.modulus
    if target % m != 0 or _base_prime(target) != group.base_prime:
        raise ValueError(f"cannot lift modulus {m} to {target}")
    k = target // m
    offsets = range(0, target, m)
    lifted = set()
    for (a, b, c, d) in group.elements:
        for da in offsets:
            for db in offsets:
                for dc in offsets:
                    for dd in offsets:
                        lifted.add(((a + da) % target, (b + db) % target,
                                    (c + dc) % target, (d + dd) % target))
    elements = frozenset(lifted)
    assert len(elements) == len(group.elements) * k ** 4
    return SubgroupCensus(target, group.generators, elements, _census_of(elements, target))


def reduce_to_modulus(group: SubgroupCensus, target: int) -> SubgroupCensus:
    if group.modulus % target != 0:
        raise ValueError(f"cannot reduce modulus {group.modulus} to {target}")
    elements = frozenset(tuple(v % target for v in x) for x in group.elements)
    gens = [tuple(v % target for v in g) for g in group.generators]
    return SubgroupCensus(target, gens, elements, _census_of(elements, target))


def at_modulus(group: SubgroupCensus, target: int) -> SubgroupCensus:
    if target == group.modulus:
        return group
    if target % group.modulus == 0:
        return lift_to_modulus(group, target)
    return reduce_to_modulus(group, target)


@dataclass
class DensityProfile:
    order: int
    values: dict  # lambda in F_q -> Fraction

    def __post_init__(self):
        total = sum(self.values.values(), Fraction(0))
        if total != 1 or any(v < 0 for v in self.values.values()):
            raise ValueError(f"not a probability profile: {self.values}")

    def triple(self) -> tuple:
        return tuple(self.values[i] for i in range(self.order))

    def __eq__(self, other):
        if isinstance(other, DensityProfile):
            return self.order == other.order and self.values == other.values
        return NotImplemented


def trace_det_offset_counts(group: SubgroupCensus) -> Counter:
    """Counts of s = 1 + det - tr mod the group modulus over the census."""
    out: Counter = Counter()
    for (tr, det), n in group.census.items():
        out[(1 + det - tr) % group.modulus] += n
    return out


def density_profile(group: SubgroupCensus, lratio: Fraction, m: int) -> DensityProfile:
    """Residue distribution of -lratio * (1 + det - tr) over the det-1 slice.

    ``group`` must already be the det = 1 mod q slice at level q^m, and
    ``lratio`` the algebraic L-value, a rational with ord_q = 1 - m.
    """
    q = group.base_prime
    if group.modulus != q ** m:
        raise ValueError(f"group lives at modulus {group.modulus}, expected q^{m}")
    num, den = lratio.numerator, lratio.denominator
    qm = q ** m
    # -lambda / lratio mod q^m, with the q-power in the denominator folded in
    qpart = 1
    while den % q == 0:
        den //= q
        qpart *= q
    if qpart != q ** (m - 1) or num % q == 0:
        raise NotUnit(f"lratio {lratio} does not have q-adic valuation {1 - m}")
    counts = trace_det_offset_counts(group)
    total = len(group)
    values = {}
    for lam in range(q):
        target = (-lam * qpart * den * pow(num, -1, qm)) % qm
        values[lam] = Fraction(counts.get(target, 0), total)
    return DensityProfile(q, values)


def legendre(a: int, q: int) -> int:
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def closed_form_density(q: int, lratio: Fraction) -> DensityProfile:
    """Surjective-image shortcut: densities from two Legendre symbols."""
    if lratio.numerator % q == 0 or lratio.denominator % q == 0:
        raise NotUnit(f"lratio {lratio} is not a q-unit")
    inv = (lratio.denominator * pow(lratio.numerator, -1, q)) % q
    values = {}
    for lam in range(q):
        t = (lam * inv) % q
        sym = legendre(t, q) * legendre(t + 4, q)
        if sym == 1:
            values[lam] = Fraction(1, q - 1)
        elif sym == 0:
            values[lam] = Fraction(q, q * q - 1)
        else:
            values[lam] = Fraction(1, q + 1)
    return DensityProfile(q, values)


# -- SL(2, q) conjugacy classes ------------------------------------------------

@dataclass
class ConjugacyClass:
    representative: Mat
    size: int
    order: int
    trace: int


def sl2_elements(q: int) -> list[Mat]:
    out = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if (a * d - b * c) % q == 1:
                        out.append((a, b, c, d))
    return out


def _element_order(x: Mat, q: int) -> int:
    y = x
    n = 1
    while y != IDENTITY:
        y = mat_mul(y, x, q)
        n += 1
    return n


def sl2_conjugacy_table(q: int) -> list[ConjugacyClass]:
    """Brute-force orbit partition of SL(2, q) under conjugation."""
    if q > 13:
        raise ValueError("desk scale stops at q = 13")
    elements = sl2_elements(q)
    inverses = {}
    for x in elements:
        a, b, c, d = x
        inverses[x] = (d % q, -b % q, -c % q, a % q)
    unclassified = set(elements)
    classes = []
    for x in elements:
        if x not in unclassified:
            continue
        orbit = {mat_mul(mat_mul(g, x, q), inverses[g], q) for g in elements}
        unclassified -= orbit
        classes.append(ConjugacyClass(min(orbit), len(orbit),
                                      _element_order(x, q), mat_trace(x, q)))
    return sorted(classes, key=lambda c: (c.trace, c.size, c.representative))


def expected_sl2_classes(q: int) -> list[tuple[int, int, int]]:
    """(trace, size, order) triples predicted by the trace classification."""
    out = []
    half = (q * q - 1) // 2
    for z_symbol, size in ((0, 1), (1, half), (-1, half)):
        out.append((2 % q, size, 1 if z_symbol == 0 else q))
        out.append(((q - 2) % q, size, 2 if z_symbol == 0 else 2 * q))
    # split semisimple: diag(x, 1/x)
    seen = set()
    for x in range(2, q - 1):
        xinv = pow(x, -1, q)
        if x in seen or xinv in seen:
            continue
        seen.update({x, xinv})
        out.append(((x + xinv) % q, q * (q + 1), _mult_order(x, q)))
    # nonsplit: norm-1 elements of F_{q^2} represented in F_q[X]/(X^2 - r)
    r = next(z for z in range(2, q) if legendre(z, q) == -1)
    torus = [(a, b) for a in range(q) for b in range(q)
             if (a * a - r * b * b) % q == 1]
    seen2 = set()
    for (a, b) in torus:
        if b == 0:
            continue  # +-1, already in the unipotent families
        if (a, b) in seen2:
            continue
        seen2.update({(a, b), (a, (-b) % q)})
        out.append(((2 * a) % q, q * (q - 1), _torus_order((a, b), r, q)))
    return sorted(out)


def _mult_order(x: int, q: int) -> int:
    n, y = 1, x % q
    while y != 1:
        y = y * x % q
        n += 1
    return n


def _torus_order(xi, r, q) -> int:
    one = (1, 0)
    y = xi
    n = 1
    while y != one:
        a, b = y
        c, d = xi
        y = ((a * c + r * b * d) % q, (a * d + b * c) % q)
        n += 1
    return n


# -- verification of the bundled image tables ---------------------------------

def load_tables() -> dict:
    with resources.files("lcongr.data").joinpath("galois_tables.json").open() as fh:
        return json.load(fh)


def _printed_triple(row) -> tuple:
    return tuple(Fraction(v) for v in row["delta"])


def slice_delta_triple(slice9: SubgroupCensus) -> tuple:
    """(P(s=0), P(s=q), P(s=2q)) over a det-1 slice at level q^2, or the
    (P(s=0), P(s=1), P(s=2)) analogue at level q."""
    q = slice9.base_prime
    counts = trace_det_offset_counts(slice9)
    total = len(slice9)
    step = slice9.modulus // q
    return tuple(Fraction(counts.get((k * step) % slice9.modulus, 0), total)
                 for k in range(q))


def verify_table(which: int, rows=None) -> list[dict]:
    """Recompute one of the bundled image tables and compare per row."""
    data = load_tables()
    rows = rows if rows is not None else data[f"table{which}"]
    reports = []
    for row in rows:
        group = generate([tuple(g) for g in row["generators"]], row["level"])
        if which == 1:
            slice_ = det1_slice(group)
            ok_elements = True
            if row["slice_elements"] is not None:
                ok_elements = slice_.elements == {tuple(m) for m in row["slice_elements"]}
            else:
                ok_elements = slice_.elements == frozenset(sl2_elements(3))
            ok_size = len(slice_) == row["slice_size"]
            ok_delta = slice_delta_triple(slice_) == _printed_triple(row)
            report = {"label": row["label"], "slice_ok": ok_elements,
                      "size_ok": ok_size, "delta_ok": ok_delta}
        else:
            image9 = at_modulus(group, 9)
            slice9 = det1_slice(image9)
            ok_size = len(slice9) == row["g9_size"]
            ok_delta = slice_delta_triple(slice9) == _printed_triple(row)
            offsets = trace_det_offset_counts(image9)
            if row["witness"] is not None:
                w = tuple(row["witness"])
                ok_witness = (w in image9.elements
                              and (1 + mat_det(w, 9) - mat_trace(w, 9)) % 9 == 3)
            else:
                ok_witness = offsets.get(3, 0) == 0
            report = {"label": row["label"], "size_ok": ok_size,
                      "delta_ok": ok_delta, "witness_ok": ok_witness}
        report["ok"] = all(v for k, v in report.items() if k != "label")
        reports.append(report)
    return reports
