"""Exact arithmetic in Q(zeta_q) for prime q.

Elements are stored as rational coordinate vectors in the power basis
1, zeta, ..., zeta^(q-2), reduced modulo the q-th cyclotomic polynomial,
so equality of values is equality of coefficient tuples.  The complex
embeddings fix zeta_q = exp(2*pi*i/q) once and for all; every numeric
comparison in the toolkit goes through that single embedding.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Mapping


class OrderMismatch(ValueError):
    pass


class NotLambdaIntegral(ValueError):
    """Denominator divisible by q, so reduction mod <1 - zeta_q> is undefined."""


class NotReal(ValueError):
    pass


class RecognitionFailed(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


class CycNumber:
    """Element of Q(zeta_q), q prime (q = 2 is allowed and means Q itself)."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs):
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) != q - 1:
            raise ValueError(f"need {q - 1} coefficients for order {q}, got {len(coeffs)}")
        self.q = q
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, q: int) -> "CycNumber":
        return cls(q, [0] * (q - 1))

    @classmethod
    def one(cls, q: int) -> "CycNumber":
        return cls.rational(q, 1)

    @classmethod
    def rational(cls, q: int, r) -> "CycNumber":
        c = [Fraction(0)] * (q - 1)
        c[0] = _as_fraction(r)
        return cls(q, c)

    @classmethod
    def zeta_pow(cls, q: int, k: int) -> "CycNumber":
        """zeta_q^k as a basis vector (k = q-1 folds back via Phi_q)."""
        k %= q
        c = [Fraction(0)] * (q - 1)
        if k < q - 1:
            c[k] = Fraction(1)
        else:
            c = [Fraction(-1)] * (q - 1)
        return cls(q, c)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "CycNumber"):
        if self.q != other.q:
            raise OrderMismatch(f"orders differ: {self.q} vs {other.q}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(self.q, other)
        self._check(other)
        return CycNumber(self.q, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.q, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(self.q, other)
        self._check(other)
        return CycNumber(self.q, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.q, [a * other for a in self.coeffs])
        self._check(other)
        q = self.q
        # accumulate with exponents mod q, then eliminate zeta^(q-1)
        acc = [Fraction(0)] * q
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                acc[(i + j) % q] += a * b
        top = acc[q - 1]
        return CycNumber(q, [acc[i] - top for i in range(q - 1)])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNumber.one(self.q)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "CycNumber":
        """1/x via the norm: x^(-1) = (prod of other conjugates) / Nm(x)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        prod = CycNumber.one(self.q)
        for a in range(2, self.q):
            prod = prod * self.conjugate(a)
        n = (self * prod).as_rational()  # = norm
        return prod * Fraction(n.denominator, n.numerator)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(self.q, other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        """Fixed by complex conjugation (sigma_{-1}), checked on coefficients."""
        return self == self.conjugate(self.q - 1)

    # -- Galois action and invariants ---------------------------------------

    def conjugate(self, a: int) -> "CycNumber":
        """Apply sigma_a : zeta -> zeta^a for gcd(a, q) = 1."""
        q = self.q
        if math.gcd(a, q) != 1:
            raise ValueError(f"sigma_{a} is not a unit mod {q}")
        out = CycNumber.zero(q)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                out = out + CycNumber.zeta_pow(q, (a * i) % q) * c
        return out

    def norm(self) -> Fraction:
        """Product of all q-1 conjugates, an exact rational."""
        prod = CycNumber.one(self.q)
        for a in range(1, self.q):
            prod = prod * self.conjugate(a)
        return prod.as_rational()

    def norm_plus(self) -> Fraction:
        """Norm from the real subfield Q(zeta_q)^+ to Q; input must be real."""
        if not self.is_real():
            raise NotReal(f"{self} is not fixed by complex conjugation")
        q = self.q
        if q == 2:
            return self.as_rational()
        # one representative per {a, -a} coset
        prod = CycNumber.one(q)
        for a in range(1, (q - 1) // 2 + 1):
            prod = prod * self.conjugate(a)
        return prod.as_rational()

    def reduce_mod_lambda(self) -> int:
        """Image in F_q under zeta -> 1, inverting denominators prime to q."""
        s = sum(self.coeffs, Fraction(0))
        if s.denominator % self.q == 0:
            raise NotLambdaIntegral(f"denominator {s.denominator} divisible by {self.q}")
        inv = pow(s.denominator, -1, self.q)
        return (s.numerator * inv) % self.q

    def embed(self, a: int = 1) -> complex:
        """Complex value under zeta -> exp(2*pi*i*a/q)."""
        q = self.q
        if math.gcd(a, q) != 1:
            raise ValueError(f"embedding index {a} not a unit mod {q}")
        z = 0j
        for i, c in enumerate(self.coeffs):
            if c != 0:
                z += float(c) * cmath.exp(2j * cmath.pi * ((a * i) % q) / q)
        return z

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return f"CycNumber(q={self.q}, {self.as_text()!r})"

    def as_text(self) -> str:
        """Textual form like '-2*z^3-3*z^2-2*z' with z = zeta_q."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{c}*{mon}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    @classmethod
    def from_text(cls, q: int, text: str) -> "CycNumber":
        """Parse the as_text format (whitespace ignored)."""
        s = text.replace(" ", "").replace("-", "+-")
        if s.startswith("+"):
            s = s[1:]
        out = cls.zero(q)
        for term in s.split("+"):
            if not term:
                continue
            neg = term.startswith("-")
            if neg:
                term = term[1:]
            if "z" in term:
                head, _, tail = term.partition("z")
                coef = Fraction(head.rstrip("*")) if head.rstrip("*") else Fraction(1)
                k = int(tail[1:]) if tail.startswith("^") else (1 if not tail else int(tail))
                piece = cls.zeta_pow(q, k) * coef
            else:
                piece = cls.rational(q, Fraction(term))
            out = out - piece if neg else out + piece
        return out


def recognize(q: int, values: Mapping[int, complex], tol: float = 1e-6,
              max_denominator: int = 120) -> CycNumber:
    """Solve for x in Q(zeta_q) from its conjugate embeddings.

    ``values[a]`` is the purported value of x under zeta -> exp(2*pi*i*a/q)
    for every unit a mod q.  The (q-1) x (q-1) linear system in the power
    basis is solved by least squares over the stacked real/imaginary parts,
    each coefficient is rounded to the nearest rational with denominator at
    most ``max_denominator``, and the round trip must land within ``tol``.
    """
    import numpy as np

    units = sorted(a % q for a in values)
    if units != [a for a in range(1, q) if math.gcd(a, q) == 1]:
        raise RecognitionFailed(f"need one embedding per unit mod {q}, got {units}")
    A = np.array([[cmath.exp(2j * cmath.pi * ((a * j) % q) / q) for j in range(q - 1)]
                  for a in units])
    b = np.array([complex(values[a]) for a in units])
    M = np.vstack([A.real, A.imag])
    rhs = np.concatenate([b.real, b.imag])
    sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    coeffs = [Fraction(float(c)).limit_denominator(max_denominator) for c in sol]
    x = CycNumber(q, coeffs)
    residual = max(abs(x.embed(a) - complex(values[a])) for a in units)
    if residual >= tol:
        raise RecognitionFailed(f"round-trip residual {residual:.3g} >= tol {tol:.3g}")
    return x
