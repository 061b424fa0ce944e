"""Dirichlet characters used by the toolkit.

Two families cover everything the congruence machinery needs:

* prime conductor p and prime order q | p-1, realized through a discrete
  logarithm table base the least primitive root g of p, normalized so the
  character with twist exponent k sends g to zeta_q^k;
* even primitive quadratic characters of conductor p1*p2 (distinct odd
  primes, p1 = p2 mod 4) or conductor 8, via Jacobi symbols.

Values are returned exactly as CycNumber elements; complex values always
use the embedding zeta_q = exp(2*pi*i/q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .cyclotomic import CycNumber


class NoSuchCharacter(ValueError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Least primitive root mod an odd prime p."""
    fac = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fac):
            return g
    raise ValueError(f"{p} has no primitive root (not prime?)")


@lru_cache(maxsize=None)
def _dlog_table(p: int) -> tuple:
    g = primitive_root(p)
    table = [0] * p
    v = 1
    for i in range(p - 1):
        table[v] = i
        v = v * g % p
    return tuple(table)


@dataclass(frozen=True)
class DirichletCharacter:
    """Order-q character of prime conductor p with chi(g) = zeta_q^k."""

    conductor: int
    order: int
    twist_exponent: int

    def __post_init__(self):
        p, q, k = self.conductor, self.order, self.twist_exponent
        if not (is_prime(p) and p % 2 == 1):
            raise NoSuchCharacter(f"conductor {p} is not an odd prime")
        if not is_prime(q) or (p - 1) % q != 0:
            raise NoSuchCharacter(f"no order-{q} character mod {p}")
        if not 1 <= k <= q - 1:
            raise NoSuchCharacter(f"twist exponent {k} out of range 1..{q - 1}")

    @property
    def generator(self) -> int:
        return primitive_root(self.conductor)

    def exp_of(self, a: int):
        """Exponent e with chi(a) = zeta_q^e, or None when p | a."""
        a %= self.conductor
        if a == 0:
            return None
        return (self.twist_exponent * _dlog_table(self.conductor)[a]) % self.order

    def __call__(self, a: int) -> CycNumber:
        e = self.exp_of(a)
        if e is None:
            return CycNumber.zero(self.order)
        return CycNumber.zeta_pow(self.order, e)

    def cvalue(self, a: int, embedding: int = 1) -> complex:
        """chi(a) embedded at zeta_q -> exp(2*pi*i*embedding/q)."""
        e = self.exp_of(a)
        if e is None:
            return 0j
        return cmath.exp(2j * cmath.pi * ((embedding * e) % self.order) / self.order)

    def conjugate_by(self, a: int) -> "DirichletCharacter":
        """sigma_a composed with chi; a must be a unit mod q."""
        q = self.order
        if math.gcd(a, q) != 1:
            raise ValueError(f"{a} is not a unit mod {q}")
        return DirichletCharacter(self.conductor, q, (a * self.twist_exponent) % q)

    def bar(self) -> "DirichletCharacter":
        return self.conjugate_by(self.order - 1)

    def gauss_sum(self) -> complex:
        p = self.conductor
        return sum(self.cvalue(a) * cmath.exp(2j * cmath.pi * a / p) for a in range(1, p))

    @property
    def label(self) -> str:
        g = self.generator
        return f"{self.conductor}:{self.order}:chi({g})=z{self.twist_exponent}"

    def __repr__(self):
        return f"DirichletCharacter({self.label})"


def characters(p: int, q: int) -> list[DirichletCharacter]:
    """All q-1 characters of conductor p and order q, closed under conjugation."""
    if not is_prime(q) or not is_prime(p) or (p - 1) % q != 0:
        raise NoSuchCharacter(f"no order-{q} characters of conductor {p}")
    return [DirichletCharacter(p, q, k) for k in range(1, q)]


def by_value(p: int, q: int, at: int, exponent: int) -> DirichletCharacter:
    """The character with chi(at) = zeta_q^exponent (unique when it exists)."""
    for chi in characters(p, q):
        if chi.exp_of(at) == exponent % q:
            return chi
    raise NoSuchCharacter(f"no order-{q} character mod {p} with chi({at})=z^{exponent}")


def parse(spec: str) -> DirichletCharacter:
    """Parse 'p:q:chi(a)=ze' strings, e.g. '7:3:chi(3)=z2'."""
    try:
        p_s, q_s, val = spec.split(":")
        head, _, tail = val.partition("=")
        at = int(head[len("chi("):-1])
        e = int(tail.lstrip("z"))
        return by_value(int(p_s), int(q_s), at, e)
    except (ValueError, IndexError) as exc:
        raise NoSuchCharacter(f"cannot parse character spec {spec!r}: {exc}") from None


@dataclass(frozen=True)
class QuadraticCharacter:
    """Even primitive quadratic character of conductor p1*p2 or 8.

    Realized as the Jacobi symbol (a/n); evenness requires p1 = p2 mod 4
    for the two-prime case and holds automatically for conductor 8 (where
    the symbol is (2/a)).
    """

    conductor: int
    order: int = field(default=2, init=False)

    def __post_init__(self):
        n = self.conductor
        if n == 8:
            return
        ps = _odd_prime_pair(n)
        if ps is None:
            raise NoSuchCharacter(f"conductor {n} is not 8 or a product of two distinct odd primes")
        p1, p2 = ps
        if p1 % 4 != p2 % 4:
            raise NoSuchCharacter(f"(a/{n}) is odd since {p1} != {p2} mod 4")

    def sign_of(self, a: int) -> int:
        n = self.conductor
        if math.gcd(a, n) != 1:
            return 0
        if n == 8:
            return 1 if a % 8 in (1, 7) else -1
        return _jacobi(a, n)

    def exp_of(self, a: int):
        s = self.sign_of(a)
        if s == 0:
            return None
        return 0 if s == 1 else 1

    def __call__(self, a: int) -> CycNumber:
        return CycNumber.rational(2, self.sign_of(a))

    def cvalue(self, a: int, embedding: int = 1) -> complex:
        return complex(self.sign_of(a))

    def conjugate_by(self, a: int) -> "QuadraticCharacter":
        return self

    def bar(self) -> "QuadraticCharacter":
        return self

    def gauss_sum(self) -> complex:
        n = self.conductor
        return sum(self.cvalue(a) * cmath.exp(2j * cmath.pi * a / n) for a in range(1, n))

    @property
    def label(self) -> str:
        return f"{self.conductor}:2:jacobi"

    def __repr__(self):
        return f"QuadraticCharacter({self.conductor})"


def _odd_prime_pair(n: int):
    for p in range(3, int(n ** 0.5) + 1, 2):
        if n % p == 0:
            qq = n // p
            if p != qq and is_prime(p) and is_prime(qq) and qq % 2 == 1:
                return p, qq
            return None
    return None


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
