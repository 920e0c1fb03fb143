"""
Exact factored-integer arithmetic and primitive prime divisors.

Every group order in the package is a FactoredInteger. Values of the form
q^i - 1 are never factored directly: they are split into cyclotomic values
Phi_d(q), whose prime factors other than those of d are all 1 mod d, which
keeps trial division cheap even for q = 32 and i = 30.
"""

from __future__ import annotations

import math
from functools import lru_cache, reduce, total_ordering
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from src.errors import NonDivisible, NotPrime


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic primality by trial division up to the square root."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def _add(factors: Dict[int, int], p: int, e: int = 1):
    factors[p] = factors.get(p, 0) + e


def _trial_factor(n: int) -> Dict[int, int]:
    """Factor n >= 1 by trial division with a 6k +/- 1 wheel."""
    factors: Dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            _add(factors, p)
            n //= p
    i = 5
    while i * i <= n:
        for p in (i, i + 2):
            while n % p == 0:
                _add(factors, p)
                n //= p
        i += 6
    if n > 1:
        _add(factors, n)
    return factors


def divisors(n: int) -> List[int]:
    """All positive divisors of n in increasing order."""
    result = [1]
    for p, e in _trial_factor(n).items():
        result = [d * p ** k for d in result for k in range(e + 1)]
    return sorted(result)


def prime_power(q: int) -> Tuple[int, int]:
    """Return (p, a) with q = p^a, or raise NotPrime."""
    if not isinstance(q, int) or q < 2:
        raise NotPrime(f"{q!r} is not a prime power", {'value': q})
    factors = _trial_factor(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power", {'value': q})
    (p, a), = factors.items()
    return p, a


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
        return True
    except NotPrime:
        return False


def ceil_root(x: int, k: int) -> int:
    """Smallest integer y with y^k >= x, for x >= 0."""
    if x <= 1:
        return x
    if k == 2:
        y = math.isqrt(x)
        return y if y * y == x else y + 1
    lo, hi = 1, 1 << (x.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def exact_root(q: int, k: int) -> Optional[int]:
    """q0 >= 2 with q0^k == q, or None."""
    q0 = ceil_root(q, k)
    return q0 if q0 >= 2 and q0 ** k == q else None


@total_ordering
class FactoredInteger:
    """A positive integer stored as a prime -> exponent map.

    Equality is equality of maps; ordering and comparisons with plain ints
    go through the exact integer value.
    """

    __slots__ = ('_factors', '_value')

    def __init__(self, factors: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for p, e in (factors or {}).items():
            if not isinstance(p, int) or not isinstance(e, int):
                raise TypeError(f"factor entries must be integers, got {p!r}: {e!r}")
            if e < 0:
                raise ValueError(f"negative exponent {e} for prime {p}")
            if e == 0:
                continue
            if not is_prime(p):
                raise NotPrime(f"{p} is not prime", {'value': p})
            clean[p] = e
        self._factors = dict(sorted(clean.items()))
        self._value: Optional[int] = None

    @classmethod
    def _trusted(cls, factors: Mapping[int, int]) -> 'FactoredInteger':
        """Build from factors already certified by this module."""
        obj = cls.__new__(cls)
        obj._factors = dict(sorted((p, e) for p, e in factors.items() if e))
        obj._value = None
        return obj

    @classmethod
    def from_int(cls, n: int) -> 'FactoredInteger':
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"FactoredInteger needs a positive integer, got {n!r}")
        return cls._trusted(_trial_factor(n))

    @classmethod
    def one(cls) -> 'FactoredInteger':
        return cls._trusted({})

    @classmethod
    def power_of(cls, p: int, e: int) -> 'FactoredInteger':
        """p^e for a prime p."""
        return cls({p: e})

    @staticmethod
    def coerce(value: Union[int, 'FactoredInteger']) -> 'FactoredInteger':
        if isinstance(value, FactoredInteger):
            return value
        return FactoredInteger.from_int(value)

    @property
    def factors(self) -> Dict[int, int]:
        return dict(self._factors)

    @property
    def value(self) -> int:
        if self._value is None:
            self._value = reduce(lambda acc, pe: acc * pe[0] ** pe[1], self._factors.items(), 1)
        return self._value

    def __int__(self) -> int:
        return self.value

    def primes(self) -> List[int]:
        return list(self._factors)

    def exponent(self, p: int) -> int:
        return self._factors.get(p, 0)

    def divides(self, other: Union[int, 'FactoredInteger']) -> bool:
        other = FactoredInteger.coerce(other)
        return all(other.exponent(p) >= e for p, e in self._factors.items())

    def __mul__(self, other: Union[int, 'FactoredInteger']) -> 'FactoredInteger':
        other = FactoredInteger.coerce(other)
        merged = dict(self._factors)
        for p, e in other._factors.items():
            _add(merged, p, e)
        return FactoredInteger._trusted(merged)

    __rmul__ = __mul__

    def __truediv__(self, other: Union[int, 'FactoredInteger']) -> 'FactoredInteger':
        """Exact division; raises NonDivisible."""
        other = FactoredInteger.coerce(other)
        if not other.divides(self):
            raise NonDivisible(f"{other} does not divide {self}",
                               {'dividend': str(self), 'divisor': str(other)})
        result = dict(self._factors)
        for p, e in other._factors.items():
            result[p] -= e
        return FactoredInteger._trusted(result)

    def __pow__(self, k: int) -> 'FactoredInteger':
        if k < 0:
            raise ValueError("negative powers are not integers")
        return FactoredInteger._trusted({p: e * k for p, e in self._factors.items()})

    def part(self, p: int) -> 'FactoredInteger':
        """The p-part p^e of this integer."""
        return FactoredInteger._trusted({p: self.exponent(p)}) if self.exponent(p) else FactoredInteger.one()

    def coprime_part(self, p: int) -> 'FactoredInteger':
        """The p'-part: this integer with every factor p removed."""
        return FactoredInteger._trusted({r: e for r, e in self._factors.items() if r != p})

    def gcd(self, other: Union[int, 'FactoredInteger']) -> 'FactoredInteger':
        other = FactoredInteger.coerce(other)
        return FactoredInteger._trusted(
            {p: min(e, other.exponent(p)) for p, e in self._factors.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, FactoredInteger):
            return self._factors == other._factors
        if isinstance(other, int):
            return other >= 1 and self.value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, FactoredInteger):
            return self.value < other.value
        if isinstance(other, int):
            return self.value < other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def to_list(self) -> List[List[int]]:
        """[[p, e], ...] for JSON reports."""
        return [[p, e] for p, e in self._factors.items()]

    def __str__(self) -> str:
        if not self._factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self._factors.items())

    def __repr__(self) -> str:
        return f"FactoredInteger({self})"


def multiply(a: FactoredInteger, b: FactoredInteger) -> FactoredInteger:
    return a * b


def divide_exact(a: FactoredInteger, b: FactoredInteger) -> FactoredInteger:
    return a / b


def part(n: FactoredInteger, p: int) -> FactoredInteger:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime", {'value': p})
    return n.part(p)


def coprime_part(n: FactoredInteger, p: int) -> FactoredInteger:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime", {'value': p})
    return n.coprime_part(p)


def factorial(n: int) -> FactoredInteger:
    """n! via Legendre's formula."""
    factors: Dict[int, int] = {}
    for p in range(2, n + 1):
        if not is_prime(p):
            continue
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        factors[p] = e
    return FactoredInteger._trusted(factors)


def _mobius(n: int) -> int:
    factors = _trial_factor(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic_value(q: int, d: int) -> int:
    """Phi_d(q) as a plain integer."""
    num, den = 1, 1
    for e in divisors(d):
        mu = _mobius(d // e)
        if mu == 1:
            num *= q ** e - 1
        elif mu == -1:
            den *= q ** e - 1
    return num // den


@lru_cache(maxsize=None)
def _cyclotomic_factors(q: int, d: int) -> Tuple[Tuple[int, int], ...]:
    m = cyclotomic_value(q, d)
    factors: Dict[int, int] = {}
    for p in sorted(set(_trial_factor(d)) | {2}):
        while m % p == 0:
            _add(factors, p)
            m //= p
    # remaining prime factors have multiplicative order d, so they are 1 mod d
    step = d if d % 2 == 0 else 2 * d
    c = 1 + step
    while c * c <= m:
        while m % c == 0:
            _add(factors, c)
            m //= c
        c += step
    if m > 1:
        _add(factors, m)
    return tuple(sorted(factors.items()))


def cyclotomic(q: int, d: int) -> FactoredInteger:
    """Phi_d(q), factored."""
    return FactoredInteger._trusted(dict(_cyclotomic_factors(q, d)))


def q_minus(q: int, i: int) -> FactoredInteger:
    """q^i - 1, factored through its cyclotomic pieces."""
    if i < 1:
        raise ValueError("q^i - 1 needs i >= 1")
    return reduce(lambda acc, d: acc * cyclotomic(q, d), divisors(i), FactoredInteger.one())


def q_plus(q: int, i: int) -> FactoredInteger:
    """q^i + 1 = (q^2i - 1) / (q^i - 1)."""
    return reduce(lambda acc, d: acc * cyclotomic(q, d),
                  [d for d in divisors(2 * i) if i % d], FactoredInteger.one())


def q_power(q: int, e: int) -> FactoredInteger:
    """q^e for a prime power q."""
    p, a = prime_power(q)
    return FactoredInteger._trusted({p: a * e})


def q_signed(q: int, i: int, sign: int) -> FactoredInteger:
    """q^i + sign for sign in {+1, -1}."""
    return q_plus(q, i) if sign > 0 else q_minus(q, i)


def _order_mod(q: int, r: int, n: int) -> int:
    """Multiplicative order of q mod r, given that it divides n."""
    for e in divisors(n):
        if pow(q, e, r) == 1:
            return e
    return 0


def primitive_prime_divisors(q: int, n: int) -> Set[int]:
    """Zsygmondy primes: primes dividing q^n - 1 but no q^i - 1 with i < n."""
    prime_power(q)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return {r for r in cyclotomic(q, n).primes() if _order_mod(q, r, n) == n}


def prime_factors(values: Iterable[int]) -> Set[int]:
    """Union of the prime divisors of the given positive integers."""
    primes: Set[int] = set()
    for v in values:
        if v > 1:
            primes.update(_trial_factor(v))
    return primes
