"""
Finite simple group identifiers: orders, outer automorphism orders and
minimal permutation degrees.

For the classical families `n` is always the dimension of the natural
module: PSp(4, q), POmega(7, q) and POmega+(8, q) are the smallest cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, Iterable, Optional, Tuple

from src.arith import (FactoredInteger, factorial, prime_power, q_minus, q_plus,
                       q_power, q_signed)
from src.catalog import SPORADIC_NAMES, catalog_order, catalog_out_order
from src.errors import IllegalId, NotPrime, Unsupported


class Family(Enum):
    ALT = 'Alt'
    SPORADIC = 'Sporadic'
    PSL = 'PSL'
    PSU = 'PSU'
    PSP = 'PSp'
    POMEGA_ODD = 'POmegaOdd'
    POMEGA_EVEN = 'POmegaEven'
    SUZUKI = 'Suzuki2B2'
    REE_G2 = 'Ree2G2'
    STEINBERG_D4 = 'Steinberg3D4'
    REE_F4 = 'Ree2F4'
    G2 = 'G2'
    F4 = 'F4'
    E6 = 'E6'
    TWISTED_E6 = 'TwistedE6'
    E7 = 'E7'
    E8 = 'E8'


CLASSICAL = frozenset({Family.PSL, Family.PSU, Family.PSP, Family.POMEGA_ODD, Family.POMEGA_EVEN})
EXCEPTIONAL = frozenset({Family.SUZUKI, Family.REE_G2, Family.STEINBERG_D4, Family.REE_F4,
                         Family.G2, Family.F4, Family.E6, Family.TWISTED_E6, Family.E7, Family.E8})

_LABELS = {
    Family.SUZUKI: 'Sz', Family.REE_G2: '2G2', Family.STEINBERG_D4: '3D4', Family.REE_F4: '2F4',
    Family.G2: 'G2', Family.F4: 'F4', Family.E6: 'E6', Family.TWISTED_E6: '2E6',
    Family.E7: 'E7', Family.E8: 'E8',
}


@dataclass(frozen=True)
class SimpleGroupId:
    """A finite simple group named by family and parameters."""

    family: Family
    n: Optional[int] = None
    q: Optional[int] = None
    epsilon: Optional[int] = None
    sporadic_name: Optional[str] = None

    def __post_init__(self):
        _validate(self)

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def a(self) -> int:
        return prime_power(self.q)[1]

    @property
    def is_classical(self) -> bool:
        return self.family in CLASSICAL

    def __str__(self) -> str:
        f = self.family
        if f is Family.ALT:
            return f"Alt({self.n})"
        if f is Family.SPORADIC:
            return self.sporadic_name
        if f is Family.POMEGA_EVEN:
            return f"POmega{'+' if self.epsilon > 0 else '-'}({self.n},{self.q})"
        if f is Family.POMEGA_ODD:
            return f"POmega({self.n},{self.q})"
        if f in CLASSICAL:
            return f"{f.value}({self.n},{self.q})"
        return f"{_LABELS[f]}({self.q})"


def _odd_power(q: int, p: int) -> bool:
    r, a = prime_power(q)
    return r == p and a % 2 == 1


def _validate(g: SimpleGroupId):
    f, n, q = g.family, g.n, g.q

    def illegal(reason: str):
        raise IllegalId(f"illegal {f.value} parameters: {reason}",
                        {'family': f.value, 'n': n, 'q': q, 'epsilon': g.epsilon})

    if f is Family.ALT:
        if n is None or n < 5:
            illegal("Alt(n) needs n >= 5")
        return
    if f is Family.SPORADIC:
        if not g.sporadic_name:
            illegal("sporadic groups need a name")
        return

    if q is None:
        illegal("q is required")
    try:
        p, _ = prime_power(q)
    except NotPrime:
        illegal(f"q = {q} is not a prime power")
    if f is not Family.POMEGA_EVEN and g.epsilon is not None:
        illegal("only POmegaEven carries a sign")

    if f is Family.PSL:
        if n is None or n < 2 or (n, q) in ((2, 2), (2, 3)):
            illegal("PSL needs n >= 2 and (n, q) not in {(2,2), (2,3)}")
    elif f is Family.PSU:
        if n is None or n < 3 or (n, q) == (3, 2):
            illegal("PSU needs n >= 3 and (n, q) != (3, 2)")
    elif f is Family.PSP:
        if n is None or n < 4 or n % 2:
            illegal("PSp needs an even dimension >= 4")
    elif f is Family.POMEGA_ODD:
        if n is None or n < 7 or n % 2 == 0 or p == 2:
            illegal("POmega needs an odd dimension >= 7 and q odd")
    elif f is Family.POMEGA_EVEN:
        if n is None or n < 8 or n % 2 or g.epsilon not in (1, -1):
            illegal("POmega+/- needs an even dimension >= 8 and a sign")
    elif f is Family.SUZUKI:
        if not _odd_power(q, 2) or q < 8:
            illegal("Sz(q) needs q = 2^(2m+1) >= 8")
    elif f is Family.REE_G2:
        if not _odd_power(q, 3) or q < 27:
            illegal("2G2(q) needs q = 3^(2m+1) >= 27")
    elif f is Family.REE_F4:
        if not _odd_power(q, 2):
            illegal("2F4(q) needs q = 2^(2m+1)")
    elif f is Family.G2:
        if q < 3:
            illegal("G2(q) needs q >= 3")
    if f not in CLASSICAL and n is not None:
        illegal("exceptional groups take no dimension")


# constructors

def alt(n: int) -> SimpleGroupId:
    return SimpleGroupId(Family.ALT, n=n)


def sporadic(name: str) -> SimpleGroupId:
    return SimpleGroupId(Family.SPORADIC, sporadic_name=name)


def psl(n: int, q: int) -> SimpleGroupId:
    return SimpleGroupId(Family.PSL, n, q)


def psu(n: int, q: int) -> SimpleGroupId:
    return SimpleGroupId(Family.PSU, n, q)


def psp(n: int, q: int) -> SimpleGroupId:
    return SimpleGroupId(Family.PSP, n, q)


def pomega(n: int, q: int, epsilon: Optional[int] = None) -> SimpleGroupId:
    if n % 2:
        return SimpleGroupId(Family.POMEGA_ODD, n, q)
    return SimpleGroupId(Family.POMEGA_EVEN, n, q, epsilon)


def exceptional(family: Family, q: int) -> SimpleGroupId:
    return SimpleGroupId(family, q=q)


def suzuki(q: int) -> SimpleGroupId:
    return SimpleGroupId(Family.SUZUKI, q=q)


def g2(q: int) -> SimpleGroupId:
    return SimpleGroupId(Family.G2, q=q)


# isomorphisms between small members of different families
_REPETITIONS: Dict[Tuple[Family, int, int], SimpleGroupId] = {
    (Family.PSL, 2, 4): alt(5),
    (Family.PSL, 2, 5): alt(5),
    (Family.PSL, 3, 2): psl(2, 7),
    (Family.PSL, 2, 9): alt(6),
    (Family.PSL, 4, 2): alt(8),
    (Family.PSP, 4, 3): psu(4, 2),
    # PSp4(2)' = Alt6; the full PSp4(2) is the catalog label 'PSp4(2)'
    (Family.PSP, 4, 2): alt(6),
}


def normalize(group: SimpleGroupId) -> SimpleGroupId:
    """Canonical representative under the small exceptional isomorphisms."""
    return _REPETITIONS.get((group.family, group.n, group.q), group)


def _product(terms: Iterable[FactoredInteger]) -> FactoredInteger:
    return reduce(lambda acc, t: acc * t, terms, FactoredInteger.one())


def _small(n: int) -> FactoredInteger:
    return FactoredInteger.from_int(n)


def order(group: SimpleGroupId) -> FactoredInteger:
    """Exact group order."""
    group = normalize(group)
    f, n, q = group.family, group.n, group.q

    if f is Family.ALT:
        return factorial(n) / 2
    if f is Family.SPORADIC:
        if group.sporadic_name not in SPORADIC_NAMES:
            raise Unsupported(f"sporadic group {group.sporadic_name!r} is not catalogued",
                              {'label': group.sporadic_name})
        return catalog_order(group.sporadic_name)

    if f is Family.PSL:
        body = _product(q_minus(q, i) for i in range(2, n + 1))
        return q_power(q, n * (n - 1) // 2) * body / _small(math.gcd(n, q - 1))
    if f is Family.PSU:
        body = _product(q_signed(q, i, -(-1) ** i) for i in range(2, n + 1))
        return q_power(q, n * (n - 1) // 2) * body / _small(math.gcd(n, q + 1))
    if f in (Family.PSP, Family.POMEGA_ODD):
        m = n // 2
        body = _product(q_minus(q, 2 * i) for i in range(1, m + 1))
        return q_power(q, m * m) * body / _small(math.gcd(2, q - 1))
    if f is Family.POMEGA_EVEN:
        m, eps = n // 2, group.epsilon
        body = _product(q_minus(q, 2 * i) for i in range(1, m))
        d = math.gcd(4, q ** m - eps)
        return q_power(q, m * (m - 1)) * q_signed(q, m, -eps) * body / _small(d)

    if f is Family.SUZUKI:
        return q_power(q, 2) * q_plus(q, 2) * q_minus(q, 1)
    if f is Family.REE_G2:
        return q_power(q, 3) * q_plus(q, 3) * q_minus(q, 1)
    if f is Family.STEINBERG_D4:
        return q_power(q, 12) * (q_minus(q, 12) / q_minus(q, 4)) * q_minus(q, 6) * q_minus(q, 2)
    if f is Family.REE_F4:
        return q_power(q, 12) * q_plus(q, 6) * q_minus(q, 4) * q_plus(q, 3) * q_minus(q, 1)
    if f is Family.G2:
        return q_power(q, 6) * q_minus(q, 6) * q_minus(q, 2)
    if f is Family.F4:
        return q_power(q, 24) * _product(q_minus(q, i) for i in (2, 6, 8, 12))
    if f is Family.E6:
        body = _product(q_minus(q, i) for i in (2, 5, 6, 8, 9, 12))
        return q_power(q, 36) * body / _small(math.gcd(3, q - 1))
    if f is Family.TWISTED_E6:
        body = _product([q_minus(q, 2), q_plus(q, 5), q_minus(q, 6), q_minus(q, 8),
                         q_plus(q, 9), q_minus(q, 12)])
        return q_power(q, 36) * body / _small(math.gcd(3, q + 1))
    if f is Family.E7:
        body = _product(q_minus(q, i) for i in (2, 6, 8, 10, 12, 14, 18))
        return q_power(q, 63) * body / _small(math.gcd(2, q - 1))
    if f is Family.E8:
        return q_power(q, 120) * _product(q_minus(q, i) for i in (2, 8, 12, 14, 18, 20, 24, 30))
    raise Unsupported(f"no order formula for {group}")


def out_order(group: SimpleGroupId) -> FactoredInteger:
    """|Out(X)| for a simple group X."""
    group = normalize(group)
    f, n, q = group.family, group.n, group.q

    if f is Family.ALT:
        return _small(4 if n == 6 else 2)
    if f is Family.SPORADIC:
        return catalog_out_order(group.sporadic_name)

    p, a = prime_power(q)
    if f is Family.PSL:
        if n == 2:
            return _small(a * math.gcd(2, q - 1))
        return _small(2 * a * math.gcd(n, q - 1))
    if f is Family.PSU:
        return _small(2 * a * math.gcd(n, q + 1))
    if f is Family.PSP:
        if n == 4 and p == 2:
            return _small(2 * a)
        return _small(a * math.gcd(2, q - 1))
    if f is Family.POMEGA_ODD:
        return _small(2 * a)
    if f is Family.POMEGA_EVEN:
        m, eps = n // 2, group.epsilon
        d = math.gcd(4, q ** m - eps)
        if eps > 0 and m == 4:
            return _small(6 * a * d)
        return _small(2 * a * d)

    simple_out = {
        Family.SUZUKI: a,
        Family.REE_G2: a,
        Family.STEINBERG_D4: 3 * a,
        Family.REE_F4: a,
        Family.G2: a * (2 if p == 3 else 1),
        Family.F4: a * (2 if p == 2 else 1),
        Family.E6: 2 * a * math.gcd(3, q - 1),
        Family.TWISTED_E6: 2 * a * math.gcd(3, q + 1),
        Family.E7: a * math.gcd(2, q - 1),
        Family.E8: a,
    }
    if f in simple_out:
        return _small(simple_out[f])
    raise Unsupported(f"no outer automorphism data for {group}")


def _minimal_degree_exception(group: SimpleGroupId) -> Optional[int]:
    """The individually listed rows of the minimal degree table."""
    key = (group.family, group.n, group.q)
    if group.family is Family.PSL and group.n == 2 and group.q in (5, 7, 11):
        return group.q
    return {
        (Family.PSL, 2, 9): 6,
        (Family.PSL, 4, 2): 8,
        (Family.PSU, 3, 5): 50,
        (Family.PSP, 4, 3): 27,
    }.get(key)


def minimal_degree(group: SimpleGroupId) -> int:
    """Smallest degree of a faithful transitive permutation representation."""
    listed = _minimal_degree_exception(group)
    if listed is not None:
        return listed
    if normalize(group) != group:
        return minimal_degree(normalize(group))

    f, n, q = group.family, group.n, group.q
    if f is Family.ALT:
        return n
    if f is Family.PSL:
        return (q ** n - 1) // (q - 1)
    if f is Family.PSU:
        if n == 3:
            return q ** 3 + 1
        if n == 4:
            return (q + 1) * (q ** 3 + 1)
        if q == 2 and n % 6 == 0:
            return 2 ** (n - 1) * (2 ** n - 1) // 3
        sign = (-1) ** n
        return (q ** n - sign) * (q ** (n - 1) + sign) // (q * q - 1)
    if f is Family.PSP:
        m = n // 2
        if q == 2:
            return 2 ** (m - 1) * (2 ** m - 1)
        return (q ** (2 * m) - 1) // (q - 1)
    if f is Family.POMEGA_ODD:
        m = n // 2
        if q == 3:
            return 3 ** m * (3 ** m - 1) // 2
        return (q ** (2 * m) - 1) // (q - 1)
    if f is Family.POMEGA_EVEN:
        m = n // 2
        if group.epsilon > 0:
            if q == 2:
                return 2 ** (m - 1) * (2 ** m - 1)
            return (q ** m - 1) * (q ** (m - 1) + 1) // (q - 1)
        return (q ** m + 1) * (q ** (m - 1) - 1) // (q - 1)
    raise Unsupported(f"minimal degree table covers classical and alternating groups, not {group}",
                      {'group': str(group)})
