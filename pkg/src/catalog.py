"""
Literal catalog of labelled group orders.

Infinite families are evaluated from formulas in src.groups; everything the
tables name through ATLAS-style labels lives here as (label, factored order,
|Out|). Regular labels are resolved by pattern instead of being listed:

    S<n>, Alt<n>   symmetric and alternating groups
    D<n>           dihedral group of order n
    p^k.L, p^k:L   an elementary abelian p^k extended by the labelled group L
"""

import re
from typing import Dict, List, NamedTuple, Optional

from src.arith import FactoredInteger, factorial, is_prime
from src.errors import Unsupported


class CatalogEntry(NamedTuple):
    label: str
    order: FactoredInteger
    out_order: Optional[int]
    simple: bool


# (label, {prime: exponent}, |Out| or None, simple)
_ENTRIES = (
    # sporadic simple groups
    ('M11', {2: 4, 3: 2, 5: 1, 11: 1}, 1, True),
    ('M12', {2: 6, 3: 3, 5: 1, 11: 1}, 2, True),
    ('M22', {2: 7, 3: 2, 5: 1, 7: 1, 11: 1}, 2, True),
    ('M23', {2: 7, 3: 2, 5: 1, 7: 1, 11: 1, 23: 1}, 1, True),
    ('M24', {2: 10, 3: 3, 5: 1, 7: 1, 11: 1, 23: 1}, 1, True),
    ('J1', {2: 3, 3: 1, 5: 1, 7: 1, 11: 1, 19: 1}, 1, True),
    ('J2', {2: 7, 3: 3, 5: 2, 7: 1}, 2, True),
    ('J3', {2: 7, 3: 5, 5: 1, 17: 1, 19: 1}, 2, True),
    ('HS', {2: 9, 3: 2, 5: 3, 7: 1, 11: 1}, 2, True),
    ('McL', {2: 7, 3: 6, 5: 3, 7: 1, 11: 1}, 2, True),
    ('Fi22', {2: 17, 3: 9, 5: 2, 7: 1, 11: 1, 13: 1}, 2, True),

    # almost simple and other named groups
    ('M10', {2: 4, 3: 2, 5: 1}, None, False),
    ('PSp4(2)', {2: 4, 3: 2, 5: 1}, None, False),
    ('Sp4(2)', {2: 4, 3: 2, 5: 1}, None, False),
    ('PGL2(7)', {2: 4, 3: 1, 7: 1}, None, False),
    ('PGL2(9)', {2: 4, 3: 2, 5: 1}, None, False),
    ('PGammaL2(9)', {2: 5, 3: 2, 5: 1}, None, False),
    ('PGL2(11)', {2: 3, 3: 1, 5: 1, 11: 1}, None, False),
    ('PSU3(3).2', {2: 6, 3: 3, 7: 1}, None, False),
    ('PSU4(3).2', {2: 8, 3: 6, 5: 1, 7: 1}, None, False),
    ('Sp6(2)', {2: 9, 3: 4, 5: 1, 7: 1}, None, True),
    ('Omega8+(2)', {2: 12, 3: 5, 5: 2, 7: 1}, None, True),
    ('Omega6^-(2)', {2: 6, 3: 4, 5: 1}, None, True),
    ('Omega4^-(2)', {2: 2, 3: 1, 5: 1}, None, True),
    ('O4^-(2)', {2: 3, 3: 1, 5: 1}, None, False),
    ('Omega2^-(2)', {3: 1}, None, False),
    ('G2(2)', {2: 6, 3: 3, 7: 1}, None, False),
    ('A2(2)', {2: 3, 3: 1, 7: 1}, None, True),
    ('PSL3(2)', {2: 3, 3: 1, 7: 1}, None, True),
    ('SL2(3)', {2: 3, 3: 1}, None, False),
    ('Q8', {2: 3}, None, False),
    ('SU3(8):2', {2: 10, 3: 5, 7: 1, 19: 1}, None, False),
    ('A2(3):2', {2: 5, 3: 3, 13: 1}, None, False),
    ('Alt6.2^2', {2: 5, 3: 2, 5: 1}, None, False),
    ('5^2:4Alt4', {2: 4, 3: 1, 5: 2}, None, False),
    ('Omega2^-(2)^2.2^4', {2: 4, 3: 2}, None, False),
    ('Omega2^-(2)^5.2^5', {2: 5, 3: 5}, None, False),
    ('Omega4^-(2)^2.2^3', {2: 7, 3: 2, 5: 2}, None, False),

    # Frobenius and metacyclic groups
    ('7:3', {3: 1, 7: 1}, None, False),
    ('13:4', {2: 2, 13: 1}, None, False),
    ('41:4', {2: 2, 41: 1}, None, False),
    ('C5:C4', {2: 2, 5: 1}, None, False),
    ('C8:C2', {2: 4}, None, False),
    ('C10:C4', {2: 3, 5: 1}, None, False),
    ('C8.Aut(C8)', {2: 5}, None, False),
)

CATALOG: Dict[str, CatalogEntry] = {
    label: CatalogEntry(label, FactoredInteger(order), out, simple)
    for label, order, out, simple in _ENTRIES
}

SPORADIC_NAMES: List[str] = [entry.label for entry in CATALOG.values()
                             if entry.simple and entry.out_order is not None]

_SYMMETRIC = re.compile(r'^S(\d+)$')
_ALTERNATING = re.compile(r'^Alt(\d+)$')
_DIHEDRAL = re.compile(r'^D(\d+)$')
_EXTENSION = re.compile(r'^(\d+)\^(\d+)[.:](.+)$')


def catalog_order(label: str) -> FactoredInteger:
    """Order of a labelled group; raises Unsupported for unknown labels."""
    entry = CATALOG.get(label)
    if entry is not None:
        return entry.order

    match = _SYMMETRIC.match(label)
    if match:
        return factorial(int(match.group(1)))

    match = _ALTERNATING.match(label)
    if match and int(match.group(1)) >= 2:
        return factorial(int(match.group(1))) / 2

    match = _DIHEDRAL.match(label)
    if match and int(match.group(1)) % 2 == 0:
        return FactoredInteger.from_int(int(match.group(1)))

    match = _EXTENSION.match(label)
    if match and is_prime(int(match.group(1))):
        base = FactoredInteger.power_of(int(match.group(1)), int(match.group(2)))
        return base * catalog_order(match.group(3))

    raise Unsupported(f"no catalog entry for {label!r}", {'label': label})


def catalog_out_order(label: str) -> FactoredInteger:
    entry = CATALOG.get(label)
    if entry is None or entry.out_order is None:
        raise Unsupported(f"no outer automorphism data for {label!r}", {'label': label})
    return FactoredInteger.from_int(entry.out_order)


def is_known(label: str) -> bool:
    try:
        catalog_order(label)
        return True
    except Unsupported:
        return False
