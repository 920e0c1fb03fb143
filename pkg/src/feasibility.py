"""
Counting conditions for flag-transitive 2-designs with prime replication
number, and the elimination engine behind the subgroup tables.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from src.arith import (FactoredInteger, divisors, is_prime, prime_factors,
                       primitive_prime_divisors, prime_power)
from src.errors import MalformedRow, NonDivisible, NotPrime
from src.groups import SimpleGroupId

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class DesignParams:
    """The tuple (v, b, r, k, lambda) of a 2-design."""

    v: int
    b: int
    r: int
    k: int
    lam: int

    def violations(self) -> List[str]:
        """Every failed parameter identity, as readable strings."""
        problems = []
        if min(self.v, self.b, self.r, self.k, self.lam) < 1:
            problems.append("all parameters must be positive")
        if self.r * (self.k - 1) != self.lam * (self.v - 1):
            problems.append("r(k-1) != lambda(v-1)")
        if self.b * self.k != self.v * self.r:
            problems.append("bk != vr")
        if not self.nontrivial:
            problems.append("not 2 < k < v-1")
        if self.b < self.v:
            problems.append("Fisher's inequality b >= v fails")
        return problems

    @property
    def nontrivial(self) -> bool:
        return 2 < self.k < self.v - 1

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.v, self.b, self.r, self.k, self.lam)

    def to_dict(self) -> Dict[str, int]:
        return {'v': self.v, 'b': self.b, 'r': self.r, 'k': self.k, 'lambda': self.lam}

    def __str__(self) -> str:
        return "({},{},{},{},{})".format(*self.as_tuple())


def derive_params(v: int, r: int) -> List[DesignParams]:
    """All (k, lambda, b) with r(k-1) = lambda(v-1), vr = bk and lambda v < r^2."""
    if not is_prime(r):
        raise NotPrime(f"replication number {r} is not prime", {'r': r})
    if v < 4 or (v - 1) % r:
        return []
    found = []
    lam = 1
    while lam * v < r * r:
        k = 1 + lam * (v - 1) // r
        if 2 < k < v - 1 and k <= r and (v * r) % k == 0:
            found.append(DesignParams(v, v * r // k, r, k, lam))
        lam += 1
    return found


def enumerate_feasible(max_v: int, max_lambda: int) -> List[DesignParams]:
    """Every group-free feasible tuple with v <= max_v and lambda <= max_lambda."""
    rows = []
    for v in range(5, max_v + 1):
        for r in sorted(prime_factors([v - 1])):
            rows.extend(p for p in derive_params(v, r) if p.lam <= max_lambda)
    return rows


def block_size_candidates(v: int, r: int) -> List[int]:
    """Block sizes allowed by k | vr and k <= r."""
    return [k for k in divisors(v * r) if 2 <= k <= r]


def large_test(x_order: FactoredInteger, h_order: FactoredInteger) -> bool:
    """True iff |X| <= |H|^3."""
    x_order / h_order  # raises NonDivisible unless |H| divides |X|
    return x_order.value <= h_order.value ** 3


def coprime_test(x_order: FactoredInteger, h_order: FactoredInteger, p: int) -> bool:
    """True iff |X| < |H| * |H|_{p'}^2, i.e. the row survives."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime", {'value': p})
    x_order / h_order  # raises NonDivisible unless |H| divides |X|
    return x_order.value < h_order.value * h_order.coprime_part(p).value ** 2


class VerdictKind(Enum):
    ELIMINATED = 'Eliminated'
    SURVIVES = 'SurvivesToParams'
    ANNOTATED = 'AnnotatedClosed'


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    candidates: Tuple[Tuple[int, Tuple[DesignParams, ...]], ...] = ()
    annotation: Optional[str] = None
    note: Optional[str] = None

    @property
    def tuples(self) -> List[DesignParams]:
        return [p for _, params in self.candidates for p in params]

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {'kind': self.kind.value}
        if self.candidates or self.kind is not VerdictKind.ELIMINATED:
            result['candidates'] = [
                {'r': r, 'params': [p.to_dict() for p in params]} for r, params in self.candidates]
        if self.annotation:
            result['annotation'] = self.annotation
        if self.note:
            result['note'] = self.note
        return result


@dataclass(frozen=True)
class EliminationRow:
    """One candidate (X, H cap X) of a subgroup table.

    `printed_v` is the table's column. `v` is |X| / |H cap X| when the
    stabilizer order is known and the printed value otherwise. Rows from
    the lower-bound tables may carry a fractional bound printed_v /
    v_denominator.
    """

    source_table: str
    class_label: str
    group_label: str
    group_order: FactoredInteger
    stabilizer_label: str
    stabilizer_order: Optional[FactoredInteger]
    printed_v: FactoredInteger
    u_r: int
    group: Optional[SimpleGroupId] = None
    q: Optional[int] = None
    n: Optional[int] = None
    v_denominator: int = 1
    exact_printed: bool = True
    coprime_pool: bool = True
    condition: str = ''
    annotation: Optional[str] = None
    erratum: Optional[str] = None

    def __post_init__(self):
        if self.u_r < 2:
            raise MalformedRow(f"u_r = {self.u_r} < 2 in row {self.describe()}")
        if self.v_denominator < 1:
            raise MalformedRow(f"bad denominator in row {self.describe()}")
        if self.stabilizer_order is not None:
            try:
                self.group_order / self.stabilizer_order
            except NonDivisible as e:
                raise MalformedRow(f"stabilizer order does not divide |X| in row {self.describe()}",
                                   e.context) from e

    @property
    def v(self) -> FactoredInteger:
        if self.stabilizer_order is not None:
            return self.group_order / self.stabilizer_order
        return self.printed_v

    @property
    def v_is_exact(self) -> bool:
        return self.stabilizer_order is not None or (self.exact_printed and self.v_denominator == 1)

    @property
    def characteristic(self) -> Optional[int]:
        if self.group is not None and self.group.q is not None:
            return prime_power(self.group.q)[0]
        return None

    def describe(self) -> str:
        where = f" q={self.q}" if self.q is not None else ""
        dim = f" n={self.n}" if self.n is not None else ""
        return f"{self.source_table} {self.class_label} {self.group_label} / {self.stabilizer_label}{where}{dim}"

    def r_pool(self) -> Optional[Set[int]]:
        """Primes that r may be: divisors of |H cap X|_{p'} (or |H|), if known."""
        if self.stabilizer_order is None:
            return None
        h = self.stabilizer_order
        p = self.characteristic
        if self.coprime_pool and p is not None:
            h = h.coprime_part(p)
        return set(h.primes())

    def check_printed(self) -> Dict[str, Any]:
        """Compare the printed column with the recomputed index."""
        if self.stabilizer_order is None:
            return {'status': 'unchecked'}
        computed = self.v.value
        if self.exact_printed:
            ok = self.v_denominator == 1 and computed == self.printed_v.value
        else:
            ok = self.printed_v.value <= computed * self.v_denominator
        if ok:
            return {'status': 'match', 'computed': computed}
        status = 'erratum' if self.erratum else 'mismatch'
        return {'status': status, 'computed': computed, 'printed': self.printed_v.value,
                'erratum': self.erratum}

    def to_dict(self) -> Dict[str, Any]:
        result = {
            'table': self.source_table,
            'class': self.class_label,
            'group': self.group_label,
            'group_order': self.group_order.value,
            'stabilizer': self.stabilizer_label,
            'stabilizer_order': None if self.stabilizer_order is None else self.stabilizer_order.value,
            'printed_v': str(self.printed_v) if self.v_denominator == 1
            else f"{self.printed_v}/{self.v_denominator}",
            'v': self.v.value,
            'v_exact': self.v_is_exact,
            'u_r': self.u_r,
        }
        for key in ('q', 'n'):
            if getattr(self, key) is not None:
                result[key] = getattr(self, key)
        if self.condition:
            result['condition'] = self.condition
        if self.erratum:
            result['erratum'] = self.erratum
        return result


def evaluate_row(row: EliminationRow, r_divisor_pool: Optional[Iterable[int]] = None) -> Verdict:
    """Recompute a row's verdict from lambda v < r^2 and r | v - 1."""
    if not isinstance(row, EliminationRow):
        raise MalformedRow(f"not an elimination row: {row!r}")
    v = row.v.value
    bound = row.u_r ** 2
    denominator = 1 if row.stabilizer_order is not None else row.v_denominator
    if v >= bound * denominator:
        return Verdict(VerdictKind.ELIMINATED)

    logger.debug("row %s survives lambda v < r^2 with v=%s u_r=%s", row.describe(), v, row.u_r)
    if not row.v_is_exact:
        kind = VerdictKind.ANNOTATED if row.annotation else VerdictKind.SURVIVES
        return Verdict(kind, (), row.annotation, note="v is only bounded below; no tuples derived")

    pool = set(r_divisor_pool) if r_divisor_pool is not None else row.r_pool()
    candidates = []
    for r in sorted(prime_factors([v - 1])):
        if r > row.u_r or (pool is not None and r not in pool):
            continue
        params = derive_params(v, r)
        if params:
            candidates.append((r, tuple(params)))

    kind = VerdictKind.ANNOTATED if row.annotation else VerdictKind.SURVIVES
    note = None if candidates else "no prime r passes the divisibility conditions"
    return Verdict(kind, tuple(candidates), row.annotation, note)


def evaluate_rows(rows: Sequence[EliminationRow], threads: int = 1) -> List[Tuple[EliminationRow, Verdict]]:
    """Evaluate rows, fanning out over a thread pool; output keeps row order."""
    if threads <= 1 or len(rows) < 2:
        return [(row, evaluate_row(row)) for row in rows]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        verdicts = list(pool.map(evaluate_row, rows))
    return list(zip(rows, verdicts))


def primitive_divisor_candidates(n: int, q: int) -> List[Tuple[int, List[DesignParams]]]:
    """Candidates r for the point-hyperplane case v = (q^n - 1)/(q - 1)."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    prime_power(q)
    v = (q ** n - 1) // (q - 1)
    quotient = (q ** (n - 1) - 1) // (q - 1)
    return [(r, derive_params(v, r))
            for r in sorted(primitive_prime_divisors(q, n - 1)) if quotient % r == 0]
