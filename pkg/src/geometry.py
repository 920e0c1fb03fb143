"""
Finite fields, projective spaces PG(d, q), the regular hyperoval and the
Witt-Bose-Shrikhande space.

Field elements are integers 0..q-1 whose base-p digits are the coefficients
of a polynomial in the primitive element x (digit i is the coefficient of
x^i), as in pyfinite. Multiplication goes through exp/log tables.
"""

import logging
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from src.arith import is_prime, prime_power
from src.errors import (BadDimension, DivisionByZero, FieldTooLarge, NotCharacteristicTwo,
                        NotClosed, NotPrime, SingularMatrix)
from src.incidence import IncidenceStructure
from src.permgroup import Permutation, PermutationGroup

logger = logging.getLogger(__name__)

DEFAULT_MAX_FIELD_ORDER = 1 << 16

# primitive moduli, constant term first
_MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}

Point = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


class GaloisField:
    """GF(p^a) with table-driven multiplication."""

    def __init__(self, p: int, a: int = 1, max_order: int = DEFAULT_MAX_FIELD_ORDER):
        if not is_prime(p):
            raise NotPrime(f"field characteristic {p} is not prime", {'value': p})
        if a < 1:
            raise ValueError(f"field degree must be >= 1, got {a}")
        if p ** a > max_order:
            raise FieldTooLarge(f"GF({p}^{a}) exceeds the limit {max_order}",
                                {'order': p ** a, 'max_order': max_order})
        self.p = p
        self.a = a
        self.order = p ** a
        self.modulus = self._choose_modulus()
        self._exp, self._log = self._tables(self.modulus)

    def _choose_modulus(self) -> Tuple[int, ...]:
        if self.a == 1:
            g = next(g for g in range(1, self.p) if self._is_primitive_root(g))
            return ((-g) % self.p, 1)
        fixed = _MODULI.get((self.p, self.a))
        if fixed is not None and self._tables(fixed) is not None:
            return fixed
        # lexicographically least primitive polynomial
        for low in product(range(self.p), repeat=self.a):
            candidate = tuple(reversed(low)) + (1,)
            if candidate[0] and self._tables(candidate) is not None:
                logger.debug("GF(%d^%d): using modulus %s", self.p, self.a, candidate)
                return candidate
        raise RuntimeError(f"no primitive polynomial of degree {self.a} over GF({self.p})")

    def _is_primitive_root(self, g: int) -> bool:
        if self.p == 2:
            return g == 1
        return len({pow(g, e, self.p) for e in range(1, self.p)}) == self.p - 1

    def _times_x(self, e: int, modulus: Sequence[int]) -> int:
        p, a = self.p, self.a
        top = e // p ** (a - 1)
        shifted = (e % p ** (a - 1)) * p
        if not top:
            return shifted
        digits = [(shifted // p ** i) % p for i in range(a)]
        return sum(((d - top * modulus[i]) % p) * p ** i for i, d in enumerate(digits))

    def _tables(self, modulus: Sequence[int]):
        """exp and log tables for x modulo `modulus`; None when x is not primitive."""
        q = self.order
        exp = [0] * (q - 1)
        log = [-1] * q
        e = 1
        for i in range(q - 1):
            if log[e] != -1:
                return None
            exp[i] = e
            log[e] = i
            e = self._times_x(e, modulus)
        if e != 1:
            return None
        return exp, log

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def elements(self) -> range:
        return range(self.order)

    @property
    def primitive_element(self) -> int:
        return self._exp[1 % (self.order - 1)]

    def basis(self) -> List[int]:
        """1, w, ..., w^(a-1) for the primitive element w; an F_p-basis."""
        return [self._exp[i] for i in range(self.a)]

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self.a == 1:
            return (x + y) % self.p
        p, total, place = self.p, 0, 1
        while x or y:
            total += ((x % p + y % p) % p) * place
            x, y, place = x // p, y // p, place * p
        return total

    def neg(self, x: int) -> int:
        if self.p == 2:
            return x
        p, total, place = self.p, 0, 1
        while x:
            total += ((-(x % p)) % p) * place
            x, place = x // p, place * p
        return total

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.order - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return self._exp[(-self._log[x]) % (self.order - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def power(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise DivisionByZero(f"0 has no inverse in {self!r}")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % (self.order - 1)]


_max_field_order = DEFAULT_MAX_FIELD_ORDER


def set_max_field_order(limit: int) -> None:
    """Largest field order that field_arithmetic and get_field will build."""
    global _max_field_order
    if limit < 2:
        raise ValueError(f"field order limit must be >= 2, got {limit}")
    _max_field_order = limit


def max_field_order() -> int:
    return _max_field_order


def field_arithmetic(p: int, a: int = 1, max_order: Optional[int] = None) -> GaloisField:
    """GF(p^a), cached; FieldTooLarge above max_order (default: the configured limit)."""
    return _cached_field(p, a, max_order or _max_field_order)


@lru_cache(maxsize=64)
def _cached_field(p: int, a: int, max_order: int) -> GaloisField:
    return GaloisField(p, a, max_order)


def get_field(q: int) -> GaloisField:
    """The field of order q."""
    p, a = prime_power(q)
    return field_arithmetic(p, a)


# vectors and matrices

def normalize(field: GaloisField, vector: Sequence[int]) -> Optional[Point]:
    """Scale so that the first nonzero coordinate is 1; None for the zero vector."""
    for c in vector:
        if c:
            scale = field.inv(c)
            return tuple(field.mul(scale, x) for x in vector)
    return None


def mat_vec(field: GaloisField, matrix: Matrix, vector: Sequence[int]) -> Tuple[int, ...]:
    result = []
    for row in matrix:
        total = 0
        for m, x in zip(row, vector):
            if m and x:
                total = field.add(total, field.mul(m, x))
        result.append(total)
    return tuple(result)


def rank(field: GaloisField, rows: Sequence[Sequence[int]]) -> int:
    """Rank by Gaussian elimination."""
    work = [list(r) for r in rows]
    r = 0
    width = len(work[0]) if work else 0
    for col in range(width):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        scale = field.inv(work[r][col])
        work[r] = [field.mul(scale, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(work[i], work[r])]
        r += 1
    return r


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def gl_generators(n: int, q: int) -> List[Matrix]:
    """Generators of GL(n, q): transvections I + cE_ij over a basis, plus diag(w, 1, ..., 1)."""
    return sl_generators(n, q) + [_diagonal(n, get_field(q).primitive_element)]


def sl_generators(n: int, q: int) -> List[Matrix]:
    """The elementary transvections I + cE_ij, c running over an F_p-basis of GF(q)."""
    field = get_field(q)
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in field.basis():
                rows = [list(r) for r in identity_matrix(n)]
                rows[i][j] = c
                gens.append(tuple(tuple(r) for r in rows))
    return gens


def _diagonal(n: int, w: int) -> Matrix:
    return tuple(tuple((w if i == 0 else 1) if i == j else 0 for j in range(n)) for i in range(n))


# An Alt7 inside GL(4, 2) = Alt8, acting 2-transitively on the 15 points of PG(3, 2)
ALT7_IN_GL42: List[Matrix] = [
    ((1, 0, 1, 0), (0, 0, 1, 0), (1, 1, 1, 1), (1, 1, 0, 0)),
    ((1, 0, 0, 1), (0, 1, 0, 0), (1, 1, 1, 1), (1, 1, 1, 0)),
]


# projective spaces

def pg_points(d: int, q: int) -> List[Point]:
    """All points of PG(d, q), normalized, in lexicographic order."""
    if d < 1:
        raise BadDimension(f"PG(d, q) needs d >= 1, got {d}", {'d': d})
    field = get_field(q)
    points = []
    for lead in range(d + 1):
        for tail in product(field.elements(), repeat=d - lead):
            points.append((0,) * lead + (1,) + tail)
    return sorted(points)


def point_index(points: Sequence[Point]) -> Dict[Point, int]:
    return {pt: i for i, pt in enumerate(points)}


def _rref_spaces(field: GaloisField, length: int, dim: int):
    """Every dim-dimensional subspace of GF(q)^length as its reduced row echelon basis."""
    for pivots in combinations(range(length), dim):
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, length)
                if j not in pivots]
        for values in product(field.elements(), repeat=len(free)):
            rows = [[0] * length for _ in range(dim)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield rows


def _span_points(field: GaloisField, rows: List[List[int]]) -> List[Point]:
    """The projective points of a row space given in reduced echelon form."""
    dim, length = len(rows), len(rows[0])
    points = []
    for lead in range(dim):
        for tail in product(field.elements(), repeat=dim - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            vec = [0] * length
            for c, row in zip(coeffs, rows):
                if c:
                    vec = [field.add(v, field.mul(c, x)) for v, x in zip(vec, row)]
            points.append(tuple(vec))
    return points


def pg_flats(d: int, q: int, flat_dim: int) -> List[Tuple[int, ...]]:
    """All flat_dim-dimensional subspaces of PG(d, q) as sorted tuples of point indices."""
    if not 1 <= flat_dim < d:
        raise BadDimension(f"flat dimension must lie in 1..{d - 1}, got {flat_dim}",
                           {'d': d, 'flat_dim': flat_dim})
    field = get_field(q)
    index = point_index(pg_points(d, q))
    flats = [tuple(sorted(index[pt] for pt in _span_points(field, rows)))
             for rows in _rref_spaces(field, d + 1, flat_dim + 1)]
    return sorted(flats)


def format_point(point: Point) -> str:
    return "(" + ",".join(map(str, point)) + ")"


# hyperovals and W(q)

def _require_even(q: int):
    p, a = prime_power(q)
    if p != 2 or a < 2:
        raise NotCharacteristicTwo(f"q = {q} is not a power of 2 with exponent >= 2", {'q': q})


def hyperoval(q: int) -> List[Point]:
    """The conic {(1 : t : t^2)} plus its nucleus (0:1:0) and the point (0:0:1)."""
    _require_even(q)
    field = get_field(q)
    conic = [(1, t, field.mul(t, t)) for t in field.elements()]
    return sorted(conic + [(0, 0, 1), (0, 1, 0)])


def wbs_design(q: int) -> IncidenceStructure:
    """Points are the external lines of the hyperoval, blocks the points off it."""
    _require_even(q)
    points = pg_points(2, q)
    on_oval = set(hyperoval(q))
    oval = {i for i, pt in enumerate(points) if pt in on_oval}
    external = [line for line in pg_flats(2, q, 1) if not oval.intersection(line)]
    through: Dict[int, List[int]] = {}
    for n, line in enumerate(external):
        for x in line:
            through.setdefault(x, []).append(n)
    blocks = [through.get(x, []) for x in range(len(points)) if x not in oval]
    logger.debug("W(%d): %d external lines, %d blocks", q, len(external), len(blocks))
    return IncidenceStructure.from_blocks(len(external), blocks)


# matrix actions

def induced_action(matrices: Sequence[Matrix], points: Sequence[Point], q: int) -> PermutationGroup:
    """The permutation group that x -> Mx induces on a list of projective points."""
    field = get_field(q)
    index = point_index(points)
    perms = []
    for matrix in matrices:
        if rank(field, matrix) != len(matrix):
            raise SingularMatrix(f"matrix {[list(r) for r in matrix]} is singular")
        images = []
        for pt in points:
            image = normalize(field, mat_vec(field, matrix, pt))
            if image not in index:
                raise NotClosed(f"{format_point(pt)} maps outside the point list",
                                {'point': format_point(pt)})
            images.append(index[image])
        perms.append(Permutation(images))
    return PermutationGroup(perms, degree=len(points))
