"""
Permutation groups at desk scale.

Points are 0..degree-1. Products compose left to right: (a * b)(x) = b(a(x)),
the convention of GAP and sympy. Group orders come from a deterministic
Schreier-Sims stabilizer chain whose base is extended by the smallest
moved point, so the chain and everything derived from it is reproducible.
"""

import logging
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from src.arith import FactoredInteger
from src.errors import BadPermutation, DegreeTooLarge, NotTransitive, PointOutOfRange

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 10000


class Permutation:
    """A bijection of {0, ..., degree-1} stored as its image list."""

    __slots__ = ('_images',)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise BadPermutation(f"not a permutation of 0..{len(images) - 1}: {list(images)}",
                                 {'images': list(images)})
        self._images = images

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> 'Permutation':
        """Build from 0-based cycles; points not mentioned are fixed."""
        images = list(range(degree))
        seen: Set[int] = set()
        for cycle in cycles:
            for i, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise PointOutOfRange(f"point {point} outside 0..{degree - 1}",
                                          {'point': point, 'degree': degree})
                if point in seen:
                    raise BadPermutation(f"point {point} occurs in two cycles", {'point': point})
                seen.add(point)
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        if other.degree != self.degree:
            raise BadPermutation("degrees differ", {'left': self.degree, 'right': other.degree})
        image = other._images
        return Permutation._raw(tuple(image[x] for x in self._images))

    @classmethod
    def _raw(cls, images: Tuple[int, ...]) -> 'Permutation':
        obj = cls.__new__(cls)
        obj._images = images
        return obj

    def inverse(self) -> 'Permutation':
        inv = [0] * self.degree
        for x, y in enumerate(self._images):
            inv[y] = x
        return Permutation._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self._images))

    def moved_points(self) -> List[int]:
        return [x for x, y in enumerate(self._images) if x != y]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start] or self._images[start] == start:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self._images[x]
            result.append(tuple(cycle))
        return result

    def image_of_set(self, points: Iterable[int]) -> frozenset:
        return frozenset(self._images[x] for x in points)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


class _Level:
    """One level of the stabilizer chain: a base point and its transversal."""

    def __init__(self, point: int, generators: List[Permutation], degree: int):
        self.point = point
        self.generators = generators
        self.transversal: Dict[int, Permutation] = {}
        self.recompute(degree)

    def recompute(self, degree: int):
        self.transversal = {self.point: Permutation.identity(degree)}
        queue = deque([self.point])
        while queue:
            beta = queue.popleft()
            u = self.transversal[beta]
            for gen in self.generators:
                gamma = gen(beta)
                if gamma not in self.transversal:
                    self.transversal[gamma] = u * gen
                    queue.append(gamma)


class PermutationGroup:
    """The group generated by a list of permutations of a common degree."""

    def __init__(self, generators: Iterable[Permutation], degree: Optional[int] = None,
                 max_degree: int = DEFAULT_MAX_DEGREE):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise BadPermutation("the degree is needed when there are no generators")
            degree = generators[0].degree
        for gen in generators:
            if gen.degree != degree:
                raise BadPermutation(f"generator {gen} has degree {gen.degree}, expected {degree}",
                                     {'degree': degree})
        self.degree = degree
        self.max_degree = max_degree
        self.generators = [g for g in generators if not g.is_identity()]
        self._levels: Optional[List[_Level]] = None

    def _check_point(self, point: int):
        if not isinstance(point, int) or not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}",
                                  {'point': point, 'degree': self.degree})

    def orbit(self, point: int) -> Set[int]:
        """Breadth-first closure of point under the generators."""
        self._check_point(point)
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for gen in self.generators:
                y = gen(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def orbits(self) -> List[List[int]]:
        result, covered = [], set()
        for x in range(self.degree):
            if x not in covered:
                orb = sorted(self.orbit(x))
                covered.update(orb)
                result.append(orb)
        return result

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    # stabilizer chain

    def _chain(self, prefix: Sequence[int] = ()) -> List[_Level]:
        """Deterministic incremental Schreier-Sims starting from the given base prefix."""
        if self.degree > self.max_degree:
            raise DegreeTooLarge(f"degree {self.degree} exceeds the limit {self.max_degree}",
                                 {'degree': self.degree, 'max_degree': self.max_degree})
        if not prefix and self._levels is not None:
            return self._levels

        base = list(prefix)
        for gen in self.generators:
            if all(gen(b) == b for b in base):
                base.append(gen.moved_points()[0])
        strong = list(self.generators)

        def fixing(depth: int) -> List[Permutation]:
            return [g for g in strong if all(g(b) == b for b in base[:depth])]

        levels = [_Level(b, fixing(i), self.degree) for i, b in enumerate(base)]

        def strip(g: Permutation) -> Tuple[Permutation, int]:
            for depth, level in enumerate(levels):
                beta = g(level.point)
                if beta not in level.transversal:
                    return g, depth
                g = g * level.transversal[beta].inverse()
            return g, len(levels)

        i = len(levels) - 1
        while i >= 0:
            level = levels[i]
            restart = None
            for beta, u_beta in list(level.transversal.items()):
                for gen in level.generators:
                    u_gamma = level.transversal[gen(beta)]
                    schreier = u_beta * gen * u_gamma.inverse()
                    if schreier.is_identity():
                        continue
                    h, j = strip(schreier)
                    if j == len(levels):
                        if h.is_identity():
                            continue
                        base.append(h.moved_points()[0])
                        levels.append(_Level(base[-1], [], self.degree))
                    strong.append(h)
                    for depth in range(i + 1, j + 1):
                        levels[depth].generators.append(h)
                        levels[depth].recompute(self.degree)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

        logger.debug("stabilizer chain of degree %d: base %s, orbit lengths %s",
                     self.degree, base, [len(lv.transversal) for lv in levels])
        if not prefix:
            self._levels = levels
        return levels

    def base(self) -> List[int]:
        return [level.point for level in self._chain()]

    def order(self) -> FactoredInteger:
        """Exact order: the product of the fundamental orbit lengths."""
        result = FactoredInteger.one()
        for level in self._chain():
            result = result * len(level.transversal)
        return result

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        g = perm
        for level in self._chain():
            beta = g(level.point)
            if beta not in level.transversal:
                return False
            g = g * level.transversal[beta].inverse()
        return g.is_identity()

    def point_stabilizer(self, point: int) -> 'PermutationGroup':
        """Generators of G_point read off a chain whose base starts at point."""
        self._check_point(point)
        levels = self._chain((point,))
        gens = list(levels[1].generators) if len(levels) > 1 else []
        return PermutationGroup(gens, self.degree, self.max_degree)

    def subdegrees(self, point: int = 0) -> List[int]:
        """Orbit lengths of G_point, the trivial orbit included, in increasing order."""
        self._check_point(point)
        if not self.is_transitive():
            raise NotTransitive("subdegrees need a transitive group", {'degree': self.degree})
        return sorted(len(orb) for orb in self.point_stabilizer(point).orbits())

    def minimal_block(self, beta: int) -> List[int]:
        """The smallest block of imprimitivity containing 0 and beta."""
        self._check_point(beta)
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: int, b: int) -> bool:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[max(ra, rb)] = min(ra, rb)
            return True

        pending = [(0, beta)]
        union(0, beta)
        while pending:
            a, b = pending.pop()
            for gen in self.generators:
                c, d = find(gen(a)), find(gen(b))
                if union(c, d):
                    pending.append((c, d))
        root = find(0)
        return [x for x in range(self.degree) if find(x) == root]

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            raise NotTransitive("primitivity is defined for transitive groups",
                                {'degree': self.degree})
        return all(len(self.minimal_block(beta)) == self.degree for beta in range(1, self.degree))

    def elements(self) -> Iterator[Permutation]:
        """Every element, by closure; meant for small groups."""
        identity = Permutation.identity(self.degree)
        seen = {identity}
        queue = deque([identity])
        yield identity
        while queue:
            x = queue.popleft()
            for gen in self.generators:
                y = x * gen
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    yield y

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, generators={len(self.generators)})"


def orbit(g: PermutationGroup, point: int) -> Set[int]:
    return g.orbit(point)


def group_order(g: PermutationGroup) -> FactoredInteger:
    return g.order()


def point_stabilizer(g: PermutationGroup, point: int) -> PermutationGroup:
    return g.point_stabilizer(point)


def subdegrees(g: PermutationGroup, point: int = 0) -> List[int]:
    return g.subdegrees(point)


def is_primitive(g: PermutationGroup) -> bool:
    return g.is_primitive()
