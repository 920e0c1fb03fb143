"""
2-design verification, orbit designs and the catalog of small flag-transitive
examples.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.arith import is_prime
from src.errors import NotADesign, NotAnAutomorphismGroup, NotTransitive, PointOutOfRange
from src.feasibility import DesignParams
from src.geometry import ALT7_IN_GL42, gl_generators, induced_action, pg_flats, pg_points
from src.incidence import Block, IncidenceStructure
from src.permgroup import Permutation, PermutationGroup

logger = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 200000

__all__ = ['IncidenceStructure', 'VerifiedDesign', 'verify_2design', 'orbit_design',
           'find_base_block', 'action_on_blocks', 'is_flag_transitive', 'subdegree_report',
           'CatalogEntry', 'CatalogCheck', 'table1_catalog', 'verify_catalog_entry',
           'verify_catalog']


@dataclass(frozen=True)
class VerifiedDesign:
    """Parameters read off the incidence data, never taken from input."""

    structure: IncidenceStructure
    params: Optional[DesignParams]
    trivial: bool
    simple: bool

    @property
    def r_prime(self) -> bool:
        return self.params is not None and is_prime(self.params.r)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': self.params.to_dict() if self.params else None,
            'trivial': self.trivial,
            'simple': self.simple,
            'r_prime': self.r_prime,
        }


def _derive_params(s: IncidenceStructure) -> DesignParams:
    if s.num_blocks == 0:
        raise NotADesign("the structure has no blocks", {'v': s.num_points})
    n = s.incidence_matrix()
    sizes = n.sum(axis=0)
    bad = np.flatnonzero(sizes != sizes[0])
    if bad.size:
        j = int(bad[0])
        raise NotADesign(f"block {list(s.blocks[j])} has size {int(sizes[j])}, expected {int(sizes[0])}",
                         {'block': list(s.blocks[j])})
    degrees = n.sum(axis=1)
    bad = np.flatnonzero(degrees != degrees[0])
    if bad.size:
        x = int(bad[0])
        raise NotADesign(f"point {x} lies on {int(degrees[x])} blocks, expected {int(degrees[0])}",
                         {'point': x})
    v = s.num_points
    lam = 0
    if v >= 2:
        gram = n @ n.T
        upper = np.triu_indices(v, 1)
        pairs = gram[upper]
        lam = int(pairs[0])
        bad = np.flatnonzero(pairs != lam)
        if bad.size:
            i, j = int(upper[0][bad[0]]), int(upper[1][bad[0]])
            raise NotADesign(f"points {i} and {j} lie on {int(gram[i, j])} common blocks, expected {lam}",
                             {'pair': [i, j]})
    return DesignParams(v, s.num_blocks, int(degrees[0]), int(sizes[0]), lam)


def verify_2design(s: IncidenceStructure) -> VerifiedDesign:
    """Check constant k, r and lambda; trivial designs come back flagged, not raised."""
    try:
        params = _derive_params(s)
    except NotADesign:
        if s.num_points < 4:
            return VerifiedDesign(s, None, True, s.is_simple())
        raise
    trivial = s.num_points < 4 or not params.nontrivial
    return VerifiedDesign(s, params, trivial, s.is_simple())


def orbit_design(g: PermutationGroup, base_block: Sequence[int]) -> IncidenceStructure:
    """The blocks are the images of base_block under g."""
    if not g.is_transitive():
        raise NotTransitive("orbit designs need a point-transitive group", {'degree': g.degree})
    start = frozenset(base_block)
    if any(not 0 <= x < g.degree for x in start):
        raise PointOutOfRange(f"base block {sorted(start)} leaves 0..{g.degree - 1}",
                              {'block': sorted(start)})
    if not start or len(start) == g.degree:
        raise NotADesign("the base block must be a nonempty proper subset",
                         {'block': sorted(start)})
    return IncidenceStructure.from_blocks(g.degree, _set_orbit(g, start))


def _set_orbit(g: PermutationGroup, start: frozenset, limit: Optional[int] = None) -> List[frozenset]:
    seen = {start}
    queue = deque([start])
    while queue:
        block = queue.popleft()
        for gen in g.generators:
            image = gen.image_of_set(block)
            if image not in seen:
                seen.add(image)
                if limit is not None and len(seen) > limit:
                    return list(seen)
                queue.append(image)
    return list(seen)


def find_base_block(g: PermutationGroup, k: int, lam: int,
                    max_candidates: int = DEFAULT_MAX_CANDIDATES) -> Optional[Block]:
    """Lexicographically least k-subset containing 0 whose orbit is a 2-(v, k, lam) design.

    Returns None when no subset qualifies or the candidate limit is reached.
    """
    v = g.degree
    if not g.is_transitive():
        raise NotTransitive("base block search needs a point-transitive group", {'degree': v})
    if not 2 < k < v - 1 or (lam * (v - 1)) % (k - 1):
        return None
    r = lam * (v - 1) // (k - 1)
    if (v * r) % k:
        return None
    b = v * r // k
    for tried, rest in enumerate(combinations(range(1, v), k - 1)):
        if tried >= max_candidates:
            logger.warning("base block search stopped after %d candidates", tried)
            return None
        start = frozenset((0,) + rest)
        orbit = _set_orbit(g, start, limit=b)
        if len(orbit) != b:
            continue
        design = IncidenceStructure.from_blocks(v, orbit)
        try:
            params = _derive_params(design)
        except NotADesign:
            continue
        if params.lam == lam:
            logger.debug("base block %s found after %d candidates", (0,) + rest, tried + 1)
            return (0,) + rest
    return None


def _block_images(g: PermutationGroup, s: IncidenceStructure) -> List[Permutation]:
    if g.degree != s.num_points:
        raise NotAnAutomorphismGroup(f"group degree {g.degree} differs from v = {s.num_points}",
                                     {'degree': g.degree, 'v': s.num_points})
    index = s.block_index()
    perms = []
    for gen in g.generators:
        images = []
        for block in s.blocks:
            image = gen.image_of_set(block)
            if image not in index:
                raise NotAnAutomorphismGroup(f"{gen} maps block {list(block)} to a non-block",
                                             {'generator': str(gen), 'block': list(block)})
            images.append(index[image])
        perms.append(Permutation(images))
    return perms


def action_on_blocks(g: PermutationGroup, s: IncidenceStructure) -> PermutationGroup:
    """The induced permutation group on block indices."""
    return PermutationGroup(_block_images(g, s), degree=s.num_blocks, max_degree=g.max_degree)


def is_flag_transitive(g: PermutationGroup, s: IncidenceStructure) -> bool:
    on_blocks = _block_images(g, s)
    flags = [(x, j) for j, block in enumerate(s.blocks) for x in block]
    if not flags:
        return False
    sizes = {len(b) for b in s.blocks}
    degrees = {len(s.blocks_through(x)) for x in range(s.num_points)}
    # point and block transitivity force constant k and r
    if len(sizes) != 1 or len(degrees) != 1:
        return False
    seen = {flags[0]}
    queue = deque([flags[0]])
    while queue:
        x, j = queue.popleft()
        for gen, block_perm in zip(g.generators, on_blocks):
            image = (gen(x), block_perm(j))
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen) == len(flags)


def subdegree_report(g: PermutationGroup, r: int) -> Dict[str, Any]:
    """Subdegrees of a transitive group and whether r divides each nontrivial one."""
    degrees = g.subdegrees(0)
    nontrivial = degrees[1:]
    return {'subdegrees': degrees, 'r_divides_subdegrees': all(d % r == 0 for d in nontrivial)}


# the small examples

@dataclass(frozen=True)
class CatalogEntry:
    line: int
    socle: str
    stabilizer: str
    degree: int
    generators: Tuple[Permutation, ...]
    k: int
    lam: int
    expected: DesignParams
    group_order: int
    blocks: Optional[Tuple[Block, ...]] = None

    def group(self) -> PermutationGroup:
        return PermutationGroup(self.generators, degree=self.degree)


@dataclass
class CatalogCheck:
    entry: CatalogEntry
    verified: Optional[VerifiedDesign] = None
    base_block: Optional[Block] = None
    order: int = 0
    transitive: bool = False
    primitive: bool = False
    flag_transitive: bool = False
    subdegrees: List[int] = field(default_factory=list)
    r_divides_subdegrees: bool = False
    snapshot_drift: bool = False

    @property
    def ok(self) -> bool:
        params = self.verified.params if self.verified else None
        return (params == self.entry.expected and self.order == self.entry.group_order
                and self.transitive and self.primitive and self.flag_transitive
                and self.r_divides_subdegrees)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'line': self.entry.line,
            'socle': self.entry.socle,
            'stabilizer': self.entry.stabilizer,
            'expected': self.entry.expected.to_dict(),
            'design': self.verified.to_dict() if self.verified else None,
            'base_block': list(self.base_block) if self.base_block else None,
            'group_order': self.order,
            'transitive': self.transitive,
            'primitive': self.primitive,
            'flag_transitive': self.flag_transitive,
            'subdegrees': self.subdegrees,
            'r_divides_subdegrees': self.r_divides_subdegrees,
            'snapshot_drift': self.snapshot_drift,
            'ok': self.ok,
        }


def _cycles(degree: int, *cycles: Sequence[Sequence[int]]) -> Tuple[Permutation, ...]:
    return tuple(Permutation.from_cycles(c, degree) for c in cycles)


def _matrix_entry(line: int, socle: str, stabilizer: str, matrices, d: int, flat_dim: int,
                  expected: Tuple[int, int, int, int, int], order: int) -> CatalogEntry:
    points = pg_points(d, 2)
    group = induced_action(matrices, points, 2)
    params = DesignParams(*expected)
    return CatalogEntry(line, socle, stabilizer, len(points), tuple(group.generators),
                        params.k, params.lam, params, order, tuple(pg_flats(d, 2, flat_dim)))


def table1_catalog() -> List[CatalogEntry]:
    """Generators and parameters of the eight small examples with prime r."""
    gl42 = gl_generators(4, 2)
    entries = [
        CatalogEntry(1, 'Alt5', 'D10', 6, _cycles(6, [(0, 1, 2, 3, 4)], [(0, 5), (1, 4)]),
                     3, 2, DesignParams(6, 10, 5, 3, 2), 60),
        _matrix_entry(2, 'PSL3(2)', 'S4', gl_generators(3, 2), 2, 1, (7, 7, 3, 3, 1), 168),
        CatalogEntry(3, 'PSL2(7)', '7:3', 8,
                     _cycles(8, [(0, 1, 2, 3, 4, 5, 6)], [(0, 7), (1, 6), (2, 3), (4, 5)]),
                     4, 3, DesignParams(8, 14, 7, 4, 3), 168),
        CatalogEntry(4, 'PSL2(11)', 'Alt5', 11,
                     _cycles(11, [tuple(range(11))], [(2, 5), (4, 7), (6, 8), (9, 10)]),
                     5, 2, DesignParams(11, 11, 5, 5, 2), 660),
        CatalogEntry(5, 'M11', 'PSL2(11)', 12,
                     _cycles(12, [tuple(range(11))], [(4, 9), (5, 11), (6, 7), (8, 10)]),
                     6, 5, DesignParams(12, 22, 11, 6, 5), 7920),
        _matrix_entry(6, 'Alt7', 'PSL2(7)', ALT7_IN_GL42, 3, 2, (15, 15, 7, 7, 3), 2520),
    ]
    # lines 7 and 8 share the design of points and lines of PG(3,2)
    entries.append(_matrix_entry(7, 'Alt7', 'PSL2(7)', ALT7_IN_GL42, 3, 1,
                                 (15, 35, 7, 3, 1), 2520))
    entries.append(_matrix_entry(8, 'Alt8', '2^3:PSL3(2)', gl42, 3, 1, (15, 35, 7, 3, 1), 20160))
    return entries


def verify_catalog_entry(entry: CatalogEntry, frozen_block: Optional[Sequence[int]] = None,
                         max_candidates: int = DEFAULT_MAX_CANDIDATES) -> CatalogCheck:
    """Rebuild the design of one catalog line and check every claimed property."""
    g = entry.group()
    check = CatalogCheck(entry)
    if entry.blocks is not None:
        structure = IncidenceStructure.from_blocks(entry.degree, entry.blocks)
    else:
        check.base_block = find_base_block(g, entry.k, entry.lam, max_candidates)
        if check.base_block is None:
            logger.warning("line %d: no base block found", entry.line)
            return check
        if frozen_block is not None and tuple(frozen_block) != check.base_block:
            logger.warning("line %d: base block %s differs from the frozen %s",
                           entry.line, list(check.base_block), list(frozen_block))
            check.snapshot_drift = True
        structure = orbit_design(g, check.base_block)
    check.verified = verify_2design(structure)
    check.order = g.order().value
    check.transitive = g.is_transitive()
    if check.transitive:
        check.primitive = g.is_primitive()
        check.flag_transitive = is_flag_transitive(g, structure)
        report = subdegree_report(g, entry.expected.r)
        check.subdegrees = report['subdegrees']
        check.r_divides_subdegrees = report['r_divides_subdegrees']
    logger.debug("line %d: %s", entry.line, check.to_dict())
    return check


def verify_catalog(entries: Sequence[CatalogEntry], frozen: Optional[Dict[int, Sequence[int]]] = None,
                   threads: int = 1, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> List[CatalogCheck]:
    """Check every line, in parallel when threads > 1; results keep catalog order."""
    frozen = frozen or {}

    def run(entry: CatalogEntry) -> CatalogCheck:
        return verify_catalog_entry(entry, frozen.get(entry.line), max_candidates)

    if threads <= 1:
        return [run(e) for e in entries]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, entries))
