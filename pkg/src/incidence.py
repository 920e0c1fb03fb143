"""
Incidence structures: a point count and a list of blocks.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np

from src.errors import NotADesign, PointOutOfRange

Block = Tuple[int, ...]


@dataclass(frozen=True)
class IncidenceStructure:
    """Points 0..num_points-1 and blocks stored sorted, in canonical order."""

    num_points: int
    blocks: Tuple[Block, ...]
    multiset: bool = False

    def __post_init__(self):
        canonical = []
        for block in self.blocks:
            points = tuple(sorted(block))
            if not points:
                raise NotADesign("empty block", {'blocks': len(canonical)})
            if len(set(points)) != len(points):
                raise NotADesign(f"block {list(points)} repeats a point", {'block': list(points)})
            if points[0] < 0 or points[-1] >= self.num_points:
                raise PointOutOfRange(f"block {list(points)} leaves 0..{self.num_points - 1}",
                                      {'block': list(points), 'num_points': self.num_points})
            canonical.append(points)
        canonical.sort()
        if not self.multiset and len(set(canonical)) != len(canonical):
            raise NotADesign("repeated blocks in a structure not flagged as a multiset")
        object.__setattr__(self, 'blocks', tuple(canonical))

    @classmethod
    def from_blocks(cls, num_points: int, blocks: Iterable[Iterable[int]],
                    multiset: bool = False) -> 'IncidenceStructure':
        return cls(num_points, tuple(tuple(b) for b in blocks), multiset)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_index(self) -> Dict[frozenset, int]:
        """Map from block (as a set) to its position."""
        return {frozenset(b): i for i, b in enumerate(self.blocks)}

    def blocks_through(self, point: int) -> List[int]:
        return [i for i, b in enumerate(self.blocks) if point in b]

    def incidence_matrix(self) -> np.ndarray:
        """The v x b 0/1 matrix, rows indexed by points."""
        matrix = np.zeros((self.num_points, self.num_blocks), dtype=np.int64)
        for j, block in enumerate(self.blocks):
            matrix[list(block), j] = 1
        return matrix

    def is_simple(self) -> bool:
        return len(set(self.blocks)) == len(self.blocks)

    def to_dict(self) -> Dict[str, Any]:
        return {'v': self.num_points, 'blocks': [list(b) for b in self.blocks]}
