"""
File formats: design JSON, generator files, cycle notation, CSV, snapshots.
"""

import csv
import hashlib
import json
import logging
import os
import re
from typing import IO, Any, Dict, Iterable, List, Optional, Sequence, Union

from src.errors import FlagrepError, FormatError
from src.incidence import IncidenceStructure
from src.permgroup import Permutation, PermutationGroup

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r'\(([^()]*)\)')


def _read_json(path: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}", {'path': path}) from e
    except json.JSONDecodeError as e:
        raise FormatError(f"{path} is not valid JSON: {e}", {'path': path}) from e


def _write_json(path: str, data: Any):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, sort_keys=True, indent=2)
        f.write('\n')


def design_from_dict(data: Any, source: str = "<input>") -> IncidenceStructure:
    if not isinstance(data, dict) or not isinstance(data.get('v'), int) \
            or not isinstance(data.get('blocks'), list):
        raise FormatError(f"{source}: expected {{\"v\": int, \"blocks\": [[...]]}}", {'path': source})
    blocks = data['blocks']
    if not all(isinstance(b, list) and all(isinstance(x, int) for x in b) for b in blocks):
        raise FormatError(f"{source}: every block must be a list of integers", {'path': source})
    try:
        return IncidenceStructure.from_blocks(data['v'], blocks, bool(data.get('multiset', False)))
    except FlagrepError as e:
        raise FormatError(f"{source}: {e.message}", dict(e.context, path=source)) from e


def load_design(path: str) -> IncidenceStructure:
    """Read a design from `{"v": int, "blocks": [[...]]}` with 0-based points."""
    return design_from_dict(_read_json(path), path)


def save_design(path: str, structure: IncidenceStructure):
    _write_json(path, structure.to_dict())


def incidence_text(structure: IncidenceStructure) -> str:
    """0/1 rows for points, one column per block."""
    matrix = structure.incidence_matrix()
    return "\n".join("".join(str(int(x)) for x in row) for row in matrix)


def parse_cycles(text: str, degree: int, one_based: bool = True) -> Permutation:
    """Parse `(1 2 3)(4 5)`; commas are accepted as separators, `()` is the identity."""
    stripped = text.strip()
    if _CYCLE.sub('', stripped).strip():
        raise FormatError(f"malformed cycle notation: {text!r}", {'text': text})
    shift = 1 if one_based else 0
    cycles = []
    for body in _CYCLE.findall(stripped):
        tokens = body.replace(',', ' ').split()
        try:
            cycles.append([int(t) - shift for t in tokens])
        except ValueError as e:
            raise FormatError(f"malformed cycle notation: {text!r}", {'text': text}) from e
    try:
        return Permutation.from_cycles([c for c in cycles if c], degree)
    except FlagrepError as e:
        raise FormatError(f"{text!r}: {e.message}", dict(e.context, text=text)) from e


def format_cycles(perm: Permutation, one_based: bool = True) -> str:
    shift = 1 if one_based else 0
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + shift) for x in c) + ")" for c in cycles)


def load_generators(path: str, max_degree: Optional[int] = None) -> PermutationGroup:
    """Read `{"degree": d, "generators": [...]}`; each generator a cycle string or image list."""
    data = _read_json(path)
    if not isinstance(data, dict) or not isinstance(data.get('degree'), int) \
            or not isinstance(data.get('generators'), list):
        raise FormatError(f"{path}: expected {{\"degree\": int, \"generators\": [...]}}", {'path': path})
    degree = data['degree']
    perms = []
    for gen in data['generators']:
        if isinstance(gen, str):
            perms.append(parse_cycles(gen, degree))
        elif isinstance(gen, list) and len(gen) == degree:
            try:
                perms.append(Permutation(gen))
            except FlagrepError as e:
                raise FormatError(f"{path}: {e.message}", dict(e.context, path=path)) from e
        else:
            raise FormatError(f"{path}: generator {gen!r} is neither cycles nor a {degree}-image list",
                              {'path': path})
    kwargs = {'max_degree': max_degree} if max_degree else {}
    return PermutationGroup(perms, degree=degree, **kwargs)


def save_generators(path: str, group: PermutationGroup):
    _write_json(path, {'degree': group.degree,
                       'generators': [format_cycles(g) for g in group.generators]})


def write_csv(target: Union[str, IO[str]], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    """Write rows to a path or an open stream; returns the row count."""
    if isinstance(target, str):
        directory = os.path.dirname(target)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(target, 'w', encoding='utf-8', newline='') as f:
            return write_csv(f, header, rows)
    writer = csv.writer(target, lineterminator='\n')
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow(row)
        count += 1
    return count


def file_digest(path: str) -> str:
    """Calculate MD5 hash of a file."""
    hash_md5 = hashlib.md5()
    try:
        with open(path, "rb") as f:
            for chunk in iter(lambda: f.read(4096), b""):
                hash_md5.update(chunk)
        return hash_md5.hexdigest()
    except OSError as e:
        logger.warning("Error calculating hash for %s: %s", path, e)
        return ""


def load_snapshot(path: str) -> Dict[int, List[int]]:
    """Frozen base blocks keyed by catalog line; empty when the file is absent."""
    if not os.path.exists(path):
        return {}
    data = _read_json(path)
    blocks = data.get('base_blocks') if isinstance(data, dict) else None
    if not isinstance(blocks, dict):
        raise FormatError(f"{path}: expected {{\"base_blocks\": {{line: [...]}}}}", {'path': path})
    try:
        return {int(line): [int(x) for x in block] for line, block in blocks.items()}
    except (TypeError, ValueError) as e:
        raise FormatError(f"{path}: {e}", {'path': path}) from e


def save_snapshot(path: str, blocks: Dict[int, Sequence[int]]):
    _write_json(path, {'base_blocks': {str(line): list(b) for line, b in sorted(blocks.items())}})
