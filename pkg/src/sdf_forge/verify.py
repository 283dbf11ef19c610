"""Square-difference-free oracles over the integers and over Z_m.

The two checkers here are the ground truth for the whole pipeline: every
constructed set is re-validated against them. Violations come back as
explicit witnesses (the offending pair plus the square), never as a bare
boolean, so failures are reproducible.

Set file format (shared across the toolkit):
    line 1: ``mod <m>`` or ``int <n>``
    line 2: whitespace-separated elements (may be empty)
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .residue import is_perfect_square, squares_mod

# Above this size check_sdf switches from the quadratic pair scan to the
# difference-indexed scan (per element x, probe x + s for each square s).
PAIR_SCAN_LIMIT = 10_000

# Pair scans on residue sets go through a vectorized any-violation probe
# first once sets get large; the probe decides nothing by itself, a clean
# result short-circuits and a dirty one falls back to the ordered scan.
_BULK_LIMIT = 512


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z_m: distinct elements in {0,...,m-1}, kept sorted."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"invalid modulus {self.modulus}")
        elems = tuple(sorted(set(int(e) for e in self.elements)))
        if elems and not (0 <= elems[0] and elems[-1] < self.modulus):
            raise ValueError(f"elements out of range [0, {self.modulus}): {elems[0]}..{elems[-1]}")
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class IntegerSet:
    """A subset of [n] = {1,...,n}: distinct positive elements, kept sorted."""

    elements: tuple[int, ...]
    universe_bound: int

    def __post_init__(self) -> None:
        if self.universe_bound < 1:
            raise ValueError(f"invalid universe bound {self.universe_bound}")
        elems = tuple(sorted(set(int(e) for e in self.elements)))
        if elems and not (1 <= elems[0] and elems[-1] <= self.universe_bound):
            raise ValueError(
                f"elements outside [1, {self.universe_bound}]: {elems[0]}..{elems[-1]}"
            )
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Violation:
    """A pair x != y whose difference is a square (mod m or over Z).

    For the modular case x - y = witness_root^2 (mod m) and ``square``
    records (x - y) mod m. For the integer case ``square`` is x - y itself
    and witness_root is None.
    """

    x: int
    y: int
    square: int
    witness_root: int | None = None

    def pair(self) -> tuple[int, int]:
        """The violating pair in sorted order (for reporting)."""
        return (min(self.x, self.y), max(self.x, self.y))


class ViolationError(ValueError):
    """Raised when an operation requires a violation-free set but got one."""

    def __init__(self, message: str, violation: Violation):
        super().__init__(f"{message}: {violation}")
        self.violation = violation


def check_sdf(A: IntegerSet, mode: str = "auto") -> Violation | None:
    """Decide whether A is square-difference free over the integers.

    Returns None iff no two distinct elements differ by a perfect square,
    else the first violation under the ascending (smaller element, partner)
    scan. ``mode`` selects the algorithm:

      * ``pairs``   - O(|A|^2) scan of all sorted pairs (the oracle),
      * ``indexed`` - O(|A| * sqrt(n)) membership probes x -> x + s,
      * ``auto``    - ``indexed`` above PAIR_SCAN_LIMIT elements, else ``pairs``.

    Both algorithms return the identical first violation.
    """
    if mode not in ("auto", "pairs", "indexed"):
        raise ValueError(f"unknown mode {mode!r}")
    elems = A.elements
    if len(elems) < 2:
        return None
    if mode == "auto":
        mode = "indexed" if len(elems) > PAIR_SCAN_LIMIT else "pairs"
    if mode == "pairs":
        for i, x in enumerate(elems):
            for y in elems[i + 1 :]:
                d = y - x
                if is_perfect_square(d):
                    return Violation(x=y, y=x, square=d)
        return None
    members = set(elems)
    n = A.universe_bound
    for x in elems:
        a = 1
        while x + a * a <= n:
            if x + a * a in members:
                return Violation(x=x + a * a, y=x, square=a * a)
            a += 1
    return None


def _first_mod_violation(elems: tuple[int, ...], m: int) -> Violation | None:
    table = squares_mod(m)
    is_sq = table.is_square
    root = table.root
    for i, x in enumerate(elems):
        for y in elems[i + 1 :]:
            d = (y - x) % m
            if is_sq[d]:
                return Violation(x=y, y=x, square=d, witness_root=int(root[d]))
            d = (x - y) % m
            if is_sq[d]:
                return Violation(x=x, y=y, square=d, witness_root=int(root[d]))
    return None


def check_sdf_mod(A: ResidueSet) -> Violation | None:
    """Decide whether A is square-difference free mod m.

    Both orientations of every pair are tested (x - y and y - x each reduce
    to their own residue). Returns None iff no ordered difference lands on a
    quadratic residue of Z_m, else the first violation in ascending pair
    order with a witness root a such that a^2 = (x - y) mod m.
    """
    elems = A.elements
    m = A.modulus
    if len(elems) < 2:
        return None
    if len(elems) > _BULK_LIMIT:
        e = np.asarray(elems, dtype=np.int64)
        diffs = (e[None, :] - e[:, None]) % m
        hits = squares_mod(m).is_square[diffs]
        np.fill_diagonal(hits, False)
        if not hits.any():
            return None
    return _first_mod_violation(elems, m)


def mod_implies_integer(A: ResidueSet) -> IntegerSet:
    """Read a square-difference-free set mod m as an SDF subset of [m].

    Residue 0 maps to m (the 1-based convention); every other element is
    kept as-is. Any square difference |x - y| < m of the mapped set would
    already be a square mod m, so the result is SDF over the integers.
    Raises ViolationError (carrying the witness) if A is not SDF mod m.
    """
    violation = check_sdf_mod(A)
    if violation is not None:
        raise ViolationError(f"set is not square-difference free mod {A.modulus}", violation)
    mapped = tuple(e if e != 0 else A.modulus for e in A.elements)
    return IntegerSet(elements=mapped, universe_bound=A.modulus)


def write_set_file(path: str | Path, s: ResidueSet | IntegerSet) -> None:
    """Write a set in the two-line text format (canonical bytes)."""
    if isinstance(s, ResidueSet):
        header = f"mod {s.modulus}"
    else:
        header = f"int {s.universe_bound}"
    body = " ".join(str(e) for e in s.elements)
    Path(path).write_text(f"{header}\n{body}\n", encoding="ascii")


def read_set_file(path: str | Path) -> ResidueSet | IntegerSet:
    """Parse the two-line set format back into a set object."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{path}: empty set file")
    parts = lines[0].split()
    if len(parts) != 2 or parts[0] not in ("mod", "int"):
        raise ValueError(f"{path}: bad header {lines[0]!r}; expected 'mod <m>' or 'int <n>'")
    bound = int(parts[1])
    elements = tuple(int(tok) for tok in lines[1].split()) if len(lines) > 1 else ()
    if parts[0] == "mod":
        return ResidueSet(modulus=bound, elements=elements)
    return IntegerSet(elements=elements, universe_bound=bound)
