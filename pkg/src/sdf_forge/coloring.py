"""Translate covers, least-index colorings, and lower-bound certificates.

A square-difference-free set A inside [n] yields a coloring with no
monochromatic pair at square distance: cover [n] greedily by translates
A + t, color each x by the least translate containing it, and every color
class inherits the SDF property (translation preserves differences). A
validated c-coloring of [n] certifies that the least universe forcing a
monochromatic square difference on every c-coloring is at least n.

The greedy cover keeps exact per-shift coverage counts and updates them
incrementally (integer arithmetic only); each step it takes the shift that
covers the most still-uncovered elements, breaking ties toward the smallest
shift. The averaging argument guarantees at most
floor(((2n-1)/|A|) * ln n) + 1 steps, which stands in for the unquantified
O(n log n / |A|) cover bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construct import (
    BRUTE_FORCE_CHECKED,
    ConstructionCertificate,
    VERIFY_MODULUS_CUTOFF,
)
from .verify import IntegerSet, ResidueSet, mod_implies_integer


@dataclass(frozen=True)
class TranslateCover:
    """Shifts t_1..t_c such that the union of (A + t_i) ∩ [n] is all of [n]."""

    n: int
    base_set: IntegerSet
    shifts: tuple[int, ...]
    covered_check: bool

    def translate_members(self, t: int) -> np.ndarray:
        """Elements of (A + t) ∩ [n], ascending."""
        shifted = np.asarray(self.base_set.elements, dtype=np.int64) + t
        return shifted[(shifted >= 1) & (shifted <= self.n)]


@dataclass(frozen=True)
class Coloring:
    """Least-index coloring of [n] induced by a translate cover.

    assignment has length n + 1 with slot 0 unused; values are colors in
    1..c after compaction (a shift that is never the least index for any x
    contributes no color).
    """

    n: int
    c: int
    assignment: np.ndarray
    provenance: TranslateCover


@dataclass(frozen=True)
class FcCertificate:
    """Witness that some c-coloring of [n] avoids monochromatic square gaps."""

    c: int
    n: int
    coloring_ref: Coloring
    validated: bool
    base_certificate: ConstructionCertificate | None


def translate(A: IntegerSet, t: int, n: int) -> IntegerSet:
    """The translate (A + t) ∩ [n]; may be empty."""
    elements = tuple(x + t for x in A.elements if 1 <= x + t <= n)
    return IntegerSet(elements=elements, universe_bound=n)


def cover_size_bound(n: int, set_size: int) -> int:
    """The greedy guarantee: at most floor(((2n-1)/|A|) * ln n) + 1 shifts."""
    return math.floor((2 * n - 1) / set_size * math.log(n)) + 1


def greedy_cover(A: IntegerSet, n: int) -> TranslateCover:
    """Cover [n] by translates of A, best-coverage-first.

    Every step picks the shift in {-(n-1),...,n-1} whose translate covers
    the most still-uncovered elements (smallest shift on ties). Counts are
    maintained exactly: choosing a shift subtracts each newly covered
    element's contribution from every shift that would have covered it.
    """
    if len(A.elements) == 0:
        raise ValueError("cannot cover with an empty set")
    if A.universe_bound > n or A.elements[-1] > n:
        raise ValueError(f"base set must live inside [{n}]")
    elems = np.asarray(A.elements, dtype=np.int64)
    size = len(elems)
    offset = n - 1  # shift t lives at index t + offset
    ts = np.arange(-(n - 1), n, dtype=np.int64)
    # count(t) = |A ∩ [1-t, n-t]| at the start (everything uncovered)
    counts = np.searchsorted(elems, n - ts, side="right") - np.searchsorted(
        elems, 1 - ts, side="left"
    )
    counts = counts.astype(np.int64)
    uncovered = np.ones(n + 1, dtype=bool)
    uncovered[0] = False
    remaining = n
    shifts: list[int] = []
    limit = cover_size_bound(n, size)
    while remaining > 0:
        idx = int(np.argmax(counts))  # first maximum = smallest shift
        t = idx - offset
        shifted = elems + t
        in_range = shifted[(shifted >= 1) & (shifted <= n)]
        newly = in_range[uncovered[in_range]]
        gain = len(newly)
        if gain != int(counts[idx]) or gain == 0:
            raise AssertionError(f"cover bookkeeping broken at shift {t}: {gain} vs {counts[idx]}")
        uncovered[newly] = False
        remaining -= gain
        shifts.append(t)
        if len(shifts) > limit:
            raise AssertionError(f"greedy exceeded its own bound of {limit} shifts")
        delta = np.bincount((newly[:, None] - elems[None, :]).ravel() + offset, minlength=2 * n - 1)
        counts -= delta
    return TranslateCover(n=n, base_set=A, shifts=tuple(shifts), covered_check=True)


def build_coloring(cover: TranslateCover) -> Coloring:
    """Color each x in [n] by the least i with x in A + t_i, then compact.

    Raises on any uncovered element, naming it.
    """
    if not cover.covered_check:
        raise ValueError("cover has not passed its covered check")
    n = cover.n
    assignment = np.zeros(n + 1, dtype=np.int64)
    for i, t in enumerate(cover.shifts, start=1):
        members = cover.translate_members(t)
        fresh = members[assignment[members] == 0]
        assignment[fresh] = i
    if n >= 1:
        missing = np.flatnonzero(assignment[1:] == 0)
        if len(missing) > 0:
            raise ValueError(f"element {int(missing[0]) + 1} is not covered by any translate")
    used = np.unique(assignment[1:])
    remap = np.zeros(len(cover.shifts) + 1, dtype=np.int64)
    remap[used] = np.arange(1, len(used) + 1)
    assignment = remap[assignment]
    assignment.flags.writeable = False
    return Coloring(n=n, c=len(used), assignment=assignment, provenance=cover)


def validate_coloring(chi: Coloring) -> tuple[int, int] | None:
    """Search for x < y of equal color with y - x a perfect square.

    Scans x ascending, square gaps ascending; returns the first offending
    (x, y) or None. Vectorized per gap, O(n * sqrt(n)) comparisons total.
    """
    n = chi.n
    assignment = chi.assignment
    best: tuple[int, int] | None = None
    a = 1
    while a * a <= n - 1:
        s = a * a
        equal = assignment[1 : n - s + 1] == assignment[1 + s : n + 1]
        hit = int(np.argmax(equal)) if equal.any() else -1
        if hit >= 0:
            x, y = hit + 1, hit + 1 + s
            if best is None or (x, y) < best:
                best = (x, y)
        a += 1
    return best


def _plain_validate(assignment: np.ndarray, n: int) -> tuple[int, int] | None:
    """Reference validator: direct double loop, for cross-checking."""
    for x in range(1, n + 1):
        a = 1
        while x + a * a <= n:
            if assignment[x] == assignment[x + a * a]:
                return (x, x + a * a)
            a += 1
    return None


def trivial_certificate(c: int) -> FcCertificate:
    """The degenerate bound: color each of {1,...,c} its own color."""
    if c < 1:
        raise ValueError(f"c={c}; need c >= 1")
    base = IntegerSet(elements=(1,), universe_bound=c)
    cover = TranslateCover(n=c, base_set=base, shifts=tuple(range(c)), covered_check=True)
    chi = build_coloring(cover)
    return FcCertificate(c=c, n=c, coloring_ref=chi, validated=validate_coloring(chi) is None, base_certificate=None)


def fc_bound(c: int, family: list[ConstructionCertificate]) -> FcCertificate:
    """Best lower-bound certificate achievable with at most c colors.

    Walks the family's grid points n = modulus in ascending order, builds
    the cover and coloring at each, and returns the largest n whose color
    count stays within c, with the coloring validated. Falls back to the
    trivial n = c certificate when no grid point qualifies.

    Every family member must be brute-force checked with modulus at most
    VERIFY_MODULUS_CUTOFF (validation cost stays bounded).
    """
    if c < 1:
        raise ValueError(f"c={c}; need c >= 1")
    if not family:
        raise ValueError("family of certificates must be nonempty")
    for cert in family:
        if cert.verified != BRUTE_FORCE_CHECKED:
            raise ValueError(f"certificate of kind {cert.kind} is not brute-force checked")
        if isinstance(cert.result, ResidueSet) and cert.result.modulus > VERIFY_MODULUS_CUTOFF:
            raise ValueError(f"modulus {cert.result.modulus} beyond validation cutoff")
        if isinstance(cert.result, IntegerSet) and cert.result.universe_bound > VERIFY_MODULUS_CUTOFF:
            raise ValueError(f"universe {cert.result.universe_bound} beyond validation cutoff")
    best: FcCertificate | None = None
    for cert in sorted(family, key=_grid_point):
        n = _grid_point(cert)
        A = cert.result if isinstance(cert.result, IntegerSet) else mod_implies_integer(cert.result)
        chi = build_coloring(greedy_cover(A, n))
        if chi.c > c:
            continue
        violation = validate_coloring(chi)
        if violation is not None:
            raise AssertionError(f"coloring from a checked SDF set has violation {violation}")
        best = FcCertificate(c=c, n=n, coloring_ref=chi, validated=True, base_certificate=cert)
    return best if best is not None else trivial_certificate(c)


def _grid_point(cert: ConstructionCertificate) -> int:
    if isinstance(cert.result, ResidueSet):
        return cert.result.modulus
    return cert.result.universe_bound
