"""Named families: power cubes, near-k-cubes, direct sums, and the tight
product example whose k-th frequency approaches 1/2 from below.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .family import MAX_GROUND_SET_SIZE, SetFamily, SetMask, elements_of, mask_of


def power_cube(d: int) -> SetFamily:
    """All 2^d subsets of [d].  Union-closed; every element has frequency 1/2."""
    if not 0 <= d <= MAX_GROUND_SET_SIZE:
        raise ValueError(f"dimension {d} outside 0..{MAX_GROUND_SET_SIZE}")
    return SetFamily(d, tuple(range(1 << d)))


@dataclass(frozen=True)
class NearKCubeSpec:
    """Parameters of a near-k-cube: the full cube on [k-1] plus the single
    extra set [k-1] ∪ extra, where extra is nonempty and disjoint from [k-1]."""

    k: int
    extra: SetMask

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k={self.k} must be at least 1")
        if self.extra == 0:
            raise ValueError("extra must be nonempty (the extra set must strictly contain [k-1])")
        low = (1 << (self.k - 1)) - 1
        if self.extra & low:
            raise ValueError(f"extra elements {elements_of(self.extra & low)} overlap [k-1]")


def near_k_cube(k: int, extra: SetMask | None = None) -> SetFamily:
    """The cube 2^[k-1] plus one strictly larger set.

    This family has 2^(k-1) + 1 members and its k-th frequency is exactly
    1/(2^(k-1) + 1) — the equality case of the k-th frequency bound.  The
    extra elements default to {k}.
    """
    spec = NearKCubeSpec(k, extra if extra is not None else mask_of([k]))
    low = (1 << (spec.k - 1)) - 1
    n = max(spec.extra.bit_length(), spec.k - 1)
    if n > MAX_GROUND_SET_SIZE:
        raise ValueError(f"ground set size {n} exceeds {MAX_GROUND_SET_SIZE}")
    members = list(range(low + 1)) + [low | spec.extra]
    return SetFamily.from_masks(members, n)


def direct_sum(parts: list[SetFamily]) -> SetFamily:
    """Family of all unions picking one member from each part.

    Part ground sets are shifted into consecutive disjoint index ranges, so
    supports never overlap and the member count is the product of the part
    sizes.  An element's frequency equals its frequency within its own part.
    """
    if not parts:
        raise ValueError("direct_sum needs at least one part")
    total = sum(p.n for p in parts)
    if total > MAX_GROUND_SET_SIZE:
        raise ValueError(f"combined ground set size {total} exceeds {MAX_GROUND_SET_SIZE}")
    offsets = []
    off = 0
    for p in parts:
        offsets.append(off)
        off += p.n
    members = []
    for choice in product(*(p.members for p in parts)):
        mask = 0
        for part_mask, shift in zip(choice, offsets):
            mask |= part_mask << shift
        members.append(mask)
    return SetFamily.from_masks(members, total)


def nagel_example(n: int, k: int) -> SetFamily:
    """Direct sum of k-1 blocks, each the sets through a starred point plus ∅.

    Each block lives on n+1 elements (the starred one first) and has 2^n + 1
    members, so the sum has (2^n + 1)^(k-1) members.  The k-1 starred elements
    have frequency 2^n/(2^n+1); every other element has frequency
    2^(n-1)/(2^n+1), which is the k-th frequency and equals
    1/2 - 1/(2·m^(1/(k-1))) < 1/2.
    """
    if n < 1:
        raise ValueError(f"block parameter n={n} must be at least 1")
    if k < 2:
        raise ValueError(f"k={k} must be at least 2")
    if (n + 1) * (k - 1) > MAX_GROUND_SET_SIZE:
        raise ValueError(f"ground set size {(n + 1) * (k - 1)} exceeds {MAX_GROUND_SET_SIZE}")
    # Block over [n+1], starred element 1: ∅ plus every set containing 1.
    block = SetFamily.from_masks([0] + [1 | (t << 1) for t in range(1 << n)], n + 1)
    return direct_sum([block] * (k - 1))
