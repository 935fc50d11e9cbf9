"""Bitmask set families over a small ground set, with exact rational frequencies.

A subset of the ground set [n] = {1, ..., n} is an integer mask with element
i stored on bit i-1, so union, intersection and difference are single-word
bit operations.  A family is an immutable, sorted, deduplicated tuple of such
masks; all frequencies are `fractions.Fraction`, never floats, so equality
cases can be classified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, NamedTuple

#: Masks must fit in one machine word; desk-scale verification needs far less.
MAX_GROUND_SET_SIZE = 62

#: Support size limit for the factorial relabeling search in canonical_form.
MAX_CANONICAL_SUPPORT = 8

SetMask = int


def mask_of(elements: Iterable[int]) -> SetMask:
    """Mask with the given 1-based elements set."""
    mask = 0
    for e in elements:
        if e < 1 or e > MAX_GROUND_SET_SIZE:
            raise ValueError(f"element {e} outside 1..{MAX_GROUND_SET_SIZE}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: SetMask) -> tuple[int, ...]:
    """1-based elements of a mask, ascending."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of subsets of [n], sorted by mask value.

    ``n`` may be 0, in which case the only possible family is {∅}; this keeps
    degenerate corners (empty power cube, canonical form of {∅}) total.
    """

    n: int
    members: tuple[SetMask, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_GROUND_SET_SIZE:
            raise ValueError(f"ground set size {self.n} outside 0..{MAX_GROUND_SET_SIZE}")
        if not self.members:
            raise ValueError("a family must contain at least one set")
        full = (1 << self.n) - 1
        prev = -1
        for mask in self.members:
            if mask <= prev:
                raise ValueError("members must be strictly increasing (no duplicates)")
            if mask & ~full:
                raise ValueError(f"set {elements_of(mask)} does not fit in ground set [{self.n}]")
            prev = mask

    @classmethod
    def from_masks(cls, masks: Iterable[SetMask], n: int) -> "SetFamily":
        """Build a family from masks in any order, deduplicating."""
        return cls(n, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int) -> "SetFamily":
        """Build a family from element iterables, deduplicating."""
        return cls.from_masks((mask_of(s) for s in sets), n)

    @property
    def m(self) -> int:
        """Number of member sets."""
        return len(self.members)

    def __contains__(self, mask: SetMask) -> bool:
        return mask in set(self.members)

    def __iter__(self):
        return iter(self.members)


class Projection(NamedTuple):
    """A projected family together with the frequency order used to pick
    which elements were removed (``order[j]`` is the element of rank j+1)."""

    family: SetFamily
    order: tuple[int, ...]


def is_union_closed(family: SetFamily) -> bool:
    """True iff the union of every pair of members is again a member."""
    members = family.members
    mset = set(members)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a | b not in mset:
                return False
    return True


def union_closure(generators: Iterable[SetMask], n: int) -> SetFamily:
    """Smallest union-closed family containing the generators.

    Fixpoint of pairwise unions; needs at least one generator so the result
    is a nonempty family.
    """
    gens = set(generators)
    if not gens:
        raise ValueError("union_closure needs at least one generator")
    full = (1 << n) - 1
    for g in gens:
        if g & ~full:
            raise ValueError(f"generator {elements_of(g)} does not fit in [{n}]")
    closed: set[int] = set(gens)
    frontier = list(gens)
    while frontier:
        snapshot = list(closed)
        fresh: set[int] = set()
        for s in frontier:
            for t in snapshot:
                u = s | t
                if u not in closed:
                    fresh.add(u)
        closed |= fresh
        frontier = list(fresh)
    return SetFamily(n, tuple(sorted(closed)))


def normalize_with_empty(family: SetFamily) -> SetFamily:
    """Insert ∅ if absent.  Preserves union-closure and never increases any
    element frequency, so it is the adversarial normalization for bound checks."""
    if family.members[0] == 0:
        return family
    return SetFamily(family.n, (0,) + family.members)


def frequency(family: SetFamily, element: int) -> Fraction:
    """Exact fraction of members containing the element."""
    if not 1 <= element <= family.n:
        raise ValueError(f"element {element} outside ground set [{family.n}]")
    bit = 1 << (element - 1)
    hits = sum(1 for s in family.members if s & bit)
    return Fraction(hits, family.m)


def frequencies(family: SetFamily) -> tuple[Fraction, ...]:
    """Frequency of every element 1..n, in element order."""
    m = family.m
    counts = [0] * family.n
    for s in family.members:
        e = 0
        while s:
            if s & 1:
                counts[e] += 1
            s >>= 1
            e += 1
    return tuple(Fraction(c, m) for c in counts)


def frequency_order(family: SetFamily) -> tuple[int, ...]:
    """Elements sorted by frequency, nonincreasing; ties broken by smaller index."""
    freqs = frequencies(family)
    return tuple(sorted(range(1, family.n + 1), key=lambda i: (-freqs[i - 1], i)))


def kth_frequency(family: SetFamily, k: int) -> Fraction:
    """The k-th largest element frequency (k-th entry of the frequency order)."""
    if not 1 <= k <= family.n:
        raise ValueError(f"k={k} outside 1..{family.n}")
    return frequency(family, frequency_order(family)[k - 1])


def support(family: SetFamily) -> SetMask:
    """Union of all members."""
    out = 0
    for s in family.members:
        out |= s
    return out


def relabel(family: SetFamily, order: tuple[int, ...]) -> SetFamily:
    """Permute labels so that old element ``order[j]`` becomes element j+1."""
    if sorted(order) != list(range(1, family.n + 1)):
        raise ValueError("order must be a permutation of 1..n")
    remapped = []
    for s in family.members:
        t = 0
        for new_pos, old in enumerate(order):
            if s >> (old - 1) & 1:
                t |= 1 << new_pos
        remapped.append(t)
    return SetFamily.from_masks(remapped, family.n)


def project_away_top(family: SetFamily, k: int) -> Projection:
    """Delete the k-1 most frequent elements from every member.

    The elements removed are the first k-1 of the frequency order (ties by
    index); labels are otherwise untouched, so k=1 returns the family as is.
    The projection of a union-closed family is union-closed.
    """
    if not 1 <= k <= family.n + 1:
        raise ValueError(f"k={k} outside 1..{family.n + 1}")
    order = frequency_order(family)
    drop = mask_of(order[:k - 1])
    projected = SetFamily.from_masks((s & ~drop for s in family.members), family.n)
    return Projection(projected, order)


def preimage_sizes(family: SetFamily, k: int) -> tuple[int, ...]:
    """How many members map onto each projected set, largest first.

    Values sum to m and each is at most 2^(k-1), since a projected set can
    only be hit by subsets of the k-1 deleted elements.
    """
    if not 1 <= k <= family.n + 1:
        raise ValueError(f"k={k} outside 1..{family.n + 1}")
    order = frequency_order(family)
    drop = mask_of(order[:k - 1])
    counts: dict[int, int] = {}
    for s in family.members:
        key = s & ~drop
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.values(), reverse=True))


def projected_frequency_bound(f: int, p: int, k: int) -> Fraction:
    """Lower bound f / (f + 2^(k-1)·(p-f)) on the frequency, in the original
    family, of an element contained in f of the p projected sets.

    For f >= p/2 this is at least 1/(1 + 2^(k-1)).
    """
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    if f <= 0 or f > p:
        raise ValueError(f"need 0 < f <= p, got f={f}, p={p}")
    return Fraction(f, f + 2 ** (k - 1) * (p - f))


def canonical_form(family: SetFamily) -> SetFamily:
    """Lexicographically least relabeling of the family restricted to its support.

    Two families are isomorphic (equal up to relabeling, ignoring unused
    padding elements) iff their canonical forms are equal.  Factorial search,
    so the support may hold at most 8 elements.
    """
    supp = elements_of(support(family))
    s = len(supp)
    if s > MAX_CANONICAL_SUPPORT:
        raise ValueError(f"support size {s} exceeds canonical-form limit {MAX_CANONICAL_SUPPORT}")
    best: tuple[int, ...] | None = None
    for perm in permutations(range(s)):
        relabeled = []
        for mask in family.members:
            t = 0
            for i, e in enumerate(supp):
                if mask >> (e - 1) & 1:
                    t |= 1 << perm[i]
            relabeled.append(t)
        cand = tuple(sorted(relabeled))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return SetFamily(s, best)
