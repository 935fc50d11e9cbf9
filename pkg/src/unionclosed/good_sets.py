"""Minimal k-good sets, their witness certificates, and the frequency lower
bound they certify.

A set S avoiding the k-1 most frequent elements is *k-good* when it meets
every member that is not contained in those top elements.  Minimality under
inclusion gives, for each y in S, a witness member whose trace on S is
exactly {y}; unions of witnesses then inject 2^|S| distinct members into the
family, which bounds |S| by log2 m and turns a counting argument into an
exact lower bound on the k-th frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .family import (SetFamily, SetMask, elements_of, frequency_order, mask_of)


@dataclass(frozen=True)
class GoodSetCertificate:
    """A minimal k-good set with per-element witnesses and the bounds it implies.

    ``order`` is the frequency order used to decide which elements count as
    the k-1 most frequent; ``cover`` and the witnesses use original labels.
    ``cover_bound`` is (m - 2^(k-1)) / (m·|cover|) and ``log_bound`` is
    (m - 2^(k-1)) / (m·log2 m); both are 0 when m <= 2^(k-1).
    """

    k: int
    order: tuple[int, ...]
    cover: SetMask
    witnesses: tuple[tuple[int, SetMask], ...]  # (y, member with trace {y} on cover)
    cover_bound: Fraction
    log_bound: float

    @property
    def witness_map(self) -> dict[int, SetMask]:
        return dict(self.witnesses)


def restricted_family(family: SetFamily, k: int) -> tuple[SetMask, ...]:
    """Members not contained in [k-1], assuming elements are already ordered
    by frequency.  Nonempty exactly when the support has at least k elements.

    Returned as a plain tuple of masks since it may be empty.
    """
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    low = (1 << (k - 1)) - 1
    return tuple(s for s in family.members if s & ~low)


def is_k_good(family: SetFamily, k: int, candidate: SetMask) -> bool:
    """True iff the candidate meets every member outside the cube on [k-1].

    The candidate must avoid [k-1]; the family is assumed frequency-ordered.
    """
    low = (1 << (k - 1)) - 1
    if candidate & low:
        raise ValueError(f"candidate contains top elements {elements_of(candidate & low)}")
    return all(s & candidate for s in restricted_family(family, k))


def _top_mask(order: tuple[int, ...], k: int) -> SetMask:
    return mask_of(order[:k - 1])


def minimal_k_good(family: SetFamily, k: int) -> GoodSetCertificate:
    """Build a minimal k-good set by greedy deletion, with witnesses and bounds.

    The k-1 most frequent elements (frequency order, ties by index) are
    excluded; starting from all remaining elements, each is deleted in
    ascending order whenever the rest still meets every restricted member.
    Witness members are chosen by smallest mask value for reproducibility.
    """
    if not 1 <= k <= family.n:
        raise ValueError(f"k={k} outside 1..{family.n}")
    order = frequency_order(family)
    top = _top_mask(order, k)
    restricted = tuple(s for s in family.members if s & ~top)
    if not restricted:
        raise ValueError(f"support of the family has fewer than {k} elements")

    full = (1 << family.n) - 1
    cover = full & ~top
    for e in range(1, family.n + 1):
        bit = 1 << (e - 1)
        if not cover & bit:
            continue
        trial = cover & ~bit
        if all(s & trial for s in restricted):
            cover = trial

    witnesses = []
    for y in elements_of(cover):
        bit = 1 << (y - 1)
        # Minimality: some restricted member is disjoint from cover \ {y}.
        witness = min(s for s in restricted if s & cover == bit)
        witnesses.append((y, witness))

    m = family.m
    excess = m - 2 ** (k - 1)
    if excess > 0:
        cover_bound = Fraction(excess, m * cover.bit_count())
        log_bound = excess / (m * math.log2(m))
    else:
        cover_bound = Fraction(0)
        log_bound = 0.0
    return GoodSetCertificate(k=k, order=order, cover=cover,
                              witnesses=tuple(witnesses),
                              cover_bound=cover_bound, log_bound=log_bound)


def verify_union_injection(family: SetFamily, cert: GoodSetCertificate) -> bool:
    """Check the injection Y -> union of witnesses over Y, for all Y ⊆ cover.

    Each union must trace exactly Y on the cover, belong to the family for
    Y ≠ ∅ (unions of members), and all 2^|cover| values must be distinct,
    which certifies m >= 2^|cover|.  The empty union is ∅ by convention and
    its membership is only required when ∅ is a member anyway.

    A False return means a broken certificate, i.e. an implementation bug.
    """
    mset = set(family.members)
    wit = cert.witness_map
    cover_bits = elements_of(cert.cover)
    if set(wit) != set(cover_bits):
        return False
    for y, w in wit.items():
        if w not in mset or w & cert.cover != 1 << (y - 1):
            return False

    size = len(cover_bits)
    unions = [0] * (1 << size)
    seen = {0}  # F for Y = ∅ is ∅ by the empty-union convention
    for idx in range(1, 1 << size):
        lowbit = idx & -idx
        y = cover_bits[lowbit.bit_length() - 1]
        u = unions[idx & (idx - 1)] | wit[y]
        unions[idx] = u
        trace = 0
        for j, e in enumerate(cover_bits):
            if u >> (e - 1) & 1:
                trace |= 1 << j
        if trace != idx or u not in mset:
            return False
        seen.add(u)
    return len(seen) == 1 << size and (1 << size) <= family.m


def knill_lower_bound(family: SetFamily, k: int) -> Fraction:
    """Certified exact lower bound on the k-th frequency from a minimal
    k-good set: (m - 2^(k-1)) / (m·|cover|).

    The union injection forces |cover| <= log2 m, so this dominates the
    log-form bound (m - 2^(k-1)) / (m·log2 m).  Requires m > 2^(k-1), else
    the bound is vacuous.
    """
    if family.m <= 2 ** (k - 1):
        raise ValueError(f"bound is vacuous: m={family.m} <= 2^(k-1)={2 ** (k - 1)}")
    cert = minimal_k_good(family, k)
    return cert.cover_bound
