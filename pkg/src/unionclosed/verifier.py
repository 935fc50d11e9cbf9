"""Exhaustive and randomized verification of the k-th frequency lower bound.

Small ground sets are enumerated exhaustively (brute-force filter up to n=4,
orderly depth-first generation with closure pruning for n=5); every family is
checked against the exact threshold 1/(2^(k-1)+1) and equality cases are
classified up to relabeling.  Random families come from a seeded Mersenne
Twister so every run is reproducible.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .constructions import near_k_cube
from .family import (SetFamily, canonical_form, is_union_closed, kth_frequency,
                     mask_of, normalize_with_empty, support, union_closure)
from .formats import family_to_text


def nagel_threshold(k: int) -> Fraction:
    """The conjectured (and, for k >= 2, proven) lower bound 1/(2^(k-1)+1)."""
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    return Fraction(1, 2 ** (k - 1) + 1)


@dataclass(frozen=True)
class NagelCheck:
    k: int
    kth_freq: Fraction
    threshold: Fraction
    status: str  # "strict" | "equality" | "violation"


def check_nagel(family: SetFamily, k: int, assume_union_closed: bool = False) -> NagelCheck:
    """Exact comparison of the k-th frequency against 1/(2^(k-1)+1).

    The union-closure precondition is verified unless the caller vouches for
    it (enumerated or constructed families); the support must have at least k
    elements.  For k >= 2 a "violation" status can never occur on a
    union-closed family — one would disprove the theorem this tool checks.
    """
    if support(family).bit_count() < k:
        raise ValueError(f"support has fewer than k={k} elements")
    if not assume_union_closed and not is_union_closed(family):
        raise ValueError("family is not union-closed")
    f = kth_frequency(family, k)
    t = nagel_threshold(k)
    if f == t:
        status = "equality"
    elif f > t:
        status = "strict"
    else:
        status = "violation"
    return NagelCheck(k=k, kth_freq=f, threshold=t, status=status)


# --------------------------------------------------------------------------
# Range classification (which size regime proves the bound for a given m, k)
# --------------------------------------------------------------------------

_LARGE_CUTOFFS = {2: 4, 3: 6, 4: 14}


def _large_cutoff(k: int) -> int:
    """Smallest m covered by the large-family (entropy) regime."""
    if k in _LARGE_CUTOFFS:
        return _LARGE_CUTOFFS[k]
    # The 2.71 exponent is the published literal; recomputing it from the
    # entropy ratio is exposed separately via simple_size_bound.
    return math.ceil(2.0 ** (2.71 * (k - 1)))


@dataclass(frozen=True)
class RangeTag:
    """Which proof regimes apply to a family of m sets at a given k.

    ``intervals`` lists each applicable regime with its m-interval
    (upper bound None means unbounded).
    """

    tag: str  # "small" | "medium" | "large" | "multiple"
    intervals: tuple[tuple[str, int, int | None], ...]


def classify_range(m: int, k: int) -> RangeTag:
    """Tag (m, k) with the applicable regimes: small (m <= 2^k + 1, counting,
    carries the equality classification), medium (k >= 5, 2^k + 2 <= m <=
    2^(3(k-1)), cover certificates), large (entropy size bound).

    For k = 5 the medium regime internally splits at m = 2^(17/2): below it
    the plain 1/(2·log2 m) estimate suffices, above it the slack in
    m - 2^(k-1) > (15/16)·m takes over; both land strictly above 1/17.
    """
    if k < 2:
        raise ValueError(f"k={k} must be at least 2")
    if m < 1:
        raise ValueError(f"m={m} must be at least 1")
    rows: list[tuple[str, int, int | None]] = []
    if m <= 2 ** k + 1:
        rows.append(("small", 1, 2 ** k + 1))
    if k >= 5 and 2 ** k + 2 <= m <= 2 ** (3 * (k - 1)):
        rows.append(("medium", 2 ** k + 2, 2 ** (3 * (k - 1))))
    if m >= _large_cutoff(k):
        rows.append(("large", _large_cutoff(k), None))
    if not rows:
        raise AssertionError(f"no regime covers m={m}, k={k}; coverage is supposed to be total")
    tag = rows[0][0] if len(rows) == 1 else "multiple"
    return RangeTag(tag=tag, intervals=tuple(rows))


def full_coverage_check(k_max: int) -> bool:
    """Verify that the three regimes jointly cover every m >= 1 for each
    k in 2..k_max: small meets medium at 2^k + 1, medium reaches past the
    large cutoff for k >= 5, and for k <= 4 the large cutoff overlaps the
    small interval (4..5, 6..9, 14..17)."""
    if not 2 <= k_max <= 30:
        raise ValueError(f"k_max={k_max} outside 2..30")
    for k in range(2, k_max + 1):
        small_hi = 2 ** k + 1
        if k <= 4:
            if _large_cutoff(k) > small_hi:
                return False
        else:
            if small_hi < (2 ** k + 2) - 1:
                return False
            if 2 ** (3 * (k - 1)) < _large_cutoff(k):
                return False
    return True


# --------------------------------------------------------------------------
# Enumeration of union-closed families on tiny ground sets
# --------------------------------------------------------------------------

def enumerate_union_closed(n: int, require_empty: bool = True,
                           method: str = "auto") -> Iterator[SetFamily]:
    """Yield every union-closed family over [n] exactly once, deterministically.

    ``method="filter"`` tests all 2^(2^n) candidate families (n <= 4);
    ``method="dfs"`` adds sets in decreasing mask order, pruning selections
    whose unions escape — every prefix of a union-closed family in that order
    is itself union-closed, so each family is reached exactly once.  The two
    methods agree set-for-set and serve as mutual oracles.
    """
    if not 1 <= n <= 5:
        raise ValueError(f"n={n} outside 1..5")
    if method == "auto":
        method = "dfs" if n == 5 else "filter"
    if method == "filter":
        if n > 4:
            raise ValueError("filter enumeration is infeasible beyond n=4")
        yield from _enumerate_filter(n, require_empty)
    elif method == "dfs":
        yield from _enumerate_dfs(n, require_empty)
    else:
        raise ValueError(f"unknown method {method!r}")


def _selection_members(selection: int, offset: int) -> list[int]:
    # Bit j of the selection switches on the mask j + offset.
    members = []
    mask = offset
    while selection:
        if selection & 1:
            members.append(mask)
        selection >>= 1
        mask += 1
    return members


def _is_closed(members: Sequence[int]) -> bool:
    mset = set(members)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a | b not in mset:
                return False
    return True


def _enumerate_filter(n: int, require_empty: bool,
                      start: int = 0, stop: int | None = None) -> Iterator[SetFamily]:
    # With ∅ forced in, the 2^n - 1 nonempty masks are free; otherwise all
    # 2^n masks are free and only the empty selection is skipped.
    if require_empty:
        space = 1 << ((1 << n) - 1)
    else:
        space = 1 << (1 << n)
    if stop is None:
        stop = space
    for selection in range(start, min(stop, space)):
        if require_empty:
            members = [0] + _selection_members(selection, 1)
        else:
            if selection == 0:
                continue
            members = _selection_members(selection, 0)
        if _is_closed(members):
            yield SetFamily(n, tuple(members))


def _enumerate_dfs(n: int, require_empty: bool) -> Iterator[SetFamily]:
    members: list[int] = []   # chosen masks, strictly decreasing
    mset: set[int] = set()

    def rec() -> Iterator[SetFamily]:
        if not require_empty or members[-1] == 0:
            yield SetFamily(n, tuple(reversed(members)))
        for s in range(members[-1] - 1, -1, -1):
            # Unions with s exceed s numerically, so they can never be added
            # later; prune unless they are already present.
            ok = True
            for t in members:
                u = s | t
                if u != s and u not in mset:
                    ok = False
                    break
            if ok:
                members.append(s)
                mset.add(s)
                yield from rec()
                mset.discard(s)
                members.pop()

    for top in range((1 << n) - 1, -1, -1):
        members.append(top)
        mset.add(top)
        yield from rec()
        mset.discard(top)
        members.pop()


# --------------------------------------------------------------------------
# The sweep: check every enumerated family, classify equality cases
# --------------------------------------------------------------------------

class SweepViolation(Exception):
    """A failed bound or a non-near-k-cube equality case, with a reproducer."""

    def __init__(self, message: str, family: SetFamily, k: int):
        self.family = family
        self.k = k
        super().__init__(f"{message} (k={k})\nreproducer:\n{family_to_text(family)}")


@dataclass
class SweepReport:
    n: int
    require_empty: bool
    count_enumerated: int = 0
    strict_counts: dict[int, int] = field(default_factory=dict)
    equality_counts: dict[int, int] = field(default_factory=dict)
    equality_families: dict[int, tuple[SetFamily, ...]] = field(default_factory=dict)
    elapsed_seconds: float = 0.0
    complete: bool = True
    jobs: int = 1


@lru_cache(maxsize=None)
def _expected_equality_canonical(k: int, support_size: int) -> SetFamily:
    # Up to relabeling there is exactly one near-k-cube per support size.
    extra = mask_of(range(k, support_size + 1))
    return canonical_form(near_k_cube(k, extra))


def _check_one_family(fam: SetFamily, ks: tuple[int, ...] | None,
                      strict: dict[int, int], equal: dict[int, int],
                      canon_seen: dict[int, dict[SetFamily, None]]) -> None:
    fam = normalize_with_empty(fam)
    # Integer form of the comparison: the k-th largest count c satisfies
    # c/m >= 1/(2^(k-1)+1)  iff  c·(2^(k-1)+1) >= m.  Equality and violation
    # cases fall back to the exact public check for the report.
    counts = [0] * fam.n
    for s in fam.members:
        e = 0
        while s:
            if s & 1:
                counts[e] += 1
            s >>= 1
            e += 1
    counts.sort(reverse=True)
    supp_size = sum(1 for c in counts if c)
    m = fam.m
    wanted = range(2, supp_size + 1) if ks is None else ks
    for k in wanted:
        if not 2 <= k <= supp_size:
            continue
        scaled = counts[k - 1] * (2 ** (k - 1) + 1)
        if scaled < m:
            chk = check_nagel(fam, k, assume_union_closed=True)
            raise SweepViolation(
                f"k-th frequency {chk.kth_freq} below threshold {chk.threshold}", fam, k)
        if scaled == m:
            equal[k] = equal.get(k, 0) + 1
            canon = canonical_form(fam)
            if canon != _expected_equality_canonical(k, supp_size):
                raise SweepViolation("equality family is not a near-k-cube", fam, k)
            canon_seen.setdefault(k, {}).setdefault(canon, None)
        else:
            strict[k] = strict.get(k, 0) + 1


def _sweep_chunk(args: tuple[int, bool, tuple[int, ...] | None, int, int]) -> tuple:
    n, require_empty, ks, start, stop = args
    strict: dict[int, int] = {}
    equal: dict[int, int] = {}
    canon_seen: dict[int, dict[SetFamily, None]] = {}
    count = 0
    for fam in _enumerate_filter(n, require_empty, start, stop):
        count += 1
        _check_one_family(fam, ks, strict, equal, canon_seen)
    return count, strict, equal, {k: tuple(d) for k, d in canon_seen.items()}


def sweep(n: int, ks: Iterable[int] | None = None, require_empty: bool = True,
          jobs: int = 1, budget_seconds: float | None = None) -> SweepReport:
    """Check every enumerated union-closed family over [n] (∅ normalized in
    first, which only lowers frequencies) for every applicable k >= 2.

    Any violation, or any equality family that is not a near-k-cube up to
    relabeling, raises SweepViolation with the offending family in text
    format.  ``jobs`` parallelizes the n <= 4 filter path over selection
    ranges with a deterministic, order-preserving merge; the n = 5 orderly
    search runs in one process and honors ``budget_seconds``.
    """
    ks_tuple = tuple(sorted(set(ks))) if ks is not None else None
    report = SweepReport(n=n, require_empty=require_empty, jobs=jobs)
    started = time.monotonic()

    if jobs > 1 and n <= 4 and budget_seconds is None:
        space = 1 << ((1 << n) - 1) if require_empty else 1 << (1 << n)
        chunk_count = min(space, jobs * 8)
        step = -(-space // chunk_count)
        specs = [(n, require_empty, ks_tuple, lo, min(lo + step, space))
                 for lo in range(0, space, step)]
        canon_merged: dict[int, dict[SetFamily, None]] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for count, strict, equal, canon in pool.map(_sweep_chunk, specs):
                report.count_enumerated += count
                for k, c in strict.items():
                    report.strict_counts[k] = report.strict_counts.get(k, 0) + c
                for k, c in equal.items():
                    report.equality_counts[k] = report.equality_counts.get(k, 0) + c
                for k, fams in canon.items():
                    for f in fams:
                        canon_merged.setdefault(k, {}).setdefault(f, None)
        report.equality_families = {k: tuple(d) for k, d in canon_merged.items()}
    else:
        canon_seen: dict[int, dict[SetFamily, None]] = {}
        for fam in enumerate_union_closed(n, require_empty):
            report.count_enumerated += 1
            _check_one_family(fam, ks_tuple, report.strict_counts,
                              report.equality_counts, canon_seen)
            if budget_seconds is not None and time.monotonic() - started > budget_seconds:
                report.complete = False
                break
        report.equality_families = {k: tuple(d) for k, d in canon_seen.items()}

    report.elapsed_seconds = time.monotonic() - started
    return report


# --------------------------------------------------------------------------
# Seeded random families for property testing
# --------------------------------------------------------------------------

def random_union_closed(n: int, generator_count: int, seed: int) -> SetFamily:
    """Union closure of ``generator_count`` uniform subsets of [n] plus ∅.

    Uses a Mersenne Twister seeded with ``seed`` (``random.Random``), so the
    family is identical across runs and platforms for fixed arguments.
    """
    if not 1 <= n <= 62:
        raise ValueError(f"n={n} outside 1..62")
    if generator_count < 0:
        raise ValueError("generator_count must be nonnegative")
    rng = random.Random(seed)
    gens = [rng.getrandbits(n) for _ in range(generator_count)]
    return union_closure(gens + [0], n)
