"""Shannon entropy on exact set distributions, the union-entropy ratio, and
the family-size bounds it implies.

Probabilities are exact rationals throughout; entropies are binary64 bits and
all inequality checks use a fixed 1e-9 tolerance, which leaves visible slack
at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .family import SetFamily, SetMask, frequencies, preimage_sizes, project_away_top

#: Tolerance for every floating-point entropy comparison.
COMPARISON_TOLERANCE = 1e-9

#: (3 - sqrt(5))/2: largest alpha for which the union-entropy ratio exceeds 1.
ALPHA_THRESHOLD = (3.0 - math.sqrt(5.0)) / 2.0

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
_LOG2_E = math.log2(math.e)

Real = Union[float, Fraction]
Distribution = dict[SetMask, Fraction]


def below_alpha_threshold(alpha: Real) -> bool:
    """Exact for rationals: alpha < (3-sqrt5)/2  iff  (3-2a)^2 > 5 (with a < 1)."""
    if isinstance(alpha, Fraction):
        return alpha < 1 and (3 - 2 * alpha) ** 2 > 5
    return float(alpha) < ALPHA_THRESHOLD


def binary_entropy(p: Real) -> float:
    """-p log2 p - (1-p) log2(1-p) in bits, with 0 log2 0 = 0."""
    if p < 0 or p > 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    x = float(p)
    h = 0.0
    if 0.0 < x:
        h -= x * math.log2(x)
    if x < 1.0:
        h -= (1.0 - x) * math.log2(1.0 - x)
    return h


def lambda_alpha(alpha: Real) -> float:
    """Entropy ratio H(2a - a^2)/H(a) below the threshold, golden-ratio
    continuation (1+sqrt5)/2 · (1-a) at and above it.

    The ratio exceeds 1 exactly when alpha < (3 - sqrt5)/2; the two branches
    agree at the threshold.
    """
    if alpha <= 0 or alpha >= 1:
        raise ValueError(f"alpha={alpha} outside the open interval (0, 1)")
    if below_alpha_threshold(alpha):
        doubled = alpha * (2 - alpha)  # exact for Fraction inputs
        return binary_entropy(doubled) / binary_entropy(alpha)
    return _GOLDEN * (1.0 - float(alpha))


def simple_size_bound(alpha: Real, k: int) -> float:
    """Upper bound lambda/(lambda-1) · (k-1), in bits, on log2 of the size of
    any union-closed family whose k-th frequency is at most alpha."""
    if k < 2:
        raise ValueError(f"k={k} must be at least 2")
    if not (alpha > 0 and below_alpha_threshold(alpha)):
        raise ValueError(f"alpha={alpha} must lie strictly between 0 and (3-sqrt5)/2")
    lam = lambda_alpha(alpha)
    return lam / (lam - 1.0) * (k - 1)


@dataclass(frozen=True)
class BoundReport:
    alpha: float
    k: int
    lam: float
    simple_bound: float   # bits
    refined_bound: float  # bits
    rho_star: float       # maximizing ratio |projected family| / |family|


def refined_size_bound(alpha: Real, k: int) -> BoundReport:
    """Sharper size bound obtained by treating the projection ratio as a free
    parameter and maximizing; also reports the maximizing ratio rho_star."""
    simple = simple_size_bound(alpha, k)  # validates alpha, k
    lam = lambda_alpha(alpha)
    w = float(2 ** (k - 1))
    ratio = w * (k - 1) / (w - 1.0)
    refined = lam / (lam - 1.0) * ratio - math.log2(lam * ratio * math.e / _LOG2_E) / (lam - 1.0)
    rho_star = _LOG2_E / (lam * ratio)
    return BoundReport(alpha=float(alpha), k=k, lam=lam,
                       simple_bound=simple, refined_bound=refined, rho_star=rho_star)


def distribution_of_uniform(family: SetFamily) -> Distribution:
    """Uniform distribution over the members; its entropy is exactly log2 m."""
    p = Fraction(1, family.m)
    return {mask: p for mask in family.members}


def union_distribution(dist: Distribution) -> Distribution:
    """Exact law of A ∪ B for A, B independent with the given law.

    Convolves all pairs over a common denominator so the accumulation is pure
    integer arithmetic.
    """
    _validate_distribution(dist)
    denom = math.lcm(*(p.denominator for p in dist.values()))
    weights = [(mask, int(p * denom)) for mask, p in dist.items()]
    acc: dict[int, int] = {}
    for a, wa in weights:
        for b, wb in weights:
            key = a | b
            acc[key] = acc.get(key, 0) + wa * wb
    total = denom * denom
    return {mask: Fraction(w, total) for mask, w in sorted(acc.items())}


def entropy(dist: Distribution) -> float:
    """Shannon entropy in bits of an exact distribution."""
    _validate_distribution(dist)
    h = 0.0
    for p in dist.values():
        if p == 1:
            continue
        num, den = p.numerator, p.denominator
        h -= num / den * (math.log2(num) - math.log2(den))
    return h


def _validate_distribution(dist: Distribution) -> None:
    if not dist:
        raise ValueError("distribution has no outcomes")
    total = Fraction(0)
    for p in dist.values():
        if p <= 0:
            raise ValueError(f"probability {p} is not positive")
        total += p
    if total != 1:
        raise ValueError(f"probabilities sum to {total}, not 1")


def projection_distribution(family: SetFamily, k: int) -> Distribution:
    """Law of the projection of a uniform member after deleting the k-1 most
    frequent elements (weights proportional to preimage sizes)."""
    projected, order = project_away_top(family, k)
    drop = 0
    for e in order[:k - 1]:
        drop |= 1 << (e - 1)
    counts: dict[int, int] = {}
    for s in family.members:
        key = s & ~drop
        counts[key] = counts.get(key, 0) + 1
    assert set(counts) == set(projected.members)
    m = family.m
    return {mask: Fraction(c, m) for mask, c in sorted(counts.items())}


def conditional_entropy_given_projection(family: SetFamily, k: int) -> float:
    """H of a uniform member given its projection: sum (c/m) log2 c over
    preimage sizes c.  Complements the projection entropy to exactly log2 m."""
    m = family.m
    h = 0.0
    for c in preimage_sizes(family, k):
        if c > 1:
            h += c / m * math.log2(c)
    return h


@dataclass(frozen=True)
class UnionEntropyReport:
    alpha: float
    lam: float
    max_frequency: Fraction
    lhs: float  # H(A ∪ B)
    rhs: float  # lambda_alpha * H(A)
    holds: bool


def check_union_entropy_inequality(family: SetFamily, alpha: Real) -> UnionEntropyReport:
    """Check H(A ∪ B) >= lambda_alpha · H(A) for A, B i.i.d. uniform on the family.

    Requires every element frequency to be at most alpha (exact comparison)
    and alpha to lie strictly below the threshold; a violated frequency
    precondition raises rather than being silently ignored.
    """
    if not (alpha > 0 and below_alpha_threshold(alpha)):
        raise ValueError(f"alpha={alpha} must lie strictly between 0 and (3-sqrt5)/2")
    freqs = frequencies(family)
    max_freq = max(freqs) if freqs else Fraction(0)
    if max_freq > alpha:
        raise ValueError(
            f"max element frequency {max_freq} exceeds alpha={alpha}; "
            "project away frequent elements first")
    base = distribution_of_uniform(family)
    lam = lambda_alpha(alpha)
    lhs = entropy(union_distribution(base))
    rhs = lam * entropy(base)
    return UnionEntropyReport(alpha=float(alpha), lam=lam, max_frequency=max_freq,
                              lhs=lhs, rhs=rhs,
                              holds=lhs >= rhs - COMPARISON_TOLERANCE)
