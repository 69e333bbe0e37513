"""Compound lotteries, their classical value, and the uncertainty penalty.

The classical value of a lottery tree depends only on its outcome
distribution, so it is invariant under flattening a compound lottery into a
single stage.  The penalized value multiplies every genuinely uncertain
chance node by a factor, so two trees with identical outcome distributions
can receive different values.  coherence_check detects exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .model import ModelError, ONE, ZERO, probability


@dataclass(frozen=True)
class Leaf:
    utility: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "utility", Fraction(self.utility))


@dataclass(frozen=True)
class Chance:
    branches: tuple[tuple[Fraction, "LotteryTree"], ...]

    def __post_init__(self) -> None:
        branches = tuple((probability(p), sub) for p, sub in self.branches)
        if not branches:
            raise ModelError("chance node has no branches")
        total = sum((p for p, _ in branches), ZERO)
        if total != ONE:
            raise ModelError(f"branch probabilities sum to {total}, expected exactly 1")
        object.__setattr__(self, "branches", branches)


LotteryTree = Union[Leaf, Chance]


def chance(branches: Iterable[tuple[Fraction, LotteryTree]]) -> Chance:
    """Convenience constructor accepting any iterable of (prob, subtree)."""
    return Chance(tuple(branches))


@dataclass(frozen=True)
class PenaltySpec:
    """Multiplier applied at every chance node that carries real uncertainty."""

    factor: Fraction = Fraction(9, 10)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor", Fraction(self.factor))
        if not ZERO < self.factor <= ONE:
            raise ModelError(f"penalty factor {self.factor} outside (0, 1]")


def nm_value(t: LotteryTree) -> Fraction:
    """Classical expected utility: probability-weighted sum, no penalty."""
    if isinstance(t, Leaf):
        return t.utility
    return sum((p * nm_value(sub) for p, sub in t.branches), ZERO)


def _is_uncertain(node: Chance) -> bool:
    # A node whose mass sits on a single branch carries no uncertainty.
    return sum(1 for p, _ in node.branches if p > 0) >= 2


def penalized_value(t: LotteryTree, p: PenaltySpec = PenaltySpec()) -> Fraction:
    """Expected utility with each uncertain chance node scaled by the factor.

    Uncertainty means at least two branches of nonzero probability; branches
    leading to equal utilities still count, since the penalty prices the
    unresolved randomness rather than the outcome spread.
    """
    if isinstance(t, Leaf):
        return t.utility
    value = sum((q * penalized_value(sub, p) for q, sub in t.branches), ZERO)
    return p.factor * value if _is_uncertain(t) else value


def outcome_distribution(t: LotteryTree) -> dict[Fraction, Fraction]:
    """Map utility -> total path probability; zero-mass outcomes are dropped."""
    masses: dict[Fraction, Fraction] = {}

    def walk(node: LotteryTree, path_prob: Fraction) -> None:
        if path_prob == 0:
            return
        if isinstance(node, Leaf):
            masses[node.utility] = masses.get(node.utility, ZERO) + path_prob
        else:
            for q, sub in node.branches:
                walk(sub, path_prob * q)

    walk(t, ONE)
    return masses


def reduce_compound(t: LotteryTree) -> LotteryTree:
    """Flatten to a single stage with the same outcome distribution.

    Equal-utility leaves are merged; a distribution concentrated on one
    utility reduces to a bare Leaf.  The classical value is preserved exactly.
    """
    masses = outcome_distribution(t)
    if len(masses) == 1:
        (utility,) = masses
        return Leaf(utility)
    branches = tuple((p, Leaf(u)) for u, p in sorted(masses.items(), key=lambda kv: kv[0]))
    return Chance(branches)


@dataclass(frozen=True)
class CoherenceReport:
    """Outcome of comparing two trees under reduction and under the penalty."""

    same_distribution: bool
    nm_left: Fraction
    nm_right: Fraction
    penalized_left: Fraction
    penalized_right: Fraction
    violation: bool  # identical distributions yet different penalized values


def coherence_check(
    t1: LotteryTree, t2: LotteryTree, p: PenaltySpec = PenaltySpec()
) -> CoherenceReport:
    """Flag the axiom violation: equal outcome distributions, unequal values."""
    same = outcome_distribution(t1) == outcome_distribution(t2)
    pv1 = penalized_value(t1, p)
    pv2 = penalized_value(t2, p)
    return CoherenceReport(
        same_distribution=same,
        nm_left=nm_value(t1),
        nm_right=nm_value(t2),
        penalized_left=pv1,
        penalized_right=pv2,
        violation=same and pv1 != pv2,
    )
