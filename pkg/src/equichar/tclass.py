"""Classify matrix groups by the scalars they mix and map them to activation families.

The pipeline is: collect the multiplicative generators produced by row subset
sums of the group's matrices, classify the multiplicative subgroup of R* they
generate (trivial, {+-1}, powers of a base, or dense), and combine that with
the structural predicates (monomial, non-negative, unit-row) to name the
maximal family of point-wise activations the group admits.  The inverse map
from a family label back to its maximal matrix-group class is also provided,
and composing the two stabilizes at the label level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_CLOSURE_CAP,
    DEFAULT_TOL,
    GroupSpec,
    as_matrix,
    close_group,
    is_unit_row,
    monomial_decompose,
)
from .errors import DimensionTooLargeError

# 2**20 subset sums per row is the largest exhaustive enumeration we allow.
MAX_SUBSET_DIM = 20
DEFAULT_GCD_ITER = 64


class SubgroupKind(str, Enum):
    TRIVIAL = "Trivial"
    PLUS_MINUS_ONE = "PlusMinusOne"
    POWERS_OF_B = "PowersOfB"
    SIGNED_POWERS_OF_B = "SignedPowersOfB"
    DENSE_POSITIVE = "DensePositive"
    DENSE = "Dense"


_KINDS_WITH_BASE = (SubgroupKind.POWERS_OF_B, SubgroupKind.SIGNED_POWERS_OF_B)


@dataclass(frozen=True)
class SubgroupClass:
    """A multiplicative subgroup of R* up to the discrete/dense dichotomy."""

    kind: SubgroupKind
    b: float | None = None

    def __post_init__(self) -> None:
        if self.kind in _KINDS_WITH_BASE:
            if self.b is None or self.b <= 1.0 + DEFAULT_TOL:
                raise ValueError(f"{self.kind.value} requires a base b > 1")
        elif self.b is not None:
            raise ValueError(f"{self.kind.value} does not carry a base")


class FamilyKind(str, Enum):
    CONTINUOUS = "Continuous"
    ODD_CONTINUOUS = "OddContinuous"
    SEMILINEAR = "Semilinear"
    B_MULTIPLICATIVE = "BMultiplicative"
    PM_B_MULTIPLICATIVE = "PMBMultiplicative"
    AFFINE_ONLY = "AffineOnly"
    LINEAR_ONLY = "LinearOnly"


_FAMILIES_WITH_BASE = (FamilyKind.B_MULTIPLICATIVE, FamilyKind.PM_B_MULTIPLICATIVE)


@dataclass(frozen=True)
class ActivationFamily:
    """One of the seven maximal family labels, with base ``b`` when multiplicative."""

    kind: FamilyKind
    b: float | None = None

    def __post_init__(self) -> None:
        if self.kind in _FAMILIES_WITH_BASE:
            if self.b is None or self.b <= 1.0 + DEFAULT_TOL:
                raise ValueError(f"{self.kind.value} requires a base b > 1")
        elif self.b is not None:
            raise ValueError(f"{self.kind.value} does not carry a base")


@dataclass(frozen=True)
class TGenerators:
    """Nonzero scalars generating the multiplicative group mixed by a matrix set."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("generator set must be nonempty")
        if any(abs(v) <= DEFAULT_TOL for v in self.values):
            raise ValueError("generator values must be nonzero")


@dataclass(frozen=True)
class GroupClassification:
    """Structural summary of a matrix group: predicates plus its scalar subgroup."""

    monomial: bool
    non_negative: bool
    unit_row: bool
    tclass: SubgroupClass

    def __post_init__(self) -> None:
        if self.non_negative and not self.monomial:
            raise ValueError("non_negative is only tracked for monomial groups")


def _dedup_with_tol(values: list[float], tol: float) -> tuple[float, ...]:
    out: list[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return tuple(out)


def subset_sum_generators(mats: Sequence, tol: float = DEFAULT_TOL) -> TGenerators:
    """All nonzero row subset sums over the given matrices.

    For a monomial matrix every row holds a single nonzero entry, so its
    subset sums reduce to that entry set.  Non-monomial matrices are
    enumerated exhaustively (2^n sums per row), which is refused above
    dimension 20.
    """
    if len(mats) == 0:
        raise ValueError("mats must be nonempty")
    values: list[float] = []
    for m in mats:
        a = as_matrix(m)
        form = monomial_decompose(a, tol)
        if form is not None:
            values.extend(form.coeffs)
            continue
        n = a.shape[0]
        if n > MAX_SUBSET_DIM:
            raise DimensionTooLargeError(
                f"subset-sum enumeration needs 2^{n} sums per row; limit is 2^{MAX_SUBSET_DIM}"
            )
        masks = np.arange(2**n, dtype=np.int64)
        bits = (masks[:, None] >> np.arange(n)) & 1  # (2^n, n)
        sums = a @ bits.T  # (n, 2^n), row i holds all subset sums of row i
        flat = sums.ravel()
        values.extend(float(v) for v in flat[np.abs(flat) > tol])
    return TGenerators(_dedup_with_tol(values, tol))


def _real_gcd(a: float, b: float, tol: float, max_iter: int) -> float:
    """Euclidean GCD on positive reals; 0.0 when the iteration budget runs out."""
    for _ in range(max_iter):
        if b <= tol:
            return a
        a, b = b, math.fmod(a, b)
    return 0.0


def classify_subgroup(
    gens: TGenerators,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_GCD_ITER,
) -> SubgroupClass:
    """Classify the multiplicative subgroup of R* generated by ``gens``.

    Magnitudes decide discreteness via a tolerance-based real GCD of
    ``|log|v||``; signs decide the +- variants.  A collapsed GCD (or an
    exhausted iteration budget) is classified as dense -- a heuristic, since
    genuine density is undecidable from finite float data.

    The GCD must clear a floor of ``1000 * tol`` to count as discrete: a
    Euclidean chain on incommensurate logs bottoms out at tolerance scale,
    where any value passes the integer-multiple check vacuously (quotients of
    order 1/tol), so a result that close to the floor certifies nothing.
    """
    has_negative = any(v < 0 for v in gens.values)
    logs = [abs(math.log(abs(v))) for v in gens.values if abs(abs(v) - 1.0) > tol]
    if not logs:
        kind = SubgroupKind.PLUS_MINUS_ONE if has_negative else SubgroupKind.TRIVIAL
        return SubgroupClass(kind)
    floor = 1000.0 * tol
    g = logs[0]
    for x in logs[1:]:
        g = _real_gcd(g, x, tol, max_iter)
        if g <= floor:
            break
    if g > floor:
        for x in logs:
            if abs(x - round(x / g) * g) > tol:
                g = 0.0
                break
    if g <= floor:
        kind = SubgroupKind.DENSE if has_negative else SubgroupKind.DENSE_POSITIVE
        return SubgroupClass(kind)
    b = math.exp(g)
    kind = SubgroupKind.SIGNED_POWERS_OF_B if has_negative else SubgroupKind.POWERS_OF_B
    return SubgroupClass(kind, b)


def classify_group_detailed(
    spec: GroupSpec,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> tuple[GroupClassification, list[str]]:
    """Classify a generated matrix group, returning (classification, notes).

    Notes record the approximations taken.  For monomial generators the
    scalar subgroup is computed from the generator entries, which generate
    the entry set of the whole group multiplicatively.  For non-monomial
    generators the subset sums run over the finite closure when it
    stabilizes, else over the generators alone.
    """
    notes: list[str] = []
    forms = [monomial_decompose(g, tol) for g in spec.generators]
    monomial = all(f is not None for f in forms)
    unit_row = all(is_unit_row(g, tol) for g in spec.generators)
    if monomial:
        non_negative = all(c > 0 for f in forms for c in f.coeffs)
        mats: Sequence = spec.generators
    else:
        if spec.n > MAX_SUBSET_DIM:
            # subset sums are infeasible already for the generators, so do
            # not bother enumerating the closure first
            raise DimensionTooLargeError(
                f"non-monomial generators of dimension {spec.n} exceed the "
                f"subset-sum limit of {MAX_SUBSET_DIM}"
            )
        non_negative = False
        closure = close_group(spec, cap, tol)
        if closure.complete:
            mats = closure.elements
        else:
            mats = spec.generators
            notes.append(
                "closure did not stabilize below the element cap; "
                "scalar subgroup computed from generators only (approximation)"
            )
    if len(mats) == 0:
        tgens = TGenerators((1.0,))  # trivial group: only the identity
    else:
        tgens = subset_sum_generators(mats, tol)
    tclass = classify_subgroup(tgens, tol)
    return GroupClassification(monomial, non_negative, unit_row, tclass), notes


def classify_group(
    spec: GroupSpec,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> GroupClassification:
    """Classify a generated matrix group (see ``classify_group_detailed``)."""
    return classify_group_detailed(spec, tol, cap)[0]


def maximal_family(c: GroupClassification) -> ActivationFamily:
    """The maximal family of point-wise activations commuting with the class ``c``.

    Monomial groups map through their scalar subgroup; a dense scalar
    subgroup forces linearity, so those groups collapse to the affine/linear
    pairs together with the non-monomial ones.
    """
    if c.monomial:
        k = c.tclass.kind
        if k is SubgroupKind.TRIVIAL:
            return ActivationFamily(FamilyKind.CONTINUOUS)
        if k is SubgroupKind.PLUS_MINUS_ONE:
            return ActivationFamily(FamilyKind.ODD_CONTINUOUS)
        if k is SubgroupKind.POWERS_OF_B:
            return ActivationFamily(FamilyKind.B_MULTIPLICATIVE, c.tclass.b)
        if k is SubgroupKind.SIGNED_POWERS_OF_B:
            return ActivationFamily(FamilyKind.PM_B_MULTIPLICATIVE, c.tclass.b)
        if k is SubgroupKind.DENSE_POSITIVE and c.non_negative:
            return ActivationFamily(FamilyKind.SEMILINEAR)
    if c.unit_row:
        return ActivationFamily(FamilyKind.AFFINE_ONLY)
    return ActivationFamily(FamilyKind.LINEAR_ONLY)


def maximal_group_label(f: ActivationFamily, n: int) -> GroupClassification:
    """The classification of the maximal n-by-n matrix group admitting family ``f``.

    This is the dual direction of the pairing: continuous functions pair with
    permutation matrices, odd ones with signed permutations, semilinear with
    non-negative monomial, (+-)b-multiplicative with (+-)b-monomial, and the
    degenerate affine/linear families with unit-row and general invertible
    matrices respectively.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    k = f.kind
    if k is FamilyKind.CONTINUOUS:
        return GroupClassification(True, True, True, SubgroupClass(SubgroupKind.TRIVIAL))
    if k is FamilyKind.ODD_CONTINUOUS:
        return GroupClassification(True, False, False, SubgroupClass(SubgroupKind.PLUS_MINUS_ONE))
    if k is FamilyKind.SEMILINEAR:
        return GroupClassification(True, True, False, SubgroupClass(SubgroupKind.DENSE_POSITIVE))
    if k is FamilyKind.B_MULTIPLICATIVE:
        return GroupClassification(True, True, False, SubgroupClass(SubgroupKind.POWERS_OF_B, f.b))
    if k is FamilyKind.PM_B_MULTIPLICATIVE:
        return GroupClassification(
            True, False, False, SubgroupClass(SubgroupKind.SIGNED_POWERS_OF_B, f.b)
        )
    if k is FamilyKind.AFFINE_ONLY:
        return GroupClassification(False, False, True, SubgroupClass(SubgroupKind.DENSE))
    return GroupClassification(False, False, False, SubgroupClass(SubgroupKind.DENSE))


def _is_integer_power(outer_b: float, inner_b: float, tol: float) -> bool:
    """True iff outer_b == inner_b**k for an integer k >= 1 (within tol)."""
    k = round(math.log(outer_b) / math.log(inner_b))
    if k < 1:
        return False
    return abs(inner_b**k - outer_b) <= tol * max(1.0, outer_b)


def family_contains(
    outer: ActivationFamily, inner: ActivationFamily, tol: float = DEFAULT_TOL
) -> bool:
    """Whether the ``outer`` family of functions contains the ``inner`` one.

    Fewer multiplicative constraints mean a bigger family, so for the
    multiplicative kinds containment runs along integer powers of the base:
    the b^k-multiplicative family contains the b-multiplicative one.
    """
    if outer.kind is FamilyKind.CONTINUOUS:
        return True
    if inner.kind is FamilyKind.LINEAR_ONLY:
        return True
    if outer.kind is inner.kind:
        if outer.b is None:
            return True
        return abs(outer.b - inner.b) <= tol * max(1.0, outer.b) or _is_integer_power(
            outer.b, inner.b, tol
        )
    if outer.kind is FamilyKind.ODD_CONTINUOUS:
        return inner.kind is FamilyKind.PM_B_MULTIPLICATIVE
    if outer.kind is FamilyKind.B_MULTIPLICATIVE:
        if inner.kind is FamilyKind.SEMILINEAR:
            return True
        if inner.kind is FamilyKind.PM_B_MULTIPLICATIVE:
            return _is_integer_power(outer.b, inner.b, tol) or abs(outer.b - inner.b) <= tol
        return False
    # Semilinear, PMB, AffineOnly, LinearOnly contain nothing else beyond
    # themselves and the linear functions handled above.
    return False
