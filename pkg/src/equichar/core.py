"""Dense matrix and finite matrix-group primitives.

Matrices are plain ``numpy`` float arrays.  This module provides the monomial
factorization (one nonzero entry per row and column), breadth-first closure of
a finitely generated matrix group, and the unit-row predicate.  Everything is
pure and deterministic: closure order is fixed by the generator list, and all
comparisons use a single absolute tolerance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeMismatchError

DEFAULT_TOL = 1e-9
DEFAULT_CLOSURE_CAP = 10_000


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square float matrix, rejecting NaN/Inf."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


@dataclass(frozen=True)
class MonomialForm:
    """Factorization of a monomial matrix: ``m @ e_i == coeffs[i] * e_{perm[i]}``.

    Indices are 0-based; ``perm`` is a bijection of ``range(n)`` and every
    coefficient is nonzero.
    """

    perm: tuple[int, ...]
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a bijection of range(n)")
        if len(self.coeffs) != n:
            raise ValueError("coeffs length must match perm length")
        if any(c == 0.0 for c in self.coeffs):
            raise ValueError("monomial coefficients must be nonzero")

    @property
    def n(self) -> int:
        return len(self.perm)

    def dense(self) -> np.ndarray:
        """Rebuild the dense matrix from the (perm, coeffs) factorization."""
        out = np.zeros((self.n, self.n))
        for i, (row, c) in enumerate(zip(self.perm, self.coeffs)):
            out[row, i] = c
        return out


def monomial_decompose(m, tol: float = DEFAULT_TOL) -> MonomialForm | None:
    """Factor ``m`` as permutation plus per-column coefficients.

    Returns ``None`` when some row or column does not have exactly one entry
    of magnitude above ``tol`` (a classification outcome, not an error).
    """
    a = as_matrix(m)
    n = a.shape[0]
    big = np.abs(a) > tol
    if not np.all(big.sum(axis=0) == 1) or not np.all(big.sum(axis=1) == 1):
        return None
    rows = np.argmax(big, axis=0)
    perm = tuple(int(r) for r in rows)
    coeffs = tuple(float(a[perm[i], i]) for i in range(n))
    return MonomialForm(perm, coeffs)


@dataclass
class GroupSpec:
    """A matrix group given by name, dimension, and a generator list.

    Generators must be square of dimension ``n`` and invertible
    (``|det| > tol``).  An empty generator list denotes the trivial group.
    """

    name: str
    n: int
    generators: tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be positive")
        mats = []
        for k, g in enumerate(self.generators):
            a = as_matrix(g)
            if a.shape[0] != self.n:
                raise ShapeMismatchError(
                    f"generator {k} has dimension {a.shape[0]}, expected {self.n}"
                )
            if abs(np.linalg.det(a)) <= DEFAULT_TOL:
                raise ValueError(f"generator {k} is not invertible")
            mats.append(a)
        self.generators = tuple(mats)

    @classmethod
    def from_matrices(cls, name: str, mats) -> "GroupSpec":
        mats = [as_matrix(m) for m in mats]
        if not mats:
            raise ValueError("from_matrices needs at least one matrix")
        return cls(name, mats[0].shape[0], tuple(mats))


@dataclass
class ClosureResult:
    """Elements found by breadth-first closure; ``complete`` iff it stabilized."""

    elements: list[np.ndarray]
    complete: bool

    def __len__(self) -> int:
        return len(self.elements)


class _MatrixSet:
    """Append-only set of matrices with tolerance-based membership."""

    def __init__(self, n: int, tol: float) -> None:
        self._buf = np.empty((16, n, n))
        self._len = 0
        self._tol = tol

    def __len__(self) -> int:
        return self._len

    def contains(self, mat: np.ndarray) -> bool:
        if self._len == 0:
            return False
        diffs = np.abs(self._buf[: self._len] - mat).max(axis=(1, 2))
        return bool(diffs.min() <= self._tol)

    def add(self, mat: np.ndarray) -> None:
        if self._len == self._buf.shape[0]:
            grown = np.empty((2 * self._len,) + self._buf.shape[1:])
            grown[: self._len] = self._buf
            self._buf = grown
        self._buf[self._len] = mat
        self._len += 1

    def items(self) -> list[np.ndarray]:
        return [self._buf[i].copy() for i in range(self._len)]


def close_group(
    spec: GroupSpec,
    cap: int = DEFAULT_CLOSURE_CAP,
    tol: float = DEFAULT_TOL,
) -> ClosureResult:
    """Enumerate the generated matrix group by breadth-first multiplication.

    Starts from the identity and right-multiplies by generators in list
    order, deduplicating within ``tol``.  ``complete=False`` means the search
    hit ``cap`` and the group may be infinite.  For invertible matrices a
    stabilized closure under products is automatically closed under inverses,
    since every element then has finite order.
    """
    seen = _MatrixSet(spec.n, tol)
    seen.add(np.eye(spec.n))
    queue: deque[np.ndarray] = deque([np.eye(spec.n)])
    complete = True
    while queue:
        current = queue.popleft()
        for g in spec.generators:
            candidate = current @ g
            if seen.contains(candidate):
                continue
            if len(seen) >= cap:
                complete = False
                queue.clear()
                break
            seen.add(candidate)
            queue.append(candidate)
    return ClosureResult(seen.items(), complete)


def is_unit_row(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff every row of ``m`` sums to 1 within ``tol`` (``m @ ones == ones``)."""
    a = as_matrix(m)
    return bool(np.abs(a.sum(axis=1) - 1.0).max() <= tol)
