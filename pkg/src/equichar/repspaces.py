"""Permutation actions, orbit bases of equivariant maps, and network validation.

A permutation action on a finite index set induces a representation on the
standard basis.  Orbits of the action partition the set; orbits of the
simultaneous action on (output, input) pairs yield the 0/1 indicator matrices
spanning the equivariant linear maps between two such representations, and
orbits of a single action yield the indicator vectors spanning the invariant
(bias) subspace.  Tensor-power actions act coordinatewise on index tuples.

Generators of two actions are matched positionally: the i-th generator of
each action must represent the same abstract group element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .activations import Activation, _nonzero_uniform
from .core import DEFAULT_TOL
from .errors import (
    CountMismatchError,
    GeneratorCountMismatchError,
    ShapeMismatchError,
    SizeExceededError,
)

MAX_TENSOR_POINTS = 1_000_000


@dataclass
class PermAction:
    """An action on ``range(size)`` given by generator bijections (0-based images)."""

    size: int
    generators: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("action needs at least one point")
        gens = []
        for k, g in enumerate(self.generators):
            images = tuple(int(i) for i in g)
            if sorted(images) != list(range(self.size)):
                raise ValueError(f"generator {k} is not a bijection of range({self.size})")
            gens.append(images)
        self.generators = tuple(gens)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Partition of the index set into generator-closed blocks, sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # Attach the larger root under the smaller so roots stay minimal.
            if ri < rj:
                self.parent[rj] = ri
            else:
                self.parent[ri] = rj

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        by_root: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            by_root.setdefault(self.find(i), []).append(i)
        return tuple(tuple(sorted(members)) for _, members in sorted(by_root.items()))


def orbits(action: PermAction) -> OrbitDecomposition:
    """Orbit partition of the index set under all generators."""
    uf = _UnionFind(action.size)
    for g in action.generators:
        for i, image in enumerate(g):
            uf.union(i, image)
    return OrbitDecomposition(uf.blocks())


def tensor_action(
    n: int,
    k: int,
    gens: Sequence[Sequence[int]],
    max_points: int = MAX_TENSOR_POINTS,
) -> PermAction:
    """Coordinatewise action on k-tuples over ``range(n)``.

    Tuples map to integers by little-endian mixed radix: the first tuple
    coordinate is the least significant base-n digit.  This encoding is part
    of the serialized interface and must not change.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    points = n**k
    if points > max_points:
        raise SizeExceededError(f"tensor action would need {points} points (limit {max_points})")
    index = np.arange(points)
    digits = [(index // n**t) % n for t in range(k)]
    lifted = []
    for g in gens:
        images = np.asarray(tuple(int(i) for i in g))
        if sorted(images.tolist()) != list(range(n)):
            raise ValueError("tensor_action generators must be bijections of range(n)")
        image = np.zeros(points, dtype=np.int64)
        for t in range(k):
            image += images[digits[t]] * n**t
        lifted.append(tuple(int(i) for i in image))
    return PermAction(points, tuple(lifted), label=f"tensor(n={n},k={k})")


@dataclass
class LayerBasis:
    """Orbit-indicator basis of the equivariant linear maps between two actions.

    Elements are 0/1 integer matrices with disjoint supports covering all of
    dim_out x dim_in, ordered by each orbit's least (row-major) pair index.
    """

    dim_in: int
    dim_out: int
    elements: list[np.ndarray]

    def __len__(self) -> int:
        return len(self.elements)

    def sparse_coordinates(self) -> list[list[tuple[int, int]]]:
        """Each element as its sorted list of (row, col) support coordinates."""
        return [
            [(int(r), int(c)) for r, c in np.argwhere(el)]
            for el in self.elements
        ]


def equivariant_basis(a_in: PermAction, a_out: PermAction) -> LayerBasis:
    """Basis of equivariant maps from the span of ``a_in`` to the span of ``a_out``.

    Orbits of the simultaneous generator action on (output point, input
    point) pairs; the basis size equals the dimension of the space of
    equivariant linear maps.
    """
    if len(a_in.generators) != len(a_out.generators):
        raise GeneratorCountMismatchError(
            f"parallel actions need equal generator counts "
            f"({len(a_out.generators)} != {len(a_in.generators)})"
        )
    pairs = a_out.size * a_in.size
    uf = _UnionFind(pairs)
    for g_out, g_in in zip(a_out.generators, a_in.generators):
        for o in range(a_out.size):
            row = o * a_in.size
            image_row = g_out[o] * a_in.size
            for i in range(a_in.size):
                uf.union(row + i, image_row + g_in[i])
    elements = []
    for block in uf.blocks():
        mat = np.zeros((a_out.size, a_in.size), dtype=np.int64)
        for p in block:
            mat[p // a_in.size, p % a_in.size] = 1
        elements.append(mat)
    return LayerBasis(a_in.size, a_out.size, elements)


def invariant_basis(action: PermAction) -> list[np.ndarray]:
    """Orbit-indicator vectors spanning the subspace fixed by the action."""
    out = []
    for block in orbits(action).blocks:
        v = np.zeros(action.size, dtype=np.int64)
        v[list(block)] = 1
        out.append(v)
    return out


def is_trivial_rep(action: PermAction) -> bool:
    """True iff every generator fixes every point (all orbits are singletons)."""
    return all(g[i] == i for g in action.generators for i in range(action.size))


def perm_matrix(gen: Sequence[int], dtype=float) -> np.ndarray:
    """Column-convention permutation matrix: column i carries e_{gen[i]}."""
    images = tuple(int(i) for i in gen)
    n = len(images)
    out = np.zeros((n, n), dtype=dtype)
    for i, image in enumerate(images):
        out[image, i] = 1
    return out


@dataclass
class AffineEquivariantLayer:
    """Realized affine map x -> W x + v with W in the basis span and v invariant."""

    matrix: np.ndarray
    bias: np.ndarray
    weights: tuple[float, ...]
    bias_weights: tuple[float, ...]

    @property
    def dim_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim_out(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x + self.bias


def build_affine_layer(
    basis: LayerBasis,
    weights: Sequence[float],
    bias_basis: Sequence[np.ndarray] = (),
    bias_weights: Sequence[float] = (),
) -> AffineEquivariantLayer:
    """Materialize W = sum w_i B_i and v = sum c_j u_j from basis coefficients."""
    if len(weights) != len(basis.elements):
        raise CountMismatchError(
            f"{len(weights)} weights for {len(basis.elements)} basis elements"
        )
    if len(bias_weights) != len(bias_basis):
        raise CountMismatchError(
            f"{len(bias_weights)} bias weights for {len(bias_basis)} bias vectors"
        )
    matrix = np.zeros((basis.dim_out, basis.dim_in))
    for w, el in zip(weights, basis.elements):
        matrix += float(w) * el
    bias = np.zeros(basis.dim_out)
    for c, u in zip(bias_weights, bias_basis):
        u = np.asarray(u, dtype=float)
        if u.shape != (basis.dim_out,):
            raise ShapeMismatchError("bias vectors must live in the output space")
        bias += float(c) * u
    return AffineEquivariantLayer(
        matrix, bias, tuple(float(w) for w in weights), tuple(float(c) for c in bias_weights)
    )


@dataclass(frozen=True)
class StageFailure:
    stage: int  # 1-based position in the composed sequence
    kind: str  # "affine" or "activation"
    trial: int
    generator: int
    residual: float
    x: np.ndarray


@dataclass(frozen=True)
class NetworkReport:
    """Outcome of the end-to-end network equivariance check."""

    passed: bool
    trials: int
    worst_residual: float
    failure: StageFailure | None

    def __bool__(self) -> bool:
        return self.passed


def validate_network(
    layers: Sequence[AffineEquivariantLayer],
    activations: Sequence[Activation],
    actions: Sequence[PermAction],
    *,
    trials: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int,
) -> NetworkReport:
    """Check that the composed network commutes with every generator.

    ``actions`` lists one permutation action per representation space, so it
    must be one longer than ``layers``; activations sit between consecutive
    layers.  For each seeded random input the transformed and untransformed
    forward passes are compared after every stage, and the first stage where
    they disagree beyond ``tol`` is reported.
    """
    if len(actions) != len(layers) + 1:
        raise ShapeMismatchError("need one action per representation space (layers + 1)")
    if len(activations) != max(len(layers) - 1, 0):
        raise ShapeMismatchError("activations must sit between consecutive layers")
    for k, layer in enumerate(layers):
        if layer.dim_in != actions[k].size or layer.dim_out != actions[k + 1].size:
            raise ShapeMismatchError(f"layer {k} does not chain with its actions")
    gen_count = len(actions[0].generators)
    if any(len(a.generators) != gen_count for a in actions):
        raise GeneratorCountMismatchError("all actions must list the same abstract generators")

    perms = [[perm_matrix(g) for g in a.generators] for a in actions]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in range(trials):
        x = _nonzero_uniform(rng, actions[0].size)
        for gi in range(gen_count):
            transformed = perms[0][gi] @ x
            plain = x.copy()
            stage = 0
            for k, layer in enumerate(layers):
                stage += 1
                transformed = layer.apply(transformed)
                plain = layer.apply(plain)
                residual = float(np.abs(transformed - perms[k + 1][gi] @ plain).max())
                worst = max(worst, residual)
                if residual > tol:
                    return NetworkReport(
                        False, trials, worst, StageFailure(stage, "affine", t, gi, residual, x)
                    )
                if k < len(activations):
                    stage += 1
                    transformed = activations[k](transformed)
                    plain = activations[k](plain)
                    residual = float(np.abs(transformed - perms[k + 1][gi] @ plain).max())
                    worst = max(worst, residual)
                    if residual > tol:
                        return NetworkReport(
                            False,
                            trials,
                            worst,
                            StageFailure(stage, "activation", t, gi, residual, x),
                        )
    return NetworkReport(True, trials, worst, None)
