"""Fusion-path bases for chains of identical anyons and braid matrices on them.

A basis state of n walker-type anyons with total charge zero is the sequence
of intermediate charges met while fusing the chain left to right.  We store
the full charge path (c_1, ..., c_{n-1}) with the fixed endpoints c_0 =
c_n = vacuum left implicit; the published outcome labels (a_1, ..., a_{n-2})
are the path with its constant first entry dropped.  Paths are kept in
lexicographic outcome order, which fixes all matrix layouts.

Braid generators are built through the loop-weight path representation of
the diagram algebra: e_i acts at charge slot i, couples paths only where the
neighboring slots agree, and carries weight sqrt(w(c) w(c')) / w(c_left),
with w the loop weight of a label.  The braid matrix is then
A * identity + A^-1 * e_i, which makes dense evolution and bracket
evaluation agree exactly, not merely up to phase.

For the level-2 model the same representation has a qubit form built from
three fixed 2x2 / 4x4 blocks; it is provided for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DomainError
from .models import AnyonModel

#: below this dimension generator matrices are kept dense
DENSE_DIM_LIMIT = 64


@dataclass(eq=False)
class FusionSpace:
    """Indexed fusion basis of n walker anyons with vacuum total charge."""

    model: AnyonModel
    n: int
    charges: np.ndarray  # (dim, n-1) intermediate charges c_1..c_{n-1}
    _index: dict[bytes, int] = field(default_factory=dict, repr=False)
    _tl_cache: dict[int, object] = field(default_factory=dict, repr=False)
    _braid_cache: dict[int, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {row.tobytes(): i for i, row in enumerate(self.charges)}

    @property
    def dim(self) -> int:
        return self.charges.shape[0]

    @property
    def basis(self) -> list[tuple[int, ...]]:
        """Outcome tuples (a_1, ..., a_{n-2}) in basis order."""
        return [tuple(int(q) for q in row[1:]) for row in self.charges]

    def index(self, outcomes: tuple[int, ...]) -> int:
        row = np.empty(self.n - 1, dtype=self.charges.dtype)
        row[0] = self.model.sigma
        row[1:] = outcomes
        key = row.tobytes()
        if key not in self._index:
            raise DomainError(f"outcome tuple {outcomes} is not an admissible basis state")
        return self._index[key]


def enumerate_fusion_basis(model: AnyonModel, n: int) -> FusionSpace:
    """Enumerate all admissible charge paths, in lexicographic outcome order."""
    if n % 2 or n < 4:
        raise DomainError(f"anyon count must be even and >= 4, got {n}")
    sigma, vac = model.sigma, model.vacuum
    nlab = len(model.labels)
    # reach[q][r]: can charge q fuse down to the vacuum in exactly r more steps?
    reach = np.zeros((nlab, n + 1), dtype=bool)
    reach[vac, 0] = True
    step_to = [model.fusion_outcomes(q, sigma) for q in range(nlab)]
    for r in range(1, n + 1):
        for q in range(nlab):
            reach[q, r] = any(reach[c, r - 1] for c in step_to[q])

    paths: list[tuple[int, ...]] = []
    prefix = [0] * (n - 1)
    prefix[0] = sigma

    def extend(slot: int, q: int) -> None:
        if slot == n - 1:
            if reach[q, 1]:
                paths.append(tuple(prefix))
            return
        for c in step_to[q]:
            if reach[c, n - slot - 1]:
                prefix[slot] = c
                extend(slot + 1, c)

    if reach[sigma, n - 1]:
        extend(1, sigma)
    if not paths:
        raise DomainError(f"no admissible fusion paths for {model.name} with n={n}")
    dtype = np.uint8 if nlab <= 255 else np.int32
    return FusionSpace(model=model, n=n, charges=np.array(paths, dtype=dtype))


def vacuum_pair_state(space: FusionSpace) -> np.ndarray:
    """Unit vector on the alternating path (1, sigma, 1, sigma, ...)."""
    outcomes = tuple(
        space.model.vacuum if j % 2 == 0 else space.model.sigma
        for j in range(space.n - 2)
    )
    vec = np.zeros(space.dim, dtype=complex)
    vec[space.index(outcomes)] = 1.0
    return vec


def _as_matrix(rows, cols, vals, dim):
    if dim < DENSE_DIM_LIMIT:
        mat = np.zeros((dim, dim), dtype=complex)
        mat[rows, cols] = vals
        return mat
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex)


def tl_generator(space: FusionSpace, i: int):
    """The diagram-algebra generator e_i on the fusion basis (Hermitian, e^2 = d e)."""
    if not 1 <= i <= space.n - 1:
        raise DomainError(f"generator index {i} outside [1, {space.n - 1}]")
    if i in space._tl_cache:
        return space._tl_cache[i]
    model = space.model
    charges = space.charges
    dim, width = charges.shape
    w = np.asarray(model.weights, dtype=float)
    # columns i-1, i, i+1 of the extended path (vacuum at both ends)
    left = charges[:, i - 2].astype(np.int64) if i >= 2 else np.zeros(dim, dtype=np.int64)
    mid = charges[:, i - 1].astype(np.int64)
    right = charges[:, i].astype(np.int64) if i <= width - 1 else np.zeros(dim, dtype=np.int64)

    active = left == right  # strands i, i+1 can fuse to the vacuum
    rows = np.nonzero(active)[0]
    cols = rows.copy()
    vals = (w[mid[active]] / w[left[active]]).astype(complex)

    partner_mid = 2 * left - mid
    valid = active & (partner_mid >= 0) & (partner_mid < len(model.labels))
    if np.any(valid):
        idx = np.nonzero(valid)[0]
        modified = charges[idx].copy()
        modified[:, i - 1] = partner_mid[idx].astype(charges.dtype)
        partner_rows = np.fromiter(
            (space._index.get(row.tobytes(), -1) for row in modified),
            dtype=np.int64,
            count=len(idx),
        )
        found = partner_rows >= 0
        src = idx[found]
        dst = partner_rows[found]
        offvals = np.sqrt(w[mid[src]] * w[partner_mid[src]]) / w[left[src]]
        rows = np.concatenate([rows, dst])
        cols = np.concatenate([cols, src])
        vals = np.concatenate([vals, offvals.astype(complex)])

    mat = _as_matrix(rows, cols, vals, dim)
    space._tl_cache[i] = mat
    return mat


def braid_generator(space: FusionSpace, i: int):
    """Unitary braid matrix b_i = A * identity + A^-1 * e_i."""
    if i in space._braid_cache:
        return space._braid_cache[i]
    a = space.model.A
    e = tl_generator(space, i)
    if isinstance(e, np.ndarray):
        mat = a * np.eye(space.dim, dtype=complex) + (1 / a) * e
    else:
        mat = (a * sp.identity(space.dim, dtype=complex, format="csr") + (1 / a) * e).tocsr()
    space._braid_cache[i] = mat
    return mat


# fixed blocks of the level-2 qubit representation
_R_BLOCK = np.diag([1.0 + 0j, 1j])
_B_BLOCK = np.array(
    [
        [np.exp(1j * math.pi / 4), np.exp(-1j * math.pi / 4)],
        [np.exp(-1j * math.pi / 4), np.exp(1j * math.pi / 4)],
    ]
) / math.sqrt(2)
_A_BLOCK = np.diag([1.0 + 0j, 1j, 1j, 1.0 + 0j])


def su22_qubit_generator(n: int, i: int) -> np.ndarray:
    """Braid generator of the level-2 chain on its qubit-encoded fusion space.

    The space of n anyons with total charge zero is m = n/2 - 1 qubits; odd
    generators act diagonally (a phase on one qubit or a controlled phase on
    a neighboring pair), even generators mix one qubit.
    """
    if n % 2 or n < 4:
        raise DomainError(f"anyon count must be even and >= 4, got {n}")
    if not 1 <= i <= n - 1:
        raise DomainError(f"generator index {i} outside [1, {n - 1}]")
    m = n // 2 - 1

    def embed(block: np.ndarray, first_qubit: int) -> np.ndarray:
        nq = int(math.log2(block.shape[0]))
        mat = np.eye(1, dtype=complex)
        q = 1
        while q <= m:
            if q == first_qubit:
                mat = np.kron(mat, block)
                q += nq
            else:
                mat = np.kron(mat, np.eye(2, dtype=complex))
                q += 1
        return mat

    if i == 1:
        return embed(_R_BLOCK, 1)
    if i == n - 1:
        return embed(_R_BLOCK, m)
    if i % 2 == 0:
        return embed(_B_BLOCK, i // 2)
    return embed(_A_BLOCK, (i - 1) // 2)
