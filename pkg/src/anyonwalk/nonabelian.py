"""Single-coin anyonic walk: dense state evolution and loop-pair bracket sums.

The walker is one of n identical anyons placed at sites 1..n, created in
nearest-neighbor vacuum pairs (1,2)(3,4)...  Moving left from site p braids
strands (p-1, p), moving right braids (p, p+1), always with the same
handedness, so a left/right record a in {0,1}^t fixes the braid word letter
by letter: step r at site p contributes letter p + a_r - 1 and moves the
walker to p + 2 a_r - 1.

Two engines compute P(s, t):

* ``distribution_dense`` evolves the full coin x position x fusion state.
* ``distribution_pathsum`` sums over pairs of paths with common endpoint and
  common final coin state; each pair contributes a coin amplitude product
  times the overlap of the two braided vacuum-pair states, evaluated as a
  plat-closure bracket.

Both use the same loop-weight representation conventions, so they agree to
numerical precision, not merely up to phase.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .distribution import Distribution, coin_matrix
from .errors import BoundaryError, DomainError
from .fusion import braid_generator, enumerate_fusion_basis, su22_qubit_generator, vacuum_pair_state
from .models import AnyonModel
from .tl import BraidWord, anyon_trace

#: refuse dense states above this size (complex entries)
DENSE_STATE_BUDGET = 2**27

#: path-pair summation is quadratic in the 2^t paths
PATHSUM_MAX_T = 12


@dataclass(frozen=True)
class WalkGeometry:
    """Site layout: n anyons on sites 1..n, walker starting at s0.

    An odd s0 puts the walker at the head of a vacuum pair; the tabulated
    small-step distributions assume that alignment, but both engines accept
    any start site and always agree with each other.
    """

    n: int
    s0: int

    def __post_init__(self):
        if self.n % 2 or self.n < 4:
            raise DomainError(f"anyon count must be even and >= 4, got {self.n}")
        if not 1 <= self.s0 <= self.n:
            raise DomainError(f"start site {self.s0} outside 1..{self.n}")

    @classmethod
    def for_steps(cls, t: int, n: int | None = None) -> WalkGeometry:
        """Smallest centered boundary-free layout for a t-step walk.

        n is rounded up to 2 mod 4 so the central start site n/2 is odd; a
        caller-supplied n of the other parity gets its start site bumped by
        one to keep the vacuum-pair alignment.
        """
        if t < 1:
            raise DomainError("step count must be >= 1")
        if n is None:
            n = 2 * t + 2
            if n % 4 != 2:
                n += 2
        if n < 2 * t + 2:
            raise DomainError(f"n={n} too small for t={t}; boundary-free walks need n >= 2t+2")
        s0 = n // 2 if (n // 2) % 2 == 1 else n // 2 + 1
        return cls(n, s0)

    def check_steps(self, t: int) -> None:
        if not (self.s0 - t >= 1 and self.s0 + t <= self.n - 1):
            raise BoundaryError(
                f"a {t}-step walk from site {self.s0} leaves the strand range of n={self.n}"
            )


def path_braid_word(geom: WalkGeometry, bits: tuple[int, ...]) -> BraidWord:
    """Braid word swept out by the left/right record ``bits`` (0 left, 1 right)."""
    p = geom.s0
    letters = []
    for b in bits:
        letter = p + b - 1
        if not 1 <= letter <= geom.n - 1:
            raise BoundaryError(f"path {bits} braids strand {letter} outside 1..{geom.n - 1}")
        letters.append(letter)
        p += 2 * b - 1
    return BraidWord(geom.n, tuple(letters))


def coin_trace(
    a: tuple[int, ...],
    ap: tuple[int, ...],
    coin: str | np.ndarray = "H",
    psi: np.ndarray | None = None,
) -> complex:
    """Coin-space weight of a path pair: c_a * conj(c_ap) if the final coin
    states match, else 0."""
    if len(a) != len(ap):
        raise DomainError("paths must have equal length")
    if a and ap and a[-1] != ap[-1]:
        return 0j
    c = coin_matrix(coin)
    psi = np.array([1, 0], dtype=complex) if psi is None else np.asarray(psi, dtype=complex)

    def amplitude(bits: tuple[int, ...]) -> complex:
        amp = (c @ psi)[bits[0]]
        for prev, cur in zip(bits, bits[1:]):
            amp *= c[cur, prev]
        return amp

    return amplitude(a) * np.conj(amplitude(ap))


def _loop_pairs(t: int):
    """Yield (a, ap) path pairs with common endpoint and final coin state,
    each unordered pair once with a marker for the diagonal."""
    paths = sorted(itertools.product((0, 1), repeat=t))
    groups: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for path in paths:
        groups.setdefault((sum(path), path[-1]), []).append(path)
    for group in groups.values():
        for i, a in enumerate(group):
            yield a, a, True
            for ap in group[i + 1 :]:
                yield a, ap, False


def distribution_pathsum(
    model: AnyonModel,
    geom: WalkGeometry | None,
    t: int,
    coin: str | np.ndarray = "H",
    psi: np.ndarray | None = None,
) -> Distribution:
    """Walker distribution as a sum over loop pairs weighted by brackets."""
    if t > PATHSUM_MAX_T:
        raise DomainError(
            f"path-pair summation over 4^{t} pairs is impractical; use the dense engine"
        )
    geom = WalkGeometry.for_steps(t) if geom is None else geom
    geom.check_steps(t)
    contrib: dict[int, list[float]] = {geom.s0 + 2 * j - t: [] for j in range(t + 1)}
    trace_cache: dict[tuple[int, ...], complex] = {}
    imag_residue = 0.0
    for a, ap, diagonal in _loop_pairs(t):
        weight = coin_trace(a, ap, coin, psi)
        if weight == 0:
            continue
        endpoint = geom.s0 + 2 * sum(a) - t
        if diagonal:
            # the combined word reduces freely to the identity; its trace is 1
            contrib[endpoint].append(weight.real)
            imag_residue = max(imag_residue, abs(weight.imag))
            continue
        word = path_braid_word(geom, a)
        word_p = path_braid_word(geom, ap)
        key = (word * word_p.inverse()).free_reduce().letters
        if key not in trace_cache:
            trace_cache[key] = anyon_trace(model, geom.n, word, word_p)
        # adding the swapped pair conjugates the term, leaving twice the real part
        term = weight * trace_cache[key]
        contrib[endpoint].append(2.0 * term.real)
    positions = tuple(sorted(contrib))
    probs = np.array([float(np.sum(contrib[s])) if contrib[s] else 0.0 for s in positions])
    if imag_residue > 1e-9:
        raise DomainError(f"imaginary residue {imag_residue} beyond tolerance after symmetrization")
    return Distribution(
        positions,
        probs,
        {
            "engine": "pathsum",
            "model": model.name,
            "t": t,
            "n": geom.n,
            "s0": geom.s0,
            "coin": coin if isinstance(coin, str) else "custom",
        },
    )


def _fusion_rep(model: AnyonModel, n: int):
    space = enumerate_fusion_basis(model, n)
    alpha = vacuum_pair_state(space)
    return space.dim, alpha, lambda i: braid_generator(space, i)


def _qubit_rep(model: AnyonModel, n: int):
    if model.k != 2:
        raise DomainError("the qubit representation only exists for su2k:2")
    dim = 2 ** (n // 2 - 1)
    alpha = np.zeros(dim, dtype=complex)
    alpha[0] = 1.0
    cache: dict[int, np.ndarray] = {}

    def gen(i: int) -> np.ndarray:
        if i not in cache:
            cache[i] = su22_qubit_generator(n, i)
        return cache[i]

    return dim, alpha, gen


def distribution_dense(
    model: AnyonModel,
    geom: WalkGeometry | None,
    t: int,
    coin: str | np.ndarray = "H",
    psi: np.ndarray | None = None,
    representation: str = "fusion",
    trivial_braiding: bool = False,
) -> Distribution:
    """Walker distribution by dense evolution of coin x position x fusion state."""
    geom = WalkGeometry.for_steps(t) if geom is None else geom
    geom.check_steps(t)
    n, s0 = geom.n, geom.s0
    if representation == "fusion":
        dim, alpha, gen = _fusion_rep(model, n)
    elif representation == "qubit":
        dim, alpha, gen = _qubit_rep(model, n)
    else:
        raise DomainError(f"unknown representation {representation!r}")
    if (n + 2) * 2 * dim > DENSE_STATE_BUDGET:
        raise DomainError(
            f"dense state of {(n + 2) * 2 * dim} amplitudes exceeds the memory budget; "
            "use the pathsum engine"
        )
    c = coin_matrix(coin)
    psi = np.array([1, 0], dtype=complex) if psi is None else np.asarray(psi, dtype=complex)

    state = np.zeros((n + 2, 2, dim), dtype=complex)  # site index 1..n used
    state[s0] = psi[:, None] * alpha[None, :]
    lo = hi = s0
    for _ in range(t):
        tossed = np.einsum("ij,sjd->sid", c, state[lo : hi + 1])
        new = np.zeros_like(state)
        for offset in range(hi - lo + 1):
            s = lo + offset
            left, right = tossed[offset, 0], tossed[offset, 1]
            if trivial_braiding:
                new[s - 1, 0] += left
                new[s + 1, 1] += right
            else:
                new[s - 1, 0] += gen(s - 1) @ left
                new[s + 1, 1] += gen(s) @ right
        state = new
        lo, hi = lo - 1, hi + 1
    positions = tuple(range(s0 - t, s0 + t + 1, 2))
    probs = np.array([float(np.sum(np.abs(state[s]) ** 2)) for s in positions])
    return Distribution(
        positions,
        probs,
        {
            "engine": "dense" if not trivial_braiding else "dense-trivial",
            "representation": representation,
            "model": model.name,
            "t": t,
            "n": n,
            "s0": s0,
            "coin": coin if isinstance(coin, str) else "custom",
        },
    )


def walk_distribution(
    model: AnyonModel,
    t: int,
    n: int | None = None,
    engine: str = "auto",
    coin: str | np.ndarray = "H",
    psi: np.ndarray | None = None,
) -> Distribution:
    """Front end choosing the engine: pathsum at small t, dense from t >= 6."""
    geom = WalkGeometry.for_steps(t, n)
    if engine == "auto":
        engine = "dense" if t >= 6 else "pathsum"
    if engine == "dense":
        return distribution_dense(model, geom, t, coin, psi)
    if engine == "pathsum":
        return distribution_pathsum(model, geom, t, coin, psi)
    raise DomainError(f"unknown engine {engine!r}")


def closed_form_distribution(k: int, t: int) -> np.ndarray:
    """Exact small-t distributions of the level-k walk (t <= 4), leftmost first."""
    theta = np.pi / (k + 2)
    if t == 1:
        return np.array([0.5, 0.5])
    if t == 2:
        return np.array([0.25, 0.5, 0.25])
    if t == 3:
        c = np.cos(2 * theta) * np.cos(3 * theta) / np.cos(theta)
        return np.array([1 / 8, 3 / 8 + c / 4, 3 / 8 - c / 4, 1 / 8])
    if t == 4:
        c2, c4, c6 = np.cos(2 * theta), np.cos(4 * theta), np.cos(6 * theta)
        sec2 = 1 / np.cos(theta) ** 2
        return np.array(
            [
                1 / 16,
                (-3 * c2 + 3 * c4 + 5) / 8,
                (3 * c2 - c4 - 3 * c6 + 5) * sec2 / 32,
                (2 * c2 - c4 + 1) * sec2 / 16,
                1 / 16,
            ]
        )
    raise DomainError(f"no closed form tabulated for t={t}")


def sweep_distances(
    ks,
    t: int = 10,
    n: int | None = None,
    coin: str | np.ndarray = "H",
    psi: np.ndarray | None = None,
    threads: int = 1,
) -> list[tuple[int, float, float]]:
    """Distances of the level-k walk to the standard quantum and classical
    walks at fixed t, as rows (k, d_q, d_c)."""
    from concurrent.futures import ThreadPoolExecutor

    from .distribution import baseline_classical, baseline_quantum, distance
    from .models import build_su2k

    quantum = baseline_quantum(t, coin, psi)
    classical = baseline_classical(t)

    def row(k: int) -> tuple[int, float, float]:
        dist = walk_distribution(build_su2k(k), t, n=n, engine="dense", coin=coin, psi=psi)
        centered = dist.shifted(dist.meta["s0"])
        return k, distance(centered, quantum), distance(centered, classical)

    ks = list(ks)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, ks))
    return [row(k) for k in ks]
