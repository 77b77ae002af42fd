"""Anyon model data: labels, fusion rules, quantum dimensions, bracket parameter.

Two families are supported.  ``build_su2k`` constructs the SU(2) level-k
model whose walker label is the spin-1/2 particle; labels are indexed by
twice their spin, so id 0 is the vacuum and id 1 is the walker.  The level-2
model additionally carries the explicit recoupling (F) and exchange (R)
matrices in the basis {1, psi}.  ``build_dsn`` constructs the parameter set
of the transposition-class irrep of the symmetric-group quantum double,
which is all the Markov-trace engine needs.

The bracket parameter A is kept exactly as a rational multiple of pi, so
exact Laurent evaluation points and the identity d = -A^2 - A^-2 are
available without rounding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class AnyonLabel:
    id: int
    name: str


def _su2_label_name(q: int) -> str:
    # q is twice the spin
    if q == 0:
        return "1"
    if q == 1:
        return "σ"
    if q == 2:
        return "ψ"
    return f"{q}/2" if q % 2 else str(q // 2)


@dataclass(frozen=True, eq=False)
class AnyonModel:
    """Immutable model data; safe for unrestricted concurrent reads."""

    name: str
    labels: tuple[AnyonLabel, ...]
    fusion: np.ndarray  # N[a][b][c] in {0, 1}
    d: float  # quantum dimension of the walker label
    a_angle: Fraction  # A = exp(i * pi * a_angle)
    k: int | None = None
    weights: tuple[float, ...] = ()  # loop weight per label id
    f_data: dict = field(default_factory=dict)
    r_data: dict = field(default_factory=dict)

    @property
    def A(self) -> complex:
        return cmath.exp(1j * math.pi * float(self.a_angle))

    @property
    def sigma(self) -> int:
        """Label id of the walker particle."""
        return 1

    @property
    def vacuum(self) -> int:
        return 0

    def fusion_outcomes(self, a: int, b: int) -> list[int]:
        return [c for c in range(len(self.labels)) if self.fusion[a, b, c]]


def build_su2k(k: int) -> AnyonModel:
    """Construct the SU(2) level-k model (k >= 2)."""
    if k < 2:
        raise DomainError(f"level must be an integer >= 2, got {k}")
    nlab = k + 1
    fusion = np.zeros((nlab, nlab, nlab), dtype=np.uint8)
    for a in range(nlab):
        for b in range(nlab):
            for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2):
                fusion[a, b, c] = 1
    d = 2.0 * math.cos(math.pi / (k + 2))
    # A = i * exp(i*pi / (2(k+2))) = exp(i*pi * (k+3) / (2(k+2)))
    a_angle = Fraction(k + 3, 2 * (k + 2))
    denom = math.sin(math.pi / (k + 2))
    weights = tuple(math.sin(math.pi * (q + 1) / (k + 2)) / denom for q in range(nlab))
    labels = tuple(AnyonLabel(q, _su2_label_name(q)) for q in range(nlab))
    f_data: dict = {}
    r_data: dict = {}
    if k == 2:
        # recoupling of three walkers to total charge sigma, channels ordered (1, psi)
        f_data[(1, 1, 1, 1)] = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        r_data[(1, 1)] = {0: 1.0 + 0j, 2: 1j}
    return AnyonModel(
        name=f"su2k:{k}",
        labels=labels,
        fusion=fusion,
        d=d,
        a_angle=a_angle,
        k=k,
        weights=weights,
        f_data=f_data,
        r_data=r_data,
    )


def _check_labels(model: AnyonModel, *ids: int) -> None:
    for a in ids:
        if not 0 <= a < len(model.labels):
            raise DomainError(f"label id {a} outside model {model.name}")


def f_matrix(model: AnyonModel, a: int, b: int, c: int, d: int) -> np.ndarray:
    """Change-of-basis matrix between the two fusion orders of (a, b, c) -> d.

    Only the level-2 model carries explicit data; the matrix is returned over
    the admissible intermediate channels, ordered by label id.
    """
    if model.k != 2:
        raise DomainError(
            "explicit recoupling matrices are only tabulated for su2k:2; "
            "general levels are handled by the path representation"
        )
    _check_labels(model, a, b, c, d)
    channels = [
        x
        for x in range(len(model.labels))
        if model.fusion[a, b, x] and model.fusion[x, c, d]
    ]
    if not channels:
        raise DomainError(f"labels ({a},{b},{c};{d}) admit no fusion channel")
    explicit = model.f_data.get((a, b, c, d))
    if explicit is not None:
        return explicit.copy()
    return np.eye(len(channels), dtype=complex)


def r_phase(model: AnyonModel, a: int, b: int, c: int) -> complex:
    """Exchange eigenvalue of a and b in fusion channel c."""
    if model.k != 2:
        raise DomainError("explicit exchange phases are only tabulated for su2k:2")
    _check_labels(model, a, b, c)
    if not model.fusion[a, b, c]:
        raise DomainError(f"{c} is not a fusion channel of {a} x {b}")
    if a == 0 or b == 0:
        return 1.0 + 0j
    table = model.r_data.get((a, b))
    if table is None or c not in table:
        raise DomainError(f"exchange phase for labels ({a},{b}) not tabulated")
    return table[c]


@dataclass(frozen=True)
class DoubleIrrepParams:
    """Parameters of the transposition-class irrep of the S_N quantum double."""

    N: int

    def __post_init__(self):
        if self.N < 5:
            raise DomainError(f"symmetric group order parameter must be >= 5, got {self.N}")

    @property
    def dim(self) -> int:
        return self.N * (self.N - 1) // 2

    @property
    def gchar(self) -> int:
        return 1

    @property
    def z(self) -> Fraction:
        return Fraction(self.gchar, self.dim)

    @property
    def zbar(self) -> Fraction:
        return Fraction(self.gchar, self.dim)


def build_dsn(N: int) -> DoubleIrrepParams:
    return DoubleIrrepParams(N)


def parse_model_spec(spec: str) -> AnyonModel | DoubleIrrepParams:
    """Parse a model selector of the form ``su2k:<k>`` or ``dsn:<N>``."""
    kind, sep, arg = spec.partition(":")
    if not sep or not arg.lstrip("-").isdigit():
        raise DomainError(f"cannot parse model spec {spec!r}; expected su2k:<k> or dsn:<N>")
    value = int(arg)
    if kind == "su2k":
        return build_su2k(value)
    if kind == "dsn":
        return build_dsn(value)
    raise DomainError(f"unknown model family {kind!r}")
