import math

import numpy as np
import pytest

from anyonwalk.errors import DomainError
from anyonwalk.models import (
    DoubleIrrepParams,
    build_dsn,
    build_su2k,
    f_matrix,
    parse_model_spec,
    r_phase,
)


def test_level_two_data():
    m = build_su2k(2)
    assert abs(m.d - 1.4142136) < 1e-6
    assert abs(m.A - np.exp(1j * 5 * np.pi / 8)) < 1e-12
    # sigma x sigma = 1 + psi, sigma x psi = sigma, psi x psi = 1
    assert m.fusion_outcomes(1, 1) == [0, 2]
    assert m.fusion_outcomes(1, 2) == [1]
    assert m.fusion_outcomes(2, 2) == [0]
    assert [lab.name for lab in m.labels] == ["1", "σ", "ψ"]


def test_level_six_dimension():
    assert abs(build_su2k(6).d - 1.8477590) < 1e-6


@pytest.mark.parametrize("k", [2, 3, 5, 8, 17])
def test_loop_value_identity(k):
    m = build_su2k(k)
    a = m.A
    assert abs((-a**2 - a**-2) - m.d) < 1e-12
    assert abs(abs(a) - 1.0) < 1e-12


def test_invalid_level_rejected():
    with pytest.raises(DomainError):
        build_su2k(1)


@pytest.mark.parametrize("k", [2, 3, 4, 7])
def test_fusion_tensor_properties(k):
    m = build_su2k(k)
    n = m.fusion.astype(int)
    nlab = len(m.labels)
    assert n.max() < 2
    assert np.array_equal(n, n.transpose(1, 0, 2))  # commutativity
    assert np.array_equal(n[0], np.eye(nlab, dtype=int))  # vacuum is the unit
    # associativity at the multiplicity level
    lhs = np.einsum("abe,ecf->abcf", n, n)
    rhs = np.einsum("bcg,agf->abcf", n, n)
    assert np.array_equal(lhs, rhs)


def test_dimension_increases_and_saturates():
    ds = [build_su2k(k).d for k in (2, 10, 100)]
    assert ds[0] < ds[1] < ds[2] < 2.0
    assert abs(ds[2] - 2.0) < 1e-3


def test_recoupling_matrix():
    m = build_su2k(2)
    f = f_matrix(m, 1, 1, 1, 1)
    expected = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert np.allclose(f, expected)
    assert np.allclose(f @ f.conj().T, np.eye(2), atol=1e-12)  # unitary
    assert np.allclose(f @ f, np.eye(2), atol=1e-12)  # involutive
    # a vacuum leg makes the recoupling trivial
    assert np.allclose(f_matrix(m, 0, 1, 1, 0), np.eye(1))


def test_recoupling_errors():
    with pytest.raises(DomainError):
        f_matrix(build_su2k(3), 1, 1, 1, 1)
    with pytest.raises(DomainError):
        f_matrix(build_su2k(2), 1, 1, 1, 0)  # three walkers cannot fuse to vacuum


def test_exchange_phases():
    m = build_su2k(2)
    assert r_phase(m, 1, 1, 0) == 1
    assert r_phase(m, 1, 1, 2) == 1j
    for c in (0, 2):
        assert abs(abs(r_phase(m, 1, 1, c)) - 1.0) < 1e-15
    with pytest.raises(DomainError):
        r_phase(m, 1, 1, 1)  # sigma x sigma has no sigma channel


def test_double_irrep_params():
    from fractions import Fraction

    p = build_dsn(5)
    assert p.dim == 10
    assert p.z == p.zbar == Fraction(1, 10)
    assert build_dsn(9).dim == 36
    with pytest.raises(DomainError):
        DoubleIrrepParams(4)


def test_parse_model_spec():
    assert parse_model_spec("su2k:3").k == 3
    assert parse_model_spec("dsn:7").N == 7
    for bad in ("su2k", "su2k:x", "ising:2"):
        with pytest.raises(DomainError):
            parse_model_spec(bad)
