import numpy as np
import pytest
import scipy.sparse as sp

from anyonwalk.errors import DomainError
from anyonwalk.fusion import (
    braid_generator,
    enumerate_fusion_basis,
    su22_qubit_generator,
    tl_generator,
    vacuum_pair_state,
)
from anyonwalk.models import build_su2k
from anyonwalk.tl import BraidWord, plat_bracket


def dense(mat):
    return mat.toarray() if sp.issparse(mat) else np.asarray(mat)


def catalan(n):
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def test_level_two_dimensions():
    m = build_su2k(2)
    assert enumerate_fusion_basis(m, 4).dim == 2
    assert enumerate_fusion_basis(m, 6).dim == 4
    assert enumerate_fusion_basis(m, 4).basis == [(0, 1), (2, 1)]
    # even outcome slots are pinned to the walker label
    for path in enumerate_fusion_basis(m, 8).basis:
        assert all(path[j] == 1 for j in range(1, len(path), 2))


def test_dimension_saturates_at_catalan():
    # brute-force oracle: count admissible outcome sequences directly
    def count_paths(model, n):
        sigma = model.sigma
        total = 0
        stack = [(sigma, 1)]
        while stack:
            charge, used = stack.pop()
            if used == n - 1:
                total += model.fusion[charge, sigma, 0]
                continue
            for nxt in model.fusion_outcomes(charge, sigma):
                stack.append((nxt, used + 1))
        return int(total)

    n = 12
    dims = []
    for k in (2, 3, 4, 5, 6, 7):
        space = enumerate_fusion_basis(build_su2k(k), n)
        assert space.dim == count_paths(space.model, n)
        dims.append(space.dim)
    assert dims == sorted(dims)
    assert dims[-1] == catalan(n // 2)  # saturated once k >= n/2


def test_large_chain_dimension():
    assert enumerate_fusion_basis(build_su2k(11), 22).dim == 58786


def test_odd_count_rejected():
    with pytest.raises(DomainError):
        enumerate_fusion_basis(build_su2k(2), 5)
    with pytest.raises(DomainError):
        enumerate_fusion_basis(build_su2k(2), 2)


def test_vacuum_pair_state():
    space = enumerate_fusion_basis(build_su2k(2), 4)
    vec = vacuum_pair_state(space)
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-15
    assert vec[space.index((0, 1))] == 1.0
    # orthogonal to every path with a nonvacuum first outcome
    for i, path in enumerate(space.basis):
        if path[0] != 0:
            assert vec[i] == 0.0


def test_first_generator_projects_on_vacuum_channel():
    m = build_su2k(2)
    space = enumerate_fusion_basis(m, 4)
    e1 = dense(tl_generator(space, 1))
    expected = np.zeros((2, 2))
    expected[space.index((0, 1)), space.index((0, 1))] = m.d
    assert np.allclose(e1, expected, atol=1e-12)


@pytest.mark.parametrize("k,n", [(2, 6), (3, 6), (5, 8), (2, 10), (3, 10), (5, 10)])
def test_diagram_algebra_relations(k, n):
    m = build_su2k(k)
    space = enumerate_fusion_basis(m, n)
    es = [dense(tl_generator(space, i)) for i in range(1, n)]
    for e in es:
        assert np.allclose(e, e.conj().T, atol=1e-12)
        assert np.allclose(e @ e, m.d * e, atol=1e-10)
        ev = np.linalg.eigvalsh(e)
        assert np.all((np.abs(ev) < 1e-8) | (np.abs(ev - m.d) < 1e-8))
    for i in range(len(es) - 1):
        assert np.allclose(es[i] @ es[i + 1] @ es[i], es[i], atol=1e-10)
        assert np.allclose(es[i + 1] @ es[i] @ es[i + 1], es[i + 1], atol=1e-10)
    for i in range(len(es)):
        for j in range(i + 2, len(es)):
            assert np.allclose(es[i] @ es[j], es[j] @ es[i], atol=1e-10)


def test_generator_trace_is_index_independent():
    space = enumerate_fusion_basis(build_su2k(3), 6)
    traces = [np.trace(dense(tl_generator(space, i))).real for i in range(1, 6)]
    assert np.allclose(traces, traces[0], atol=1e-10)


@pytest.mark.parametrize("k,n", [(2, 6), (3, 8), (5, 10)])
def test_braid_generators_unitary_and_yang_baxter(k, n):
    space = enumerate_fusion_basis(build_su2k(k), n)
    bs = [dense(braid_generator(space, i)) for i in range(1, n)]
    eye = np.eye(space.dim)
    for b in bs:
        assert np.allclose(b @ b.conj().T, eye, atol=1e-12)
    for i in range(len(bs) - 1):
        lhs = bs[i] @ bs[i + 1] @ bs[i]
        rhs = bs[i + 1] @ bs[i] @ bs[i + 1]
        assert np.max(np.abs(lhs - rhs)) < 1e-10
    for i in range(len(bs)):
        for j in range(i + 2, len(bs)):
            assert np.max(np.abs(bs[i] @ bs[j] - bs[j] @ bs[i])) < 1e-10


def test_braid_generator_sparsity():
    space = enumerate_fusion_basis(build_su2k(4), 12)
    for i in (1, 5, 11):
        mat = braid_generator(space, i)
        per_col = np.diff(mat.tocsc().indptr)
        assert per_col.max() <= 2


def test_level_two_braid_spectrum():
    m = build_su2k(2)
    space = enumerate_fusion_basis(m, 4)
    ev = np.linalg.eigvals(dense(braid_generator(space, 1)))
    expected = {m.A, -m.A**-3}
    for w in ev:
        assert min(abs(w - z) for z in expected) < 1e-12
    ratios = sorted(ev, key=lambda z: abs(np.angle(z)))
    assert abs(ratios[1] / ratios[0] - 1j) < 1e-12  # matches the exchange table


def test_generator_index_range():
    space = enumerate_fusion_basis(build_su2k(2), 4)
    for bad in (0, 4):
        with pytest.raises(DomainError):
            tl_generator(space, bad)
        with pytest.raises(DomainError):
            braid_generator(space, bad)


def test_qubit_generator_placements():
    b = su22_qubit_generator(4, 2)
    expected = np.array(
        [[np.exp(1j * np.pi / 4), np.exp(-1j * np.pi / 4)],
         [np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)]]
    ) / np.sqrt(2)
    assert np.allclose(b, expected, atol=1e-15)
    a_on_pair = su22_qubit_generator(6, 3)
    assert np.allclose(a_on_pair, np.diag([1, 1j, 1j, 1]), atol=1e-15)
    assert su22_qubit_generator(6, 5).shape == (4, 4)


def test_qubit_generators_unitary_and_yang_baxter():
    n = 8
    gens = [su22_qubit_generator(n, i) for i in range(1, n)]
    eye = np.eye(2 ** (n // 2 - 1))
    for g in gens:
        assert np.allclose(g @ g.conj().T, eye, atol=1e-12)
    for i in range(len(gens) - 1):
        lhs = gens[i] @ gens[i + 1] @ gens[i]
        rhs = gens[i + 1] @ gens[i] @ gens[i + 1]
        assert np.max(np.abs(lhs - rhs)) < 1e-10


@pytest.mark.parametrize("k,n", [(2, 4), (2, 6), (3, 6), (5, 8)])
def test_vacuum_sandwich_equals_plat_bracket(k, n):
    # the identity that makes the dense and pathsum engines agree exactly
    m = build_su2k(k)
    space = enumerate_fusion_basis(m, n)
    alpha = vacuum_pair_state(space)
    gens = {i: dense(braid_generator(space, i)) for i in range(1, n)}
    rng = np.random.default_rng(17)
    for _ in range(6):
        letters = tuple(
            int(rng.integers(1, n)) * int(rng.choice([-1, 1])) for _ in range(7)
        )
        mat = np.eye(space.dim, dtype=complex)
        for letter in letters:
            g = gens[abs(letter)]
            mat = (g if letter > 0 else g.conj().T) @ mat
        lhs = alpha.conj() @ mat @ alpha
        rhs = plat_bracket(BraidWord(n, letters), at=m.A) / m.d ** (n // 2 - 1)
        assert abs(lhs - rhs) < 1e-10
