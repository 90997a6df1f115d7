import numpy as np
import pytest

from semifourier.errors import IncompleteIrrepSet, SizeLimit
from semifourier.grouprep import (
    GroupMatrixMap,
    group_bochner_check,
    group_convolve,
    group_fourier,
    group_fourier_invert,
    group_pd_check,
    group_plancherel_check,
    unitary_irreps,
)
from semifourier.semigroup import GroupTable, cyclic_group_table, maximal_subgroup

from conftest import get_structure


def trivial_group():
    return cyclic_group_table(1)


def s3_group():
    i3 = get_structure("builtin:symmetric_inverse:3")
    return maximal_subgroup(i3, i3.table.index_of("[1>1,2>2,3>3]"))


def random_map(group, n, seed):
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal((group.order, n, n)) + 1j * rng.standard_normal(
        (group.order, n, n)
    )
    return GroupMatrixMap(group, n, vals)


def delta_identity_map(group, n):
    vals = np.zeros((group.order, n, n), dtype=complex)
    vals[group.identity] = np.eye(n)
    return GroupMatrixMap(group, n, vals)


def gram_map(group, n, seed):
    # Phi(g) = sum_h A(h)^dagger A(hg) is PD: the big block matrix is the Gram
    # matrix of the stacked blocks B_g = [A(hg)]_h
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((group.order, n, n)) + 1j * rng.standard_normal(
        (group.order, n, n)
    )
    vals = np.zeros((group.order, n, n), dtype=complex)
    for g in range(group.order):
        for h in range(group.order):
            vals[g] += a[h].conj().T @ a[group.mul(h, g)]
    return GroupMatrixMap(group, n, vals)


# --- irrep generation ---------------------------------------------------------

def test_trivial_group_irreps():
    reps = unitary_irreps(trivial_group())
    assert len(reps) == 1 and reps[0].dim == 1
    assert np.allclose(reps[0].matrices, np.ones((1, 1, 1)))


def test_z2_characters():
    reps = unitary_irreps(cyclic_group_table(2))
    chars = sorted(tuple(np.round(r.characters.real, 8)) for r in reps)
    assert chars == [(1.0, -1.0), (1.0, 1.0)]


def test_s3_dimensions():
    reps = unitary_irreps(s3_group())
    assert sorted(r.dim for r in reps) == [1, 1, 2]
    assert sum(r.dim**2 for r in reps) == 6


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cyclic_completeness(n):
    reps = unitary_irreps(cyclic_group_table(n))
    assert sum(r.dim**2 for r in reps) == n
    assert all(r.dim == 1 for r in reps)


def test_irreps_are_homomorphic_and_unitary():
    group = s3_group()
    for rep in unitary_irreps(group):
        eye = np.eye(rep.dim)
        assert np.abs(rep.matrices[group.identity] - eye).max() <= 1e-10
        for g in range(group.order):
            assert np.abs(rep.matrices[g] @ rep.matrices[g].conj().T - eye).max() <= 1e-10
            for h in range(group.order):
                assert (
                    np.abs(
                        rep.matrices[g] @ rep.matrices[h]
                        - rep.matrices[group.mul(g, h)]
                    ).max()
                    <= 1e-10
                )


def test_irreps_deterministic():
    a = unitary_irreps(s3_group(), seed=3)
    b = unitary_irreps(s3_group(), seed=3)
    for x, y in zip(a, b):
        assert np.array_equal(x.matrices, y.matrices)


def test_schur_orthogonality():
    group = s3_group()
    reps = unitary_irreps(group)
    for a in reps:
        for b in reps:
            got = np.einsum("gij,gkl->ijkl", a.matrices, b.matrices.conj())
            if a is b:
                want = (group.order / a.dim) * np.einsum(
                    "ik,jl->ijkl", np.eye(a.dim), np.eye(a.dim)
                )
            else:
                want = np.zeros_like(got)
            assert np.abs(got - want).max() <= 1e-8


def test_size_limit():
    with pytest.raises(SizeLimit):
        unitary_irreps(cyclic_group_table(49))


def test_klein_four_group():
    # abelian but not cyclic: four 1-dim irreps with distinct real characters
    tab = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    klein = GroupTable("V4", ("e", "a", "b", "c"), tab, 0, np.arange(4))
    reps = unitary_irreps(klein)
    assert [r.dim for r in reps] == [1, 1, 1, 1]
    keys = {tuple(np.round(r.characters.real, 6)) for r in reps}
    assert len(keys) == 4


def test_s4_from_symmetric_inverse_4():
    i4 = get_structure("builtin:symmetric_inverse:4")
    s4 = maximal_subgroup(i4, i4.table.index_of("[1>1,2>2,3>3,4>4]"))
    assert s4.order == 24
    reps = unitary_irreps(s4)
    assert sorted(r.dim for r in reps) == [1, 1, 2, 3, 3]


def test_irreps_pairwise_inequivalent_across_seeds():
    group = s3_group()
    for seed in range(12):
        reps = unitary_irreps(group, seed=seed)
        keys = {tuple(np.round(r.characters, 6).tolist()) for r in reps}
        assert len(keys) == len(reps)
        assert sum(r.dim**2 for r in reps) == group.order


# --- Fourier transform ----------------------------------------------------------

def test_fourier_zero_map():
    group = cyclic_group_table(2)
    rep = unitary_irreps(group)[0]
    f = GroupMatrixMap(group, 2, np.zeros((2, 2, 2), dtype=complex))
    assert np.abs(group_fourier(f, rep).matrix).max() == 0.0


def test_fourier_z2_sum_and_difference():
    group = cyclic_group_table(2)
    reps = unitary_irreps(group)
    by_char = {tuple(np.round(r.characters.real, 6)): r for r in reps}
    trivial = by_char[(1.0, 1.0)]
    sign = by_char[(1.0, -1.0)]
    rng = np.random.default_rng(8)
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    y = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    f = GroupMatrixMap(group, 2, np.stack([x, y]))
    assert np.abs(group_fourier(f, trivial).matrix - (x + y)).max() <= 1e-12
    assert np.abs(group_fourier(f, sign).matrix - (x - y)).max() <= 1e-12


@pytest.mark.parametrize("maker", [cyclic_group_table, None], ids=["z2z3", "s3"])
def test_fourier_roundtrip(maker):
    groups = [maker(2), maker(3)] if maker else [s3_group()]
    for group in groups:
        reps = unitary_irreps(group)
        for seed in range(100):
            f = random_map(group, 2, seed)
            transforms = [group_fourier(f, r) for r in reps]
            err = max(
                np.abs(group_fourier_invert(reps, transforms, g) - f.values[g]).max()
                for g in range(group.order)
            )
            assert err <= 1e-9


def test_fourier_invert_delta_map():
    group = s3_group()
    reps = unitary_irreps(group)
    f = delta_identity_map(group, 2)
    transforms = [group_fourier(f, r) for r in reps]
    for t, r in zip(transforms, reps):
        assert np.abs(t.matrix - np.eye(r.dim * 2)).max() <= 1e-10
    for g in range(group.order):
        want = np.eye(2) if g == group.identity else np.zeros((2, 2))
        assert np.abs(group_fourier_invert(reps, transforms, g) - want).max() <= 1e-9


def test_fourier_invert_requires_complete_set():
    group = s3_group()
    reps = unitary_irreps(group)
    f = random_map(group, 2, 0)
    transforms = [group_fourier(f, r) for r in reps]
    with pytest.raises(IncompleteIrrepSet):
        group_fourier_invert(reps[:-1], transforms[:-1], 0)


# --- convolution, Plancherel ------------------------------------------------------

def test_convolve_with_delta_is_identity():
    group = s3_group()
    f = random_map(group, 2, 1)
    conv = group_convolve(f, delta_identity_map(group, 2))
    assert np.abs(conv.values - f.values).max() <= 1e-12


def test_convolution_theorem_s3():
    group = s3_group()
    reps = unitary_irreps(group)
    for seed in range(10):
        f1 = random_map(group, 2, 2 * seed)
        f2 = random_map(group, 2, 2 * seed + 1)
        conv = group_convolve(f1, f2)
        for rep in reps:
            lhs = group_fourier(conv, rep).matrix
            rhs = group_fourier(f1, rep).matrix @ group_fourier(f2, rep).matrix
            assert np.abs(lhs - rhs).max() <= 1e-9


def test_scalar_convolution_z2():
    group = cyclic_group_table(2)
    f1 = GroupMatrixMap(group, 1, np.array([[[1.0]], [[2.0]]], dtype=complex))
    f2 = GroupMatrixMap(group, 1, np.array([[[3.0]], [[5.0]]], dtype=complex))
    conv = group_convolve(f1, f2)
    # (f1*f2)(e) = 1*3 + 2*5, (f1*f2)(a) = 1*5 + 2*3
    assert conv.values[0, 0, 0] == pytest.approx(13.0)
    assert conv.values[1, 0, 0] == pytest.approx(11.0)


def test_plancherel_zero_map():
    group = cyclic_group_table(3)
    reps = unitary_irreps(group)
    f = random_map(group, 2, 4)
    zero = GroupMatrixMap(group, 2, np.zeros((3, 2, 2), dtype=complex))
    lhs, rhs, residual = group_plancherel_check(f, zero, reps)
    assert np.abs(lhs).max() == 0.0 and np.abs(rhs).max() <= 1e-12
    assert residual <= 1e-12


def test_plancherel_random_z3():
    group = cyclic_group_table(3)
    reps = unitary_irreps(group)
    for seed in range(20):
        f1 = random_map(group, 2, 100 + seed)
        f2 = random_map(group, 2, 200 + seed)
        _, _, residual = group_plancherel_check(f1, f2, reps)
        assert residual <= 1e-9


def test_plancherel_delta_maps():
    group = cyclic_group_table(2)
    reps = unitary_irreps(group)
    f = delta_identity_map(group, 2)
    lhs, rhs, residual = group_plancherel_check(f, f, reps)
    assert np.abs(lhs - np.eye(2)).max() <= 1e-12
    assert residual <= 1e-10


# --- positive definiteness and Bochner ----------------------------------------------

def test_pd_constant_identity():
    group = cyclic_group_table(2)
    f = GroupMatrixMap(group, 2, np.stack([np.eye(2), np.eye(2)]).astype(complex))
    ok, _ = group_pd_check(f)
    assert ok


def test_pd_sign_character():
    group = cyclic_group_table(2)
    f = GroupMatrixMap(group, 1, np.array([[[1.0]], [[-1.0]]], dtype=complex))
    ok, witness = group_pd_check(f)
    assert ok and witness == pytest.approx(0.0, abs=1e-12)


def test_pd_rejects_lopsided_scalar_map():
    group = cyclic_group_table(2)
    f = GroupMatrixMap(group, 1, np.array([[[1.0]], [[2.0]]], dtype=complex))
    ok, witness = group_pd_check(f)
    assert not ok and witness == pytest.approx(-1.0, abs=1e-12)


def test_bochner_gram_maps():
    for group in (cyclic_group_table(2), s3_group()):
        reps = unitary_irreps(group)
        for seed in range(100):
            report = group_bochner_check(gram_map(group, 2, seed), reps)
            assert report.pd_verdict and report.transforms_verdict


def test_bochner_sign_character():
    group = cyclic_group_table(2)
    reps = unitary_irreps(group)
    f = GroupMatrixMap(group, 1, np.array([[[1.0]], [[-1.0]]], dtype=complex))
    report = group_bochner_check(f, reps)
    assert report.pd_verdict and report.transforms_verdict
    witnesses = sorted(w for _, _, w in report.transform_verdicts)
    assert witnesses[0] == pytest.approx(0.0, abs=1e-12)
    assert witnesses[1] == pytest.approx(2.0, abs=1e-12)


def test_bochner_lopsided_map_disagrees_nowhere():
    group = cyclic_group_table(2)
    reps = unitary_irreps(group)
    f = GroupMatrixMap(group, 1, np.array([[[1.0]], [[2.0]]], dtype=complex))
    report = group_bochner_check(f, reps)
    assert not report.pd_verdict and not report.transforms_verdict
    # trivial-rep transform is 3 >= 0 but the sign transform is -1
    witnesses = sorted(w for _, _, w in report.transform_verdicts)
    assert witnesses[0] == pytest.approx(-1.0, abs=1e-12)
    assert witnesses[1] == pytest.approx(3.0, abs=1e-12)


def test_bochner_never_disagrees_on_random_maps():
    group = cyclic_group_table(3)
    reps = unitary_irreps(group)
    for seed in range(1000):
        f = random_map(group, 1, 5000 + seed)
        report = group_bochner_check(f, reps)
        assert report.pd_verdict == report.transforms_verdict
