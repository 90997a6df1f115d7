"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here.
"""

import time

import numpy as np

from semifourier.cli import main as cli_main
from semifourier.harmonic import (
    GROUPOID,
    NATURAL,
    MatrixMap,
    fourier,
    fourier_invert,
    fourier_transform_all,
    invert_to_map,
    plancherel_check,
    schur_residual,
    to_groupoid,
)
from semifourier.maps import choi, choi_invert, convolve
from semifourier.positivity import (
    bochner_check,
    conjugation_rep,
    cp_correspondence_probe,
    direct_sum_rep,
    gram_pd_map,
    identity_rep,
    is_unitary_conjugation_rep,
    random_cp_map,
    random_map,
    random_unitary,
    stinespring,
    transpose_map,
)
from semifourier.semigroup import (
    groupoid_basis_matrices,
    groupoid_product,
    matrix_unit_index,
)

from conftest import BUILTINS, SAMPLE_DATA, get_irreps, get_structure

ALL_CRITERIA_SEMIGROUPS = (
    "builtin:matrix_units:2",
    "builtin:matrix_units:3",
    "builtin:symmetric_inverse:2",
    "builtin:symmetric_inverse:3",
    "builtin:cyclic_with_zero:2",
    "builtin:cyclic_with_zero:3",
    "builtin:cyclic_with_zero:4",
    "builtin:cyclic_with_zero:5",
)


def report(num, text):
    print(f"[criterion {num:02d}] PASS  {text}")


def seeded_map(st, n, seed):
    rng = np.random.default_rng([seed, st.table.order, n])
    vals = rng.standard_normal((st.table.order, n, n)) + 1j * rng.standard_normal(
        (st.table.order, n, n)
    )
    return MatrixMap(st, n, NATURAL, vals)


def test_criterion_01_wedderburn_completeness():
    start = time.monotonic()
    for ref in ALL_CRITERIA_SEMIGROUPS:
        st = get_structure(ref)
        reps = get_irreps(ref)
        assert sum(r.dim**2 for r in reps) == st.table.order - 1, ref
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    report(1, f"sum d_sigma^2 = |S|-1 on {len(ALL_CRITERIA_SEMIGROUPS)} builtins "
              f"({elapsed:.2f}s)")


def test_criterion_02_fourier_inversion_roundtrip():
    start = time.monotonic()
    worst = 0.0
    for ref in ALL_CRITERIA_SEMIGROUPS:
        st = get_structure(ref)
        reps = get_irreps(ref)
        for seed in range(100):
            f = seeded_map(st, 2, seed)
            data = fourier_transform_all(f, reps)
            back = invert_to_map(data)
            err = float(np.abs(back.values - to_groupoid(f).values).max())
            worst = max(worst, err)
            assert err <= 1e-9, (ref, seed, err)
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    report(2, f"800 roundtrips, max error {worst:.2e} <= 1e-9 ({elapsed:.1f}s)")


def test_criterion_03_choi_reduction():
    worst = 0.0
    for m in (2, 3):
        ref = f"builtin:matrix_units:{m}"
        st = get_structure(ref)
        reps = get_irreps(ref)
        assert len(reps) == 1
        for seed in range(20):
            f = seeded_map(st, 2, seed)
            c = choi(f)
            t = fourier(f, reps[0])
            worst = max(worst, float(np.abs(t.matrix - c.matrix).max()))
            data = fourier_transform_all(f, reps)
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    e = np.zeros((m, m))
                    e[i - 1, j - 1] = 1.0
                    got = fourier_invert(data, matrix_unit_index(m, i, j))
                    want = choi_invert(c, e)
                    worst = max(worst, float(np.abs(got - want).max()))
    assert worst <= 1e-12
    report(3, f"fourier == choi and inversion == Choi inversion, max {worst:.2e} <= 1e-12")


def test_criterion_04_convolution_theorem():
    worst = 0.0
    for ref in ALL_CRITERIA_SEMIGROUPS:
        st = get_structure(ref)
        reps = get_irreps(ref)
        for seed in range(50):
            f = seeded_map(st, 2, 2 * seed)
            g = seeded_map(st, 2, 2 * seed + 1)
            conv = convolve(f, g)
            for rep in reps:
                lhs = fourier(conv, rep).matrix
                rhs = fourier(f, rep).matrix @ fourier(g, rep).matrix
                err = float(np.linalg.norm(lhs - rhs))
                worst = max(worst, err)
                assert err <= 1e-9, (ref, seed, rep.irrep_id)
    report(4, f"50 pairs x {len(ALL_CRITERIA_SEMIGROUPS)} semigroups, "
              f"max Frobenius defect {worst:.2e} <= 1e-9")


def test_criterion_05_plancherel():
    worst = 0.0
    for ref in ALL_CRITERIA_SEMIGROUPS:
        st = get_structure(ref)
        reps = get_irreps(ref)
        for seed in range(50):
            f = seeded_map(st, 2, 3000 + 2 * seed)
            g = seeded_map(st, 2, 3000 + 2 * seed + 1)
            _, _, residual = plancherel_check(f, g, reps)
            worst = max(worst, residual)
            assert residual <= 1e-9, (ref, seed)
    # matrix-units special case: sum_ij Phi(e_ji) Psi(e_ij) = tr_m(C_Phi C_Psi)
    st = get_structure("builtin:matrix_units:2")
    special = 0.0
    for seed in range(50):
        f = seeded_map(st, 2, 4000 + 2 * seed)
        g = seeded_map(st, 2, 4000 + 2 * seed + 1)
        direct = sum(
            f.values[matrix_unit_index(2, j, i)] @ g.values[matrix_unit_index(2, i, j)]
            for i in (1, 2)
            for j in (1, 2)
        )
        prod = (choi(f).matrix @ choi(g).matrix).reshape(2, 2, 2, 2)
        special = max(special, float(np.abs(direct - np.einsum("kikj->ij", prod)).max()))
    assert special <= 1e-12
    report(5, f"two-sided residual max {worst:.2e} <= 1e-9; "
              f"matrix-units trace form max {special:.2e} <= 1e-12")


def test_criterion_06_schur_orthogonality():
    worst = 0.0
    for ref in ("builtin:symmetric_inverse:2", "builtin:symmetric_inverse:3"):
        res = schur_residual(get_structure(ref), get_irreps(ref))
        worst = max(worst, res)
        assert res <= 1e-8, ref
    report(6, f"Schur delta pattern residual max {worst:.2e} <= 1e-8")


def test_criterion_07_bochner_biconditional():
    total = 0
    suite_refs = (
        "builtin:matrix_units:2",
        "builtin:matrix_units:3",
        "builtin:symmetric_inverse:2",
        "builtin:symmetric_inverse:3",
        "builtin:cyclic_with_zero:3",
    )
    for ref in suite_refs:
        st = get_structure(ref)
        reps = get_irreps(ref)
        for seed in range(50):
            for f in (gram_pd_map(st, 2, seed=seed), random_map(st, 2, seed=seed)):
                rep = bochner_check(f, reps, tol=1e-8)
                assert rep.agrees, (ref, seed)
                total += 1
    st2 = get_structure("builtin:matrix_units:2")
    reps2 = get_irreps("builtin:matrix_units:2")
    for seed in range(50):
        f = random_cp_map(2, 2, kraus_count=2, seed=seed, structure=st2)
        rep = bochner_check(f, reps2, tol=1e-8)
        assert rep.agrees and rep.pd.verdict and rep.transforms_verdict
        total += 1
    for m in (2, 3):
        st = get_structure(f"builtin:matrix_units:{m}")
        rep = bochner_check(transpose_map(m, st), get_irreps(f"builtin:matrix_units:{m}"), tol=1e-8)
        assert rep.agrees and not rep.pd.verdict
        total += 1
    st2 = get_structure("builtin:matrix_units:2")
    tr_report = bochner_check(transpose_map(2, st2), reps2, tol=1e-8)
    assert abs(tr_report.transforms_witness - (-1.0)) <= 1e-9
    assert total >= 500
    report(7, f"{total} maps, zero disagreements at 1e-8; transpose witness "
              f"{tr_report.transforms_witness:+.9f} = -1 +- 1e-9")


def test_criterion_08_stinespring():
    recon = ident = mult = star = 0.0
    count = 0
    i2 = get_structure("builtin:symmetric_inverse:2")
    mu2 = get_structure("builtin:matrix_units:2")
    cases = [gram_pd_map(i2, 2, seed=s) for s in range(25)]
    for s in range(25):
        f = random_cp_map(2, 2, kraus_count=2, seed=s, structure=mu2)
        cases.append(MatrixMap(mu2, 2, GROUPOID, f.values))
    for f in cases:
        dil = stinespring(f, tol=1e-9)
        recon = max(recon, dil.reconstruction_residual)
        ident = max(ident, dil.identity_residual)
        mult = max(mult, dil.multiplicativity_residual)
        star = max(star, dil.star_residual)
        assert dil.dim <= (f.structure.table.order - 1) * f.dim
        count += 1
    assert count == 50
    assert recon <= 1e-8 and ident <= 1e-8
    assert mult <= 1e-10 and star <= 1e-10
    report(8, f"50 dilations: reconstruction {recon:.2e} <= 1e-8, identity {ident:.2e} "
              f"<= 1e-8, pi residuals {max(mult, star):.2e} <= 1e-10")


def test_criterion_09_unitary_conjugation_criterion():
    worst = 0.0
    for seed in range(50):
        m = 2 if seed % 2 == 0 else 3
        w = random_unitary(m, seed=seed)
        ok, u, residual = is_unitary_conjugation_rep(conjugation_rep(w), tol=1e-9)
        assert ok and residual <= 1e-9
        idx = np.unravel_index(np.abs(w).argmax(), w.shape)
        phase = u[idx] / w[idx]
        err = float(np.abs(u - phase * w).max())
        worst = max(worst, err)
        assert err <= 1e-9
    assert not is_unitary_conjugation_rep(direct_sum_rep(2, copies=2))[0]
    assert not is_unitary_conjugation_rep(direct_sum_rep(2, copies=1, pad=1))[0]
    st = get_structure("builtin:matrix_units:2")
    probe = cp_correspondence_probe(identity_rep(2), st, trials=500, seed=0)
    assert probe.perfect
    report(9, f"50 conjugations recovered (max phase-aligned error {worst:.2e}); "
              f"X->X(+)X and X->X(+)0 rejected; identity-rep probe 500/500")


def test_criterion_10_exact_combinatorics():
    for ref in BUILTINS:
        st = get_structure(ref)
        nz = list(st.nonzero)
        pos = {s: i for i, s in enumerate(nz)}
        zeta = st.leq[np.ix_(nz, nz)].astype(np.int64)
        mob = st.mobius[np.ix_(nz, nz)]
        eye = np.eye(len(nz), dtype=np.int64)
        assert np.array_equal(zeta @ mob, eye) and np.array_equal(mob @ zeta, eye)
        m, m_inv = groupoid_basis_matrices(st)
        assert np.array_equal(m @ m_inv, eye)
        tab = st.table.table
        for s in nz:
            for t in nz:
                if st.ran[s] == st.ran[t]:
                    prod = tab[int(st.inv[s]), t]
                    is_idem = prod != st.zero and tab[prod, prod] == prod
                    assert is_idem == (s == t)
        for a in nz:
            for b in nz:
                want = np.zeros(len(nz), dtype=np.int64)
                gp = groupoid_product(st, a, b)
                if gp is not None:
                    want[pos[gp]] = 1
                natural = np.zeros(len(nz), dtype=np.int64)
                for i, s in enumerate(nz):
                    if m[i, pos[a]]:
                        for j, t in enumerate(nz):
                            if m[j, pos[b]]:
                                u = int(tab[s, t])
                                if u != st.zero:
                                    natural[pos[u]] += m[i, pos[a]] * m[j, pos[b]]
                assert np.array_equal(zeta @ natural, want)
    report(10, f"Mobius/zeta, basis roundtrip, idempotent lemma and groupoid rule "
               f"exact on {len(BUILTINS)} builtins")


def test_criterion_11_cli_determinism(tmp_path):
    suite = [
        ["analyze", "builtin:symmetric_inverse:2"],
        ["analyze", "builtin:matrix_units:3"],
        ["fourier", str(SAMPLE_DATA / "kraus_m2_seed1.json")],
        ["invert", str(SAMPLE_DATA / "random_i2_seed0.json")],
        ["plancherel", str(SAMPLE_DATA / "random_i2_seed0.json"),
         str(SAMPLE_DATA / "random_i2_seed1.json")],
        ["convolve", str(SAMPLE_DATA / "random_i2_seed0.json"),
         str(SAMPLE_DATA / "random_i2_seed1.json")],
        ["check", str(SAMPLE_DATA / "transpose_m2.json"), "--which", "bochner"],
        ["check", str(SAMPLE_DATA / "kraus_m2_seed1.json"), "--which", "cp"],
        ["check", str(SAMPLE_DATA / "gram_i2_seed0.json"), "--which", "pd"],
        ["stinespring", str(SAMPLE_DATA / "gram_i2_seed0.json")],
        ["cpprobe", str(SAMPLE_DATA / "identity_rep_m2.json"), "--trials", "50"],
    ]
    for i, argv in enumerate(suite):
        a = tmp_path / f"run1_{i}.json"
        b = tmp_path / f"run2_{i}.json"
        assert cli_main(["--out", str(a), "--seed", "7"] + argv) == 0
        assert cli_main(["--out", str(b), "--seed", "7"] + argv) == 0
        assert a.read_bytes() == b.read_bytes(), argv
    report(11, f"{len(suite)} CLI commands byte-identical across two runs")
