"""Positive definiteness, Bochner verification, Stinespring dilation, CP
checks, the unitary-conjugation criterion, and seeded map generators.

A map is positive definite when the block matrix of its values on products
s^-1 s' is PSD; the groupoid and per-class characterizations assemble the
same verdict from groupoid products.  Bochner ties the verdict on the
groupoid-side map to PSD-ness of every Fourier transform over the induced
unitary family, and the Stinespring dilation realizes any such map as
V^dagger pi(.) V via a GNS quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cxmat import DEFAULT_TOL, BlockTensor, hermitian_defect
from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NotARepresentation,
    NotPositiveDefinite,
    ReconstructionFailure,
    WrongBasis,
    WrongSemigroup,
)
from .harmonic import (
    GROUPOID,
    NATURAL,
    InducedRep,
    MatrixMap,
    fourier,
    induced_irreps,
    to_groupoid,
)
from .maps import choi, choi_invert, matrix_units_size
from .semigroup import InverseStructure, build_matrix_units, matrix_unit_index

PD_MODES = ("natural", "groupoid", "blocks")


def _psd_verdict(mat: np.ndarray, tol: float) -> tuple[bool, float, float]:
    """PSD verdict tolerant of non-Hermitian input.

    Non-Hermitian matrices are simply not positive semidefinite; the verdict
    carries the min eigenvalue of the Hermitization and the hermitian defect.
    """
    if mat.size == 0:
        return True, 0.0, 0.0
    defect = hermitian_defect(mat)
    scale = max(1.0, float(np.abs(mat).max()))
    h = (mat + mat.conj().T) / 2.0
    w = np.linalg.eigvalsh(h)
    lo = float(w[0])
    norm2 = float(max(abs(w[0]), abs(w[-1])))
    return defect <= tol * scale and lo >= -tol * max(1.0, norm2), lo, defect


# --- evaluation of the stored linear map on either basis --------------------

def eval_natural(f: MatrixMap) -> np.ndarray:
    """Values of the stored linear map on natural elements: Lambda(s).

    For a groupoid-tagged map this sums the stored groupoid values over the
    down-set of s (since s = sum_{t <= s} floor(t)).
    """
    if f.basis == NATURAL:
        return f.values
    leq = f.structure.leq.astype(float)
    return np.einsum("ts,tij->sij", leq, f.values)


def eval_groupoid(f: MatrixMap) -> np.ndarray:
    """Values of the stored linear map on groupoid elements: Lambda(floor(s))."""
    if f.basis == GROUPOID:
        return f.values
    mob = f.structure.mobius.astype(float)
    return np.einsum("ts,tij->sij", mob, f.values)


def _pd_matrix_natural(f: MatrixMap) -> np.ndarray:
    st = f.structure
    vals = eval_natural(f)
    nz = st.nonzero
    n = f.dim
    big = np.zeros((len(nz) * n, len(nz) * n), dtype=complex)
    for a, s in enumerate(nz):
        for b, t in enumerate(nz):
            u = st.mul(int(st.inv[s]), t)
            if u != st.zero:
                big[a * n : (a + 1) * n, b * n : (b + 1) * n] = vals[u]
    return big


def _pd_matrix_groupoid(f: MatrixMap, elements) -> np.ndarray:
    st = f.structure
    vals = eval_groupoid(f)
    n = f.dim
    big = np.zeros((len(elements) * n, len(elements) * n), dtype=complex)
    for a, s in enumerate(elements):
        for b, t in enumerate(elements):
            # floor(s^-1) floor(t) = floor(s^-1 t) iff ran(s) = ran(t)
            if st.ran[s] == st.ran[t]:
                u = st.mul(int(st.inv[s]), t)
                big[a * n : (a + 1) * n, b * n : (b + 1) * n] = vals[u]
    return big


@dataclass(frozen=True)
class PDSlice:
    """Verdict of one positive-definiteness characterization."""

    mode: str
    verdict: bool
    witness: float          # min eigenvalue (worst class in blocks mode)
    hermitian_defect: float
    per_class: tuple[tuple[int, bool, float], ...] | None = None


def pd_check(f: MatrixMap, mode: str = "natural", tol: float = DEFAULT_TOL) -> PDSlice:
    """Positive-definiteness of the linear map f denotes, one mode at a time.

    natural: PSD test of [Lambda(s^-1 s')]; groupoid: of
    [Lambda(floor(s^-1) floor(s'))]; blocks: the groupoid matrix restricted
    to each D-class separately (it is block diagonal across classes).
    """
    if mode not in PD_MODES:
        raise ValueError(f"unknown pd mode {mode!r}")
    st = f.structure
    if mode == "natural":
        ok, lo, defect = _psd_verdict(_pd_matrix_natural(f), tol)
        return PDSlice(mode, ok, lo, defect)
    if mode == "groupoid":
        ok, lo, defect = _psd_verdict(_pd_matrix_groupoid(f, st.nonzero), tol)
        return PDSlice(mode, ok, lo, defect)
    per = []
    verdict = True
    worst = np.inf
    worst_defect = 0.0
    for k, cls in enumerate(st.dclasses):
        ok, lo, defect = _psd_verdict(_pd_matrix_groupoid(f, cls), tol)
        per.append((k, ok, lo))
        verdict = verdict and ok
        worst = min(worst, lo)
        worst_defect = max(worst_defect, defect)
    return PDSlice(mode, verdict, float(worst), worst_defect, tuple(per))


# --- Bochner ----------------------------------------------------------------

@dataclass(frozen=True)
class BochnerReport:
    pd: PDSlice
    transform_verdicts: tuple[tuple[str, bool, float], ...]  # (irrep id, psd, witness)
    transforms_verdict: bool
    transforms_witness: float

    @property
    def agrees(self) -> bool:
        return self.pd.verdict == self.transforms_verdict


def bochner_check(
    f: MatrixMap,
    reps: list[InducedRep] | None = None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> BochnerReport:
    """Verify the biconditional: groupoid-side map PD iff all transforms PSD.

    The Fourier transforms are those of f itself; the PD verdict is taken on
    the groupoid-side coefficients, exactly as the biconditional states it.
    A decisive disagreement raises InternalInconsistency (a bug signal).
    """
    st = f.structure
    if reps is None:
        reps = induced_irreps(st, seed=seed)
    tilde = f if f.basis == GROUPOID else to_groupoid(f)
    pd = pd_check(tilde, "groupoid", tol)
    per = []
    all_ok = True
    worst = np.inf
    for rep in reps:
        t = fourier(f, rep).matrix
        ok, lo, _ = _psd_verdict(t, tol)
        per.append((rep.irrep_id, ok, lo))
        all_ok = all_ok and ok
        worst = min(worst, lo)
    report = BochnerReport(pd, tuple(per), all_ok, float(worst))
    if pd.verdict != all_ok:
        band = 10.0 * tol * max(1.0, abs(pd.witness), abs(report.transforms_witness))
        if min(abs(pd.witness), abs(report.transforms_witness)) > band:
            raise InternalInconsistency(
                f"Bochner disagreement: pd witness {pd.witness:.3e}, "
                f"transform witness {report.transforms_witness:.3e}"
            )
    return report


# --- Stinespring dilation ----------------------------------------------------

@dataclass(frozen=True)
class Dilation:
    """GNS dilation data: Phi(floor(s)) = V^dagger pi(floor(s)) V."""

    dim: int
    v: np.ndarray                     # (dim, n)
    pi: np.ndarray                    # (|S|, dim, dim), zero slot unused
    reconstruction_residual: float
    identity_residual: float          # || V^dagger V - Phi(identity) ||
    multiplicativity_residual: float
    star_residual: float


def _left_mult_operators(st: InverseStructure, n: int) -> np.ndarray:
    """L_s on C0[S] (x) C^n coefficient vectors, per nonzero s (0/1 matrices)."""
    nz = list(st.nonzero)
    pos = {s: i for i, s in enumerate(nz)}
    dim = len(nz) * n
    ops = np.zeros((st.table.order, dim, dim))
    for s in nz:
        for t in nz:
            if st.dom[s] == st.ran[t]:
                u = st.mul(s, t)
                for i in range(n):
                    ops[s, pos[u] * n + i, pos[t] * n + i] = 1.0
    return ops


def stinespring(f: MatrixMap, tol: float = DEFAULT_TOL) -> Dilation:
    """Dilate a positive definite groupoid-basis map via the GNS quotient.

    The Gram matrix of the sesquilinear form is eigendecomposed; eigenpairs
    above tol * ||G||_2 span the quotient, pi compresses left multiplication
    to that basis, and V is the class of (identity (x) x).  All invariants
    are verified a posteriori and their residuals recorded.
    """
    if f.basis != GROUPOID:
        raise WrongBasis("stinespring expects a groupoid-basis map")
    st = f.structure
    n = f.dim
    nz = list(st.nonzero)
    pos = {s: i for i, s in enumerate(nz)}
    gram = _pd_matrix_groupoid(f, nz)
    ok, lo, defect = _psd_verdict(gram, tol)
    if not ok:
        raise NotPositiveDefinite(
            f"map is not positive definite (min eig {lo:.3e}, hermitian defect {defect:.3e})"
        )
    gram = (gram + gram.conj().T) / 2.0
    w, u = np.linalg.eigh(gram)
    norm2 = float(max(abs(w[0]), abs(w[-1]))) if w.size else 0.0
    keep = w > tol * max(1.0, norm2)
    wk = w[keep]
    uk = u[:, keep]
    dim = int(keep.sum())
    coords = np.sqrt(wk)[:, None] * uk.conj().T          # x -> coordinates of [x]
    lift = uk * (1.0 / np.sqrt(wk))[None, :]             # coordinates -> representative

    lmult = _left_mult_operators(st, n)
    pi = np.zeros((st.table.order, dim, dim), dtype=complex)
    for s in nz:
        pi[s] = coords @ lmult[s] @ lift

    # V x = [identity (x) x] with identity = sum over nonzero idempotents
    w_embed = np.zeros((len(nz) * n, n))
    for e in st.idempotents:
        w_embed[pos[e] * n : (pos[e] + 1) * n, :] = np.eye(n)
    v = coords @ w_embed

    phi_identity = f.values[list(st.idempotents)].sum(axis=0)
    recon = 0.0
    star = 0.0
    mult = 0.0
    for s in nz:
        recon = max(recon, float(np.abs(v.conj().T @ pi[s] @ v - f.values[s]).max()))
        star = max(star, float(np.abs(pi[s].conj().T - pi[int(st.inv[s])]).max()))
    for s in nz:
        for t in nz:
            if st.dom[s] == st.ran[t]:
                target = pi[st.mul(s, t)]
            else:
                target = 0.0
            mult = max(mult, float(np.abs(pi[s] @ pi[t] - target).max()))
    ident = float(np.abs(v.conj().T @ v - phi_identity).max())
    if recon > 1e-6:
        raise ReconstructionFailure(f"dilation reconstruction residual {recon:.3e}")
    return Dilation(dim, v, pi, recon, ident, mult, star)


# --- CP checks on matrix units ----------------------------------------------

def cp_check(f: MatrixMap, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Choi criterion: the map is CP iff its Choi matrix is PSD."""
    c = choi(f)  # raises WrongSemigroup off matrix units
    ok, lo, _ = _psd_verdict(c.matrix, tol)
    return ok, lo


# --- representations of the matrix algebra and the CP/positivity criterion ---

@dataclass(frozen=True)
class MatrixAlgebraRep:
    """A representation of M_m given by its values on the matrix units."""

    m: int
    dim: int
    matrices: np.ndarray  # (m, m, dim, dim); matrices[i, j] = rho(e_{i+1, j+1})

    def __post_init__(self):
        a = np.asarray(self.matrices, dtype=complex)
        want = (self.m, self.m, self.dim, self.dim)
        if a.shape != want:
            raise DimensionMismatch(f"matrices must have shape {want}, got {a.shape}")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "matrices", a)


def rep_residual(rho: MatrixAlgebraRep) -> float:
    """Max deviation from rho(e_ij) rho(e_kl) = delta_jk rho(e_il)."""
    worst = 0.0
    for i in range(rho.m):
        for j in range(rho.m):
            for k in range(rho.m):
                for l in range(rho.m):
                    got = rho.matrices[i, j] @ rho.matrices[k, l]
                    want = rho.matrices[i, l] if j == k else 0.0
                    worst = max(worst, float(np.abs(got - want).max()))
    return worst


def verify_rep(rho: MatrixAlgebraRep, tol: float = DEFAULT_TOL) -> float:
    res = rep_residual(rho)
    scale = max(1.0, float(np.abs(rho.matrices).max()))
    if res > tol * scale:
        raise NotARepresentation(f"multiplicativity residual {res:.3e}")
    return res


def rep_fourier(rho: MatrixAlgebraRep, f: MatrixMap) -> BlockTensor:
    """Fourier transform sum_ij rho(e_ij) (x) Phi(e_ij) at an arbitrary rep."""
    m = matrix_units_size(f.structure)
    if m != rho.m:
        raise DimensionMismatch("representation and map have different source sizes")
    d, n = rho.dim, f.dim
    out = np.zeros((d, n, d, n), dtype=complex)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            out += np.einsum(
                "ab,ij->aibj",
                rho.matrices[i - 1, j - 1],
                f.values[matrix_unit_index(m, i, j)],
            )
    return BlockTensor(d, n, out.reshape(d * n, d * n))


def is_unitary_conjugation_rep(
    rho: MatrixAlgebraRep, tol: float = DEFAULT_TOL
) -> tuple[bool, np.ndarray | None, float]:
    """Detect rho(X) = U X U^dagger with U unitary and d_rho = m.

    Returns (verdict, recovered U or None, residual).  U is recovered
    column-by-column from rho(e_i1) acting on a unit vector spanning the
    range of rho(e_11), with the phase fixed so the first significant entry
    of the first column is real positive.
    """
    verify_rep(rho, tol)
    m, d = rho.m, rho.dim
    if d != m:
        return False, None, float("inf")
    p11 = rho.matrices[0, 0]
    svals = np.linalg.svd(p11, compute_uv=False)
    if (svals > tol * max(1.0, float(svals[0]) if svals.size else 1.0)).sum() != 1:
        return False, None, float("inf")
    col = int(np.argmax(np.linalg.norm(p11, axis=0)))
    v = p11[:, col]
    v = v / np.linalg.norm(v)
    u = np.stack([rho.matrices[i, 0] @ v for i in range(m)], axis=1)
    # global phase: first entry of the first column with significant modulus
    first = u[:, 0]
    idx = int(np.argmax(np.abs(first)))
    phase = first[idx] / abs(first[idx])
    u = u / phase
    unitary_defect = float(np.abs(u.conj().T @ u - np.eye(m)).max())
    if unitary_defect > 1e-6:
        return False, u, float("inf")
    residual = 0.0
    eij = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            eij[:] = 0.0
            eij[i, j] = 1.0
            residual = max(
                residual, float(np.abs(rho.matrices[i, j] - u @ eij @ u.conj().T).max())
            )
    return residual <= 1e-6, u, residual


@dataclass(frozen=True)
class ProbeReport:
    trials: int
    agreements: int
    disagreements: tuple[tuple[int, str, float, float], ...]  # (trial, kind, ft witness, cp witness)

    @property
    def perfect(self) -> bool:
        return self.agreements == self.trials


def cp_correspondence_probe(
    rho: MatrixAlgebraRep,
    structure: InverseStructure,
    trials: int = 100,
    seed: int = 0,
    n: int = 2,
    tol: float = DEFAULT_TOL,
) -> ProbeReport:
    """Empirical agreement table between is_psd(FT(rho)) and the Choi verdict.

    Trials cycle through CP maps, transposed CP maps (positive, generally
    not CP), Hermitian-preserving non-positive maps, and unstructured random
    maps.  The report never asserts the criterion; it records the data.
    """
    verify_rep(rho)
    m = matrix_units_size(structure)
    if m != rho.m:
        raise DimensionMismatch("representation does not match the semigroup")
    agreements = 0
    bad = []
    kinds = ("kraus", "transposed_kraus", "hermitian_nonpositive", "unstructured")
    for trial in range(trials):
        kind = kinds[trial % len(kinds)]
        f = _probe_map(structure, m, n, kind, seed, trial)
        ft_ok, ft_lo, _ = _psd_verdict(rep_fourier(rho, f).matrix, tol)
        cp_ok, cp_lo = cp_check(f, tol)
        if ft_ok == cp_ok:
            agreements += 1
        else:
            bad.append((trial, kind, ft_lo, cp_lo))
    return ProbeReport(trials, agreements, tuple(bad))


def _probe_map(structure, m, n, kind, seed, trial) -> MatrixMap:
    if kind == "kraus":
        return random_cp_map(m, n, kraus_count=2, seed=seed * 100003 + trial, structure=structure)
    if kind == "transposed_kraus":
        f = random_cp_map(m, n, kraus_count=2, seed=seed * 100003 + trial, structure=structure)
        vals = f.values.copy()
        for s in structure.nonzero:
            vals[s] = f.values[s].T
        return MatrixMap(structure, n, NATURAL, vals)
    if kind == "hermitian_nonpositive":
        rng = np.random.default_rng([seed, trial, 7])
        h = rng.standard_normal((m * n, m * n)) + 1j * rng.standard_normal((m * n, m * n))
        h = (h + h.conj().T) / 2.0
        c = BlockTensor(m, n, h)
        vals = np.zeros((structure.table.order, n, n), dtype=complex)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                basis = np.zeros((m, m), dtype=complex)
                basis[i - 1, j - 1] = 1.0
                vals[matrix_unit_index(m, i, j)] = choi_invert(c, basis)
        return MatrixMap(structure, n, NATURAL, vals)
    return random_map(structure, n, seed=seed * 100003 + trial)


# --- map generators -----------------------------------------------------------

def kraus_map(
    kraus_ops: list[np.ndarray], structure: InverseStructure | None = None
) -> MatrixMap:
    """The CP map X -> sum_i K_i X K_i^dagger as a natural map on matrix units."""
    ops = [np.asarray(k, dtype=complex) for k in kraus_ops]
    n, m = ops[0].shape
    if any(k.shape != (n, m) for k in ops):
        raise DimensionMismatch("Kraus operators must share one shape")
    if structure is None:
        from .semigroup import inverse_structure

        structure = inverse_structure(build_matrix_units(m))
    else:
        if matrix_units_size(structure) != m:
            raise WrongSemigroup("structure does not match Kraus input dimension")
    vals = np.zeros((structure.table.order, n, n), dtype=complex)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            acc = np.zeros((n, n), dtype=complex)
            for k in ops:
                acc += np.outer(k[:, i - 1], k[:, j - 1].conj())
            vals[matrix_unit_index(m, i, j)] = acc
    return MatrixMap(structure, n, NATURAL, vals)


def random_cp_map(
    m: int,
    n: int,
    kraus_count: int = 2,
    seed: int = 0,
    structure: InverseStructure | None = None,
) -> MatrixMap:
    rng = np.random.default_rng([seed, m, n, kraus_count, 11])
    ops = [
        (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)
        for _ in range(kraus_count)
    ]
    return kraus_map(ops, structure)


def transpose_map(m: int, structure: InverseStructure | None = None) -> MatrixMap:
    """The transpose map on M_m: positive but famously not CP for m >= 2."""
    if structure is None:
        from .semigroup import inverse_structure

        structure = inverse_structure(build_matrix_units(m))
    vals = np.zeros((structure.table.order, m, m), dtype=complex)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            e = np.zeros((m, m), dtype=complex)
            e[j - 1, i - 1] = 1.0
            vals[matrix_unit_index(m, i, j)] = e
    return MatrixMap(structure, m, NATURAL, vals)


def gram_pd_map(structure: InverseStructure, n: int, seed: int = 0) -> MatrixMap:
    """A positive definite groupoid-basis map built from random vectors.

    Compress the left regular action on the groupoid basis (a star
    representation for the standard inner product) by a random V: the block
    matrix of the result is the Gram matrix of the vectors L_s V e_i, hence
    PSD by construction, independently of any Fourier machinery.
    """
    rng = np.random.default_rng([seed, structure.table.order, n, 13])
    nz = list(structure.nonzero)
    lmult = _left_mult_operators(structure, 1)  # n = 1 gives plain L_s on C0[S]
    p = len(nz)
    v = (rng.standard_normal((p, n)) + 1j * rng.standard_normal((p, n))) / np.sqrt(2.0)
    vals = np.zeros((structure.table.order, n, n), dtype=complex)
    for s in nz:
        vals[s] = v.conj().T @ lmult[s] @ v
    return MatrixMap(structure, n, GROUPOID, vals)


def random_map(structure: InverseStructure, n: int, seed: int = 0) -> MatrixMap:
    """An unstructured random natural-basis map (generically not PD)."""
    rng = np.random.default_rng([seed, structure.table.order, n, 17])
    vals = rng.standard_normal((structure.table.order, n, n)) + 1j * rng.standard_normal(
        (structure.table.order, n, n)
    )
    return MatrixMap(structure, n, NATURAL, vals)


def identity_rep(m: int) -> MatrixAlgebraRep:
    mats = np.zeros((m, m, m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            mats[i, j, i, j] = 1.0
    return MatrixAlgebraRep(m, m, mats)


def conjugation_rep(u: np.ndarray) -> MatrixAlgebraRep:
    u = np.asarray(u, dtype=complex)
    m = u.shape[0]
    base = identity_rep(m)
    mats = np.einsum("ab,ijbc,dc->ijad", u, base.matrices, u.conj())
    return MatrixAlgebraRep(m, m, mats)


def direct_sum_rep(m: int, copies: int = 2, pad: int = 0) -> MatrixAlgebraRep:
    """rho(X) = X (+) ... (+) X (+) 0_pad: multiplicative but never a unitary conjugation."""
    d = m * copies + pad
    mats = np.zeros((m, m, d, d), dtype=complex)
    for i in range(m):
        for j in range(m):
            for c in range(copies):
                mats[i, j, c * m + i, c * m + j] = 1.0
    return MatrixAlgebraRep(m, d, mats)


def random_unitary(m: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng([seed, m, 19])
    a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))
