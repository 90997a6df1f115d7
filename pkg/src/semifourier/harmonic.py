"""Harmonic analysis on the contracted algebra of a finite inverse semigroup.

Maps into M_n are stored as one value per nonzero element, tagged with the
basis they describe: ``natural`` values are Phi(s); ``groupoid`` values are
the coefficients PhiT(floor(s)) of the same tensor re-expanded in the
groupoid basis, related by up-set sums / Mobius inversion.  Induced irreps
place a maximal-subgroup irrep into idempotent-indexed blocks; the Fourier
transform, its inversion, Plancherel and Schur orthogonality all operate on
that family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cxmat import BlockTensor
from .errors import (
    DimensionMismatch,
    IncompleteIrrepSet,
    SemigroupMismatch,
    WrongBasis,
)
from .grouprep import GroupRep, unitary_irreps
from .semigroup import InverseStructure, maximal_subgroup

NATURAL = "natural"
GROUPOID = "groupoid"


@dataclass(frozen=True)
class MatrixMap:
    """A linear map C0[S] -> M_n given by one n x n value per nonzero element.

    ``values`` has shape (|S|, n, n); the slot at the zero element stays 0.
    ``basis`` says whether values[s] is Phi(s) or PhiT(floor(s)).
    """

    structure: InverseStructure
    dim: int
    basis: str
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        n = self.structure.table.order
        if v.shape != (n, self.dim, self.dim):
            raise DimensionMismatch(
                f"values must have shape ({n}, {self.dim}, {self.dim}), got {v.shape}"
            )
        if self.basis not in (NATURAL, GROUPOID):
            raise WrongBasis(f"unknown basis tag {self.basis!r}")
        v = v.copy()
        v[self.structure.zero] = 0.0
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def value_at(self, name: str) -> np.ndarray:
        return self.values[self.structure.table.index_of(name)]


def check_same_semigroup(a: MatrixMap, b: MatrixMap) -> None:
    if not a.structure.same_semigroup(b.structure):
        raise SemigroupMismatch("maps live on different semigroups")
    if a.dim != b.dim:
        raise DimensionMismatch("maps have different target dimensions")


def to_groupoid(f: MatrixMap) -> MatrixMap:
    """Coefficient change natural -> groupoid: PhiT(floor(s)) = sum_{t >= s} Phi(t)."""
    if f.basis != NATURAL:
        raise WrongBasis("to_groupoid expects a natural-basis map")
    # leq[s, t] = 1 iff s <= t, so summing over the second index walks the up-set
    vals = np.einsum("st,tij->sij", f.structure.leq.astype(float), f.values)
    return MatrixMap(f.structure, f.dim, GROUPOID, vals)


def from_groupoid(f: MatrixMap) -> MatrixMap:
    """Coefficient change groupoid -> natural: Phi(s) = sum_{t >= s} mu(s,t) PhiT(floor(t))."""
    if f.basis != GROUPOID:
        raise WrongBasis("from_groupoid expects a groupoid-basis map")
    mob = f.structure.mobius.astype(float)  # mob[s, t] = mu(s, t) for s <= t
    vals = np.einsum("st,tij->sij", mob, f.values)
    return MatrixMap(f.structure, f.dim, NATURAL, vals)


def groupoid_values(f: MatrixMap) -> np.ndarray:
    """The groupoid-side coefficients of f's tensor, whatever the input tag."""
    return f.values if f.basis == GROUPOID else to_groupoid(f).values


def natural_values(f: MatrixMap) -> np.ndarray:
    return f.values if f.basis == NATURAL else from_groupoid(f).values


@dataclass(frozen=True)
class InducedRep:
    """An irrep of C0[S] induced from a maximal-subgroup irrep.

    ``matrices[s]`` is the action on the groupoid element of s: a single
    d_rho x d_rho block at position (ran(s), dom(s)) among the idempotents
    of the class, zero for elements outside the class.
    """

    structure: InverseStructure
    class_index: int
    group_rep: GroupRep
    dim: int
    matrices: np.ndarray  # (|S|, dim, dim)
    irrep_id: str

    @property
    def weight(self) -> int:
        """r_k * |G_{e_k}| of the underlying class: the inversion constant."""
        return self.structure.ranks[self.class_index] * self.group_rep.group.order

    def natural_matrices(self) -> np.ndarray:
        """Action on natural elements: sigma(s) = sum_{t <= s} sigma(floor(t))."""
        leq = self.structure.leq.astype(float)
        return np.einsum("ts,tab->sab", leq, self.matrices)


def induced_irreps(s: InverseStructure, seed: int = 0) -> list[InducedRep]:
    """The complete induced family, ordered by (class, subgroup irrep)."""
    n = s.table.order
    reps: list[InducedRep] = []
    for k, cls in enumerate(s.dclasses):
        ek = s.base_idempotents[k]
        subgroup = maximal_subgroup(s, ek)
        idems = s.class_idempotents(k)
        pos = {e: i for i, e in enumerate(idems)}
        r = len(idems)
        for i, rho in enumerate(unitary_irreps(subgroup, seed=seed)):
            d = rho.dim
            dim = r * d
            mats = np.zeros((n, dim, dim), dtype=complex)
            for x in cls:
                a = pos[int(s.ran[x])]
                b = pos[int(s.dom[x])]
                g = s.mul(s.mul(int(s.inv[s.transversals[int(s.ran[x])]]), x),
                          s.transversals[int(s.dom[x])])
                mats[x, a * d : (a + 1) * d, b * d : (b + 1) * d] = rho.matrices[
                    subgroup.local_of_ambient(g)
                ]
            reps.append(InducedRep(s, k, rho, dim, mats, f"D{k}.{i}"))
    return reps


def irreps_complete(s: InverseStructure, reps: list[InducedRep]) -> bool:
    return sum(r.dim * r.dim for r in reps) == s.table.order - 1


@dataclass(frozen=True)
class FourierData:
    """A map together with its transform at every induced irrep."""

    map: MatrixMap
    reps: tuple[InducedRep, ...]
    transforms: tuple[BlockTensor, ...]


def fourier(f: MatrixMap, rep: InducedRep) -> BlockTensor:
    """Fourier transform at one irrep: sum_s sigma(floor(s)) (x) PhiT(floor(s))."""
    if not f.structure.same_semigroup(rep.structure):
        raise SemigroupMismatch("map and representation live on different semigroups")
    vals = groupoid_values(f)
    d, n = rep.dim, f.dim
    mat = np.einsum("sab,sij->aibj", rep.matrices, vals).reshape(d * n, d * n)
    return BlockTensor(d, n, mat)


def fourier_transform_all(f: MatrixMap, reps: list[InducedRep]) -> FourierData:
    return FourierData(f, tuple(reps), tuple(fourier(f, r) for r in reps))


def _check_complete(s: InverseStructure, reps) -> None:
    if sum(r.dim * r.dim for r in reps) != s.table.order - 1:
        raise IncompleteIrrepSet("sum of squared dimensions differs from |S| - 1")


def fourier_invert(data: FourierData, s_elem: int) -> np.ndarray:
    """Reconstruct PhiT(floor(s)) from the complete transform family.

    PhiT(floor(s)) = (1 / (r_k |G_k|)) sum_sigma d_sigma
                     tr_sigma[(sigma(floor(s^-1)) (x) I) FT(sigma)],
    with r_k, |G_k| taken from the class of s.
    """
    st = data.map.structure
    _check_complete(st, data.reps)
    if s_elem == st.zero:
        raise ValueError("zero has no groupoid coefficient")
    n = data.map.dim
    sinv = int(st.inv[s_elem])
    total = np.zeros((n, n), dtype=complex)
    weight = None
    for rep, t in zip(data.reps, data.transforms):
        if rep.class_index == st.class_of[s_elem]:
            weight = rep.weight
        block = t.reshaped()
        total += rep.dim * np.einsum("kb,bikj->ij", rep.matrices[sinv], block)
    return total / weight


def invert_to_map(data: FourierData) -> MatrixMap:
    """Full inverse transform, returned as a groupoid-basis map."""
    st = data.map.structure
    n = data.map.dim
    vals = np.zeros((st.table.order, n, n), dtype=complex)
    for s_elem in st.nonzero:
        vals[s_elem] = fourier_invert(data, s_elem)
    return MatrixMap(st, n, GROUPOID, vals)


def plancherel_check(
    f: MatrixMap, g: MatrixMap, reps: list[InducedRep]
) -> tuple[np.ndarray, np.ndarray, float]:
    """Both sides of the Plancherel identity plus their Frobenius distance.

    sum_s r_k |G_k| PhiT(floor(s^-1)) PsiT(floor(s))
        = sum_sigma d_sigma tr_sigma[FT_f(sigma) FT_g(sigma)]
    where (r_k, |G_k|) follow the class of s inside the sum.
    """
    check_same_semigroup(f, g)
    st = f.structure
    _check_complete(st, reps)
    fvals = groupoid_values(f)
    gvals = groupoid_values(g)
    weights = {rep.class_index: rep.weight for rep in reps}
    n = f.dim
    lhs = np.zeros((n, n), dtype=complex)
    for s_elem in st.nonzero:
        k = int(st.class_of[s_elem])
        lhs += weights[k] * (fvals[int(st.inv[s_elem])] @ gvals[s_elem])
    rhs = np.zeros((n, n), dtype=complex)
    for rep in reps:
        t1 = fourier(f, rep).matrix
        t2 = fourier(g, rep).matrix
        prod = (t1 @ t2).reshape(rep.dim, n, rep.dim, n)
        rhs += rep.dim * np.einsum("kikj->ij", prod)
    return lhs, rhs, float(np.linalg.norm(lhs - rhs))


def schur_residual(s: InverseStructure, reps: list[InducedRep]) -> float:
    """Max deviation from the Schur orthogonality pattern over all classes.

    Within a class, sum_{s in D_k} sigma(floor(s))_pq conj(sigma'(floor(s))_rt)
    equals (r_k |G_k| / d_sigma) delta_pr delta_qt when sigma = sigma' and 0
    for inequivalent irreps induced on the same class.
    """
    worst = 0.0
    for k in range(len(s.dclasses)):
        cls = list(s.dclasses[k])
        here = [r for r in reps if r.class_index == k]
        for ri in here:
            ai = ri.matrices[cls]
            for rj in here:
                aj = rj.matrices[cls]
                got = np.einsum("spq,srt->pqrt", ai, aj.conj())
                if ri is rj:
                    d = ri.dim
                    expect = (ri.weight / d) * np.einsum(
                        "pr,qt->pqrt", np.eye(d), np.eye(d)
                    )
                else:
                    expect = np.zeros_like(got)
                worst = max(worst, float(np.abs(got - expect).max()))
    return worst


def conjugated_rep(rep: InducedRep, u: np.ndarray) -> InducedRep:
    """The equivalent irrep U sigma U^dagger (U unitary keeps the family unitary)."""
    if u.shape != (rep.dim, rep.dim):
        raise DimensionMismatch("conjugator has wrong shape")
    mats = np.einsum("ab,sbc,dc->sad", u, rep.matrices, u.conj())
    return InducedRep(
        rep.structure, rep.class_index, rep.group_rep, rep.dim, mats, rep.irrep_id
    )
