"""Algebra of maps: semigroup convolution, tensor lift, Choi matrix and
inversion, and the supermap layer (basis supermaps, star convolution,
representing map).

The convolution of two maps sums Phi(s_i) Phi'(s_j) over all factorizations
s_i s_j = s_k with nonzero factors; it corresponds to the product of the
lifted tensors in C0[S] (x) M_n.  On the matrix-unit semigroup the lift is
the Choi matrix and convolution becomes the product preserved by the
Choi-Jamiolkowski isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cxmat import BlockTensor
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    WrongBasis,
    WrongSemigroup,
)
from .harmonic import NATURAL, MatrixMap, check_same_semigroup
from .semigroup import InverseStructure, build_matrix_units, matrix_unit_index


def _factorizations(structure: InverseStructure) -> dict[int, list[tuple[int, int]]]:
    """For every nonzero k, the list of nonzero pairs (i, j) with i*j = k."""
    z = structure.zero
    tab = structure.table.table
    out: dict[int, list[tuple[int, int]]] = {k: [] for k in structure.nonzero}
    for i in structure.nonzero:
        row = tab[i]
        for j in structure.nonzero:
            k = int(row[j])
            if k != z:
                out[k].append((i, j))
    return out


def convolve(f1: MatrixMap, f2: MatrixMap) -> MatrixMap:
    """Semigroup convolution of two natural-basis maps."""
    check_same_semigroup(f1, f2)
    if f1.basis != NATURAL or f2.basis != NATURAL:
        raise WrongBasis("convolution is defined on natural-basis maps")
    st = f1.structure
    out = np.zeros_like(f1.values)
    for k, pairs in _factorizations(st).items():
        for i, j in pairs:
            out[k] += f1.values[i] @ f2.values[j]
    return MatrixMap(st, f1.dim, NATURAL, out)


@dataclass(frozen=True)
class TensorAlgebraElement:
    """An element of C0[S] (x) M_n: one n x n coefficient per nonzero element."""

    structure: InverseStructure
    dim: int
    coeffs: np.ndarray  # (|S|, n, n), zero slot unused

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        c = c.copy()
        c[self.structure.zero] = 0.0
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)


def tensor_lift(f: MatrixMap) -> TensorAlgebraElement:
    """Phi -> sum_s s (x) Phi(s)."""
    if f.basis != NATURAL:
        raise WrongBasis("tensor_lift expects a natural-basis map")
    return TensorAlgebraElement(f.structure, f.dim, f.values)


def tensor_mul(x: TensorAlgebraElement, y: TensorAlgebraElement) -> TensorAlgebraElement:
    """Product in C0[S] (x) M_n: multiply basis elements via the table, drop z."""
    if not x.structure.same_semigroup(y.structure) or x.dim != y.dim:
        raise DimensionMismatch("tensor elements are incompatible")
    st = x.structure
    z = st.zero
    tab = st.table.table
    out = np.zeros_like(x.coeffs)
    for i in st.nonzero:
        for j in st.nonzero:
            k = int(tab[i, j])
            if k != z:
                out[k] += x.coeffs[i] @ y.coeffs[j]
    return TensorAlgebraElement(st, x.dim, out)


def tensor_to_map(x: TensorAlgebraElement) -> MatrixMap:
    return MatrixMap(x.structure, x.dim, NATURAL, x.coeffs)


# --- Choi matrix on the matrix-unit semigroup ------------------------------

def matrix_units_size(structure: InverseStructure) -> int:
    """Return m when the structure is build_matrix_units(m), else raise."""
    n = structure.table.order
    m = round((n - 1) ** 0.5)
    if m * m + 1 == n:
        ref = build_matrix_units(m)
        if structure.table.same_semigroup(ref):
            return m
    raise WrongSemigroup("operation requires the matrix-unit semigroup")


def choi(f: MatrixMap) -> BlockTensor:
    """Choi matrix sum_ij e_ij (x) Phi(e_ij) of a map on matrix units."""
    m = matrix_units_size(f.structure)
    # the natural order on matrix units is discrete, so both bases store Phi(e_ij)
    vals = f.values
    n = f.dim
    c = np.zeros((m, n, m, n), dtype=complex)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            c[i - 1, :, j - 1, :] = vals[matrix_unit_index(m, i, j)]
    return BlockTensor(m, n, c.reshape(m * n, m * n))


def choi_invert(c: BlockTensor, x: np.ndarray) -> np.ndarray:
    """Choi inversion: Phi(X) = tr_1[(X^T (x) I) C_Phi]."""
    x = np.asarray(x, dtype=complex)
    m = c.dim_left
    if x.shape != (m, m):
        raise DimensionMismatch(f"argument must be {m}x{m}, got {x.shape}")
    # tr_1[(X^T (x) I) C][i, j] = sum_{a, b} X[a, b] C[(a, i), (b, j)]
    return np.einsum("ab,aibj->ij", x, c.reshaped())


def map_from_choi(c: BlockTensor, structure: InverseStructure) -> MatrixMap:
    """Decode a Choi tensor back to a natural-basis map on matrix units."""
    m = matrix_units_size(structure)
    if c.dim_left != m:
        raise DimensionMismatch("Choi tensor does not match the semigroup")
    n = c.dim_right
    c4 = c.reshaped()
    vals = np.zeros((structure.table.order, n, n), dtype=complex)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            vals[matrix_unit_index(m, i, j)] = c4[i - 1, :, j - 1, :]
    return MatrixMap(structure, n, NATURAL, vals)


# --- supermaps --------------------------------------------------------------

def map_values_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Convolution of matrix-algebra maps stored as value tables.

    A value table v[i, j] = F(e_ij) in M_n has shape (m, m, n, n);
    (F * G)(e_ij) = sum_k F(e_ik) G(e_kj).
    """
    if a.shape != b.shape:
        raise DimensionMismatch("convolution needs equal shapes")
    return np.einsum("ikab,kjbc->ijac", a, b)


def map_values_to_choi(v: np.ndarray) -> BlockTensor:
    m, _, n, _ = v.shape
    return BlockTensor(m, n, np.einsum("ijab->iajb", v).reshape(m * n, m * n))


def choi_to_map_values(c: BlockTensor) -> np.ndarray:
    m, n = c.dim_left, c.dim_right
    return np.einsum("iajb->ijab", c.reshaped())


def supermap_basis(i: int, j: int, k: int, l: int, m1: int, n2: int) -> np.ndarray:
    """The basis map A -> tr(e_ij^dagger A) e_kl, as its value table.

    Indices are 1-based; (i, j) ranges over the source units, (k, l) over
    the target units.
    """
    if not (1 <= i <= m1 and 1 <= j <= m1 and 1 <= k <= n2 and 1 <= l <= n2):
        raise IndexOutOfRange(f"basis indices ({i},{j},{k},{l}) out of range")
    v = np.zeros((m1, m1, n2, n2), dtype=complex)
    v[i - 1, j - 1, k - 1, l - 1] = 1.0
    return v


@dataclass(frozen=True)
class Supermap:
    """A linear map between spaces of matrix-algebra maps.

    ``action[i, j, k, l]`` is the value table (over M_{m3} units, values in
    M_{n4}) of the image of the source basis map with indices (i, j, k, l);
    all indices 0-based internally.
    """

    m1: int
    n2: int
    m3: int
    n4: int
    action: np.ndarray  # (m1, m1, n2, n2, m3, m3, n4, n4)

    def __post_init__(self):
        a = np.asarray(self.action, dtype=complex)
        want = (self.m1, self.m1, self.n2, self.n2, self.m3, self.m3, self.n4, self.n4)
        if a.shape != want:
            raise DimensionMismatch(f"action tensor must have shape {want}, got {a.shape}")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "action", a)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Apply to a map given by its value table v[i, j] = Gamma(e_ij)."""
        if v.shape != (self.m1, self.m1, self.n2, self.n2):
            raise DimensionMismatch("value table does not match supermap source dims")
        return np.einsum("ijkl,ijklpqrs->pqrs", v, self.action)


def identity_supermap(m1: int, n2: int) -> Supermap:
    """The supermap Theta(F) = F (source and target spaces coincide)."""
    action = np.zeros((m1, m1, n2, n2, m1, m1, n2, n2), dtype=complex)
    for i in range(m1):
        for j in range(m1):
            for k in range(n2):
                for l in range(n2):
                    action[i, j, k, l, i, j, k, l] = 1.0
    return Supermap(m1, n2, m1, n2, action)


def unit_supermap(m1: int, n2: int, m3: int, n4: int) -> Supermap:
    """The unit of star convolution: E_ijkl -> delta_ij delta_kl (unit of *)."""
    conv_unit = np.zeros((m3, m3, n4, n4), dtype=complex)
    for p in range(m3):
        conv_unit[p, p] = np.eye(n4)
    action = np.zeros((m1, m1, n2, n2, m3, m3, n4, n4), dtype=complex)
    for i in range(m1):
        for k in range(n2):
            action[i, i, k, k] = conv_unit
    return Supermap(m1, n2, m3, n4, action)


def supermap_convolve(t1: Supermap, t2: Supermap) -> Supermap:
    """(T1 star T2)(E_ijkl) = sum_pq T1(E_ipkq) * T2(E_pjql)."""
    if (t1.m1, t1.n2, t1.m3, t1.n4) != (t2.m1, t2.n2, t2.m3, t2.n4):
        raise DimensionMismatch("supermaps have different dimension signatures")
    action = np.einsum("ipkquwab,pjqlwvbc->ijkluvac", t1.action, t2.action)
    return Supermap(t1.m1, t1.n2, t1.m3, t1.n4, action)


def representing_map(t: Supermap, x: BlockTensor) -> BlockTensor:
    """Action on Choi tensors: T(X) = Choi(Theta(map decoded from X))."""
    if (x.dim_left, x.dim_right) != (t.m1, t.n2):
        raise DimensionMismatch("Choi tensor does not match supermap source dims")
    return map_values_to_choi(t.apply(choi_to_map_values(x)))


def supermap_reconstruction(t: Supermap) -> np.ndarray:
    """The tensor sum_ijkl E_ijkl (x) Theta(E_ijkl): the action table itself."""
    out = np.zeros_like(t.action)
    for i in range(t.m1):
        for j in range(t.m1):
            for k in range(t.n2):
                for l in range(t.n2):
                    basis = supermap_basis(i + 1, j + 1, k + 1, l + 1, t.m1, t.n2)
                    out[i, j, k, l] = t.apply(basis)
    return out
