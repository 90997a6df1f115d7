"""Dense complex linear-algebra kernels shared by the rest of the library.

Matrices are plain ``numpy.ndarray`` objects of complex dtype in row-major
order.  Everything at desk scale is dense; dimensions stay well below ~200.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian

# Global default: comparisons are relative to max(1, scale) at this tolerance.
DEFAULT_TOL = 1e-9


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product with row-major block layout."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


@dataclass(frozen=True)
class BlockTensor:
    """An element of M_d x M_n stored as one (d*n) x (d*n) matrix.

    The factor dimensions are kept explicit so partial traces are well
    defined.  Fourier transforms, Choi matrices and supermap tensors all
    live here.
    """

    dim_left: int
    dim_right: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_cmatrix(self.matrix).copy()
        dn = self.dim_left * self.dim_right
        if m.shape != (dn, dn):
            raise DimensionMismatch(
                f"BlockTensor matrix must be {dn}x{dn}, got {m.shape}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def reshaped(self) -> np.ndarray:
        """View as a 4-index array T[a, i, b, j] with a,b left and i,j right."""
        d, n = self.dim_left, self.dim_right
        return self.matrix.reshape(d, n, d, n)


def partial_trace_left(t: BlockTensor) -> np.ndarray:
    """Trace out the left factor: result[i, j] = sum_k T[(k,i),(k,j)]."""
    return np.einsum("kikj->ij", t.reshaped())


def partial_trace_right(t: BlockTensor) -> np.ndarray:
    """Trace out the right factor: result[a, b] = sum_k T[(a,k),(b,k)]."""
    return np.einsum("akbk->ab", t.reshaped())


def hermitian_defect(a) -> float:
    """Max-abs deviation of ``a`` from its own conjugate transpose."""
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch("hermitian defect needs a square matrix")
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def _require_hermitian(a: np.ndarray, tol: float) -> np.ndarray:
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    defect = hermitian_defect(a)
    if defect > tol * scale:
        raise NotHermitian(f"hermitian defect {defect:.3e} exceeds {tol:.1e} * {scale:.3e}")
    return (a + a.conj().T) / 2.0


def min_eigenvalue_hermitian(a, tol: float = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of the Hermitized (a + a^dagger)/2.

    Raises NotHermitian when ``a`` deviates from Hermitian by more than
    tol * max(1, max-abs entry).
    """
    m = as_cmatrix(a)
    h = _require_hermitian(m, tol)
    if h.size == 0:
        return 0.0
    return float(np.linalg.eigvalsh(h)[0])


def is_psd(a, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """PSD test with witness.

    Returns (verdict, witness) where witness is the smallest eigenvalue of
    the Hermitized matrix and the verdict is ``witness >= -tol * max(1, ||a||_2)``.
    """
    m = as_cmatrix(a)
    h = _require_hermitian(m, tol)
    if h.size == 0:
        return True, 0.0
    w = np.linalg.eigvalsh(h)
    lo = float(w[0])
    norm2 = float(max(abs(w[0]), abs(w[-1])))
    return lo >= -tol * max(1.0, norm2), lo


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))


def max_abs(a) -> float:
    m = np.asarray(a, dtype=complex)
    return float(np.abs(m).max()) if m.size else 0.0
