"""Group-level Iwasawa factorizations and adjoint frame coefficients.

Two factorization orders are provided for SL(n,R) in the standard triangular
realization (K = SO(n), A = positive diagonals, N^+/N^- = upper/lower
unipotent): g = k a n and g = n a k.  Both reduce to one tested
Gram-Schmidt kernel; the n-a-k order is obtained by transposing.

``adjoint_coefficients`` expands Ad((g n)^{-1}) Y in the frame
{X_{lambda,i}, X_{-lambda,i}, H_i} modulo the centralizer of the Abelian
subspace, which is exactly the coefficient data the chart vector fields need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasisIllConditionedError, SingularInputError
from .lie_structure import StructureData
from .matrices import frobenius_inner, gram_schmidt_qr

DET_TOL = 1e-10


@dataclass
class IwasawaFactors:
    k: np.ndarray
    a: np.ndarray
    n: np.ndarray
    variant: str                      # "KAN" or "NAK"

    def product(self):
        if self.variant == "KAN":
            return self.k @ self.a @ self.n
        return self.n @ self.a @ self.k


@dataclass
class DecompCoefficients:
    """Coefficients of the adjoint-transported frame expansion.

    c_plus[(root_index, i)] multiplies X_{lambda,i}, c_minus the mirrored
    X_{-lambda,i}, c_h the dual basis H_i; m_residual is the part lying in
    the centralizer of the Abelian subspace (reported, not discarded).
    """

    c_plus: dict
    c_minus: dict
    c_h: np.ndarray
    m_residual: np.ndarray

    def plus_vector(self, s):
        return np.array(
            [self.c_plus[key] for key in _frame_keys(s)]
        )

    def minus_vector(self, s):
        return np.array(
            [self.c_minus[key] for key in _frame_keys(s)]
        )


def _frame_keys(s: StructureData):
    keys = []
    for ri, r in enumerate(s.positive_roots):
        for i in range(r.multiplicity):
            keys.append((ri, i))
    return keys


def _check_det(g):
    g = np.asarray(g, dtype=float)
    det = np.linalg.det(g)
    if np.any(np.abs(det - 1.0) > 1e-8):
        raise SingularInputError("input is not unimodular within tolerance")
    return g


def iwasawa_kan(g, s: StructureData) -> IwasawaFactors:
    """g = k a n with k special orthogonal, a positive diagonal, n upper unipotent.

    Computed by Gram-Schmidt orthonormalization of the columns of g with
    positive normalizers; det g = 1 forces det k = +1.
    """
    g = _check_det(g)
    q, r = gram_schmidt_qr(g)
    a = np.zeros_like(g)
    diag = np.einsum("...ii->...i", r)
    np.einsum("...ii->...i", a)[...] = diag
    n = r / diag[..., :, None]
    return IwasawaFactors(k=q, a=a, n=n, variant="KAN")


def iwasawa_nak(g, s: StructureData) -> IwasawaFactors:
    """g = n a k with n lower unipotent: the KAN kernel applied to g^T.

    g^T = k1 a1 n1 gives g = n1^T a1 k1^T with n1^T lower unipotent.
    """
    g = _check_det(g)
    q, r = gram_schmidt_qr(np.swapaxes(g, -1, -2))
    a = np.zeros_like(g)
    diag = np.einsum("...ii->...i", r)
    np.einsum("...ii->...i", a)[...] = diag
    n_upper = r / diag[..., :, None]
    return IwasawaFactors(
        k=np.swapaxes(q, -1, -2),
        a=a,
        n=np.swapaxes(n_upper, -1, -2),
        variant="NAK",
    )


def adjoint_coefficients(Y, g, n, s: StructureData) -> DecompCoefficients:
    """Expand Ad((g n)^{-1}) Y over the root/Cartan frame, modulo centralizer.

    Parameters
    ----------
    Y : (n, n) algebra element
    g : group matrix
    n : group matrix in the lower unipotent subgroup
    s : StructureData

    Returns the frame coefficients and the centralizer component; the
    expansion solves the Gram system of the positive form, so the result is
    exact up to conditioning (guarded at 1e12).
    """
    Y = np.asarray(Y, dtype=float)
    gn = np.asarray(g, dtype=float) @ np.asarray(n, dtype=float)
    transported = np.linalg.solve(gn, Y @ gn)

    frame = []
    keys = _frame_keys(s)
    for ri, i in keys:
        frame.append(s.positive_roots[ri].root_vectors[i])
    for ri, i in keys:
        frame.append(_minus_vector(s, ri, i))
    frame.extend(s.dual_basis)
    frame.extend(s.m_basis)

    gram = np.array([[frobenius_inner(A, B) for B in frame] for A in frame])
    rhs = np.array([frobenius_inner(A, transported) for A in frame])
    cond = np.linalg.cond(gram)
    if cond > 1e12:
        raise BasisIllConditionedError(f"frame Gram condition number {cond:.3e}")
    coeffs = np.linalg.solve(gram, rhs)

    kcount = len(keys)
    c_plus = {key: coeffs[j] for j, key in enumerate(keys)}
    c_minus = {key: coeffs[kcount + j] for j, key in enumerate(keys)}
    c_h = coeffs[2 * kcount: 2 * kcount + s.rank]
    m_part = np.zeros_like(Y)
    for j, M in enumerate(s.m_basis):
        m_part = m_part + coeffs[2 * kcount + s.rank + j] * M

    reconstructed = m_part.copy()
    for j, A in enumerate(frame[: 2 * kcount + s.rank]):
        reconstructed = reconstructed + coeffs[j] * A
    residual = transported - reconstructed
    if np.max(np.abs(residual)) > 1e-9:
        raise BasisIllConditionedError(
            f"frame expansion residual {np.max(np.abs(residual)):.3e}"
        )
    return DecompCoefficients(
        c_plus=c_plus, c_minus=c_minus, c_h=c_h, m_residual=m_part
    )


def _minus_vector(s: StructureData, ri, i):
    offset = sum(r.multiplicity for r in s.positive_roots[:ri])
    return s.n_minus_basis[offset + i]
