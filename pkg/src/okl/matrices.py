"""Dense-matrix utilities: triangular factorizations, nilpotent exp/log, polar data.

Everything here is plain numpy on small (n x n) blocks, vectorized over an
arbitrary number of leading batch axes so the chart-action code can process
whole quadrature grids in one call.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularInputError

PIVOT_TOL = 1e-12


def frobenius_inner(X, Y):
    """Frobenius inner product tr(X Y^T), batched over leading axes."""
    return np.einsum("...ij,...ij->...", X, Y)


def gram_schmidt_qr(g, pivot_tol=PIVOT_TOL):
    """Column Gram-Schmidt with positive normalizers: g = q r.

    q has orthonormal columns, r is upper triangular with strictly positive
    diagonal.  Batched: g may have shape (..., n, n).

    Raises
    ------
    SingularInputError
        if any pivot norm falls below ``pivot_tol``.
    """
    g = np.asarray(g, dtype=float)
    n = g.shape[-1]
    q = np.zeros_like(g)
    r = np.zeros_like(g)
    for j in range(n):
        v = g[..., :, j].copy()
        for i in range(j):
            proj = np.einsum("...k,...k->...", q[..., :, i], g[..., :, j])
            r[..., i, j] = proj
            v -= proj[..., None] * q[..., :, i]
        norm = np.sqrt(np.einsum("...k,...k->...", v, v))
        if np.any(norm < pivot_tol):
            raise SingularInputError(f"pivot norm below {pivot_tol:g} in column {j}")
        r[..., j, j] = norm
        q[..., :, j] = v / norm[..., None]
    return q, r


def nilpotent_exp(X):
    """exp of a nilpotent matrix by its terminating power series (exact)."""
    X = np.asarray(X, dtype=float)
    n = X.shape[-1]
    out = np.zeros_like(X)
    out[...] = np.eye(n)
    term = np.eye(n) * np.ones(X.shape[:-2] + (1, 1))
    for j in range(1, n):
        term = term @ X / j
        out = out + term
    return out


def nilpotent_log(u):
    """log of a unipotent matrix by the terminating series (exact).

    u must be unipotent (eigenvalues all 1); for n x n unipotent triangular
    matrices the series stops after n-1 terms.
    """
    u = np.asarray(u, dtype=float)
    n = u.shape[-1]
    Y = u - np.eye(n)
    out = np.zeros_like(u)
    term = np.eye(n) * np.ones(u.shape[:-2] + (1, 1))
    for j in range(1, n):
        term = term @ Y
        out = out + ((-1) ** (j + 1)) * term / j
    return out


def symmetric_log(p):
    """log of a symmetric positive-definite matrix via eigendecomposition."""
    w, v = np.linalg.eigh(p)
    return np.einsum("...ik,...k,...jk->...ij", v, np.log(w), v)


def polar_distance_proxy(g):
    """Growth-class distance to the identity from the polar factorization.

    For g = p k with p = sqrt(g g^T) symmetric positive and k orthogonal,
    returns ||log p||_F + (rotation angle of k).  Equivalent, up to bounded
    factors, to the left-invariant metric distance d(g, e); inversion
    symmetric: proxy(g) == proxy(g^{-1}).
    """
    g = np.asarray(g, dtype=float)
    n = g.shape[-1]
    s = g @ np.swapaxes(g, -1, -2)
    logp = 0.5 * symmetric_log(s)
    amp = np.sqrt(np.einsum("...ij,...ij->...", logp, logp))
    # k = p^{-1} g; rotation angle from the trace.
    w, v = np.linalg.eigh(s)
    p_inv = np.einsum("...ik,...k,...jk->...ij", v, w ** -0.5, v)
    k = p_inv @ g
    tr = np.einsum("...ii->...", k)
    if n == 2:
        cos = np.clip(tr / 2.0, -1.0, 1.0)
    else:
        cos = np.clip((tr - (n - 2)) / 2.0, -1.0, 1.0)
    return amp + np.arccos(cos)


def smooth_cutoff(r, r_inner, r_outer):
    """C^2 radial cutoff: 1 for r <= r_inner, 0 for r >= r_outer.

    Quintic smoothstep in between (C^2 matching at both seams).
    """
    r = np.asarray(r, dtype=float)
    s = np.clip((r - r_inner) / (r_outer - r_inner), 0.0, 1.0)
    return 1.0 - s ** 3 * (10.0 - 15.0 * s + 6.0 * s ** 2)


def gauss_legendre_panels(panels, order):
    """Composite Gauss-Legendre nodes/weights on a list of (a, b) panels."""
    x0, w0 = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    for a, b in panels:
        h = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + h * x0)
        weights.append(h * w0)
    return np.concatenate(nodes), np.concatenate(weights)


def split_interval(a, b, max_len):
    """Split [a, b] into equal panels no longer than max_len."""
    m = max(1, int(np.ceil((b - a) / max_len)))
    edges = np.linspace(a, b, m + 1)
    return list(zip(edges[:-1], edges[1:]))
