"""Cartan/root-space skeleton of a real semisimple matrix Lie algebra.

Given a matrix realization of the algebra together with its Cartan involution,
this module computes the eigenspace splitting under the involution, a maximal
Abelian subspace of the (-1)-eigenspace, the restricted-root decomposition
with multiplicities, the dual basis to the simple roots, and the Weyl group
with concrete group representatives.

Normalization conventions (fixed here, used by every downstream module):

* The ambient invariant bilinear form is the matrix trace form tr(XY), a
  positive multiple of the Killing form on sl(n,R).  The associated positive
  form <X,Y> = -tr(X theta(Y)) is then the Frobenius inner product for the
  involution X -> -X^T.
* Root vectors are normalized to unit Frobenius norm, sign fixed by making
  the first nonzero matrix entry positive.
* Positivity on the dual of the Abelian subspace is lexicographic in the
  values on (a fixed generic regular element, then the Abelian basis).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateAlgebraError,
    NotSemisimpleError,
    RepresentativeNotFoundError,
)
from .matrices import frobenius_inner

CLUSTER_TOL = 1e-9
SIGN_TOL = 1e-8


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """A concrete matrix group: algebra basis plus Cartan involution."""

    name: str
    dimension: int                      # matrix size n
    algebra_basis: tuple                # tuple of (n, n) ndarrays spanning the algebra
    cartan_involution: object           # callable X -> theta(X)

    def involution(self, X):
        return self.cartan_involution(X)


@dataclass
class RestrictedRoot:
    functional: np.ndarray              # values on a_basis, shape (l,)
    multiplicity: int
    root_vectors: list                  # m(alpha) matrices, Frobenius-orthonormal
    is_positive: bool
    is_simple: bool = False


@dataclass
class StructureData:
    """Computed Lie skeleton: forms, eigenspace bases, roots, dual basis."""

    spec: GroupSpec
    killing_form: np.ndarray            # tr(ad X ad Y) on the input basis
    theta_form: np.ndarray              # -tr(X theta(Y)) on the input basis
    k_basis: list
    p_basis: list
    a_basis: list                       # Frobenius-orthonormal basis of a
    rank: int
    roots: list                         # all RestrictedRoot, positive and negative
    simple_roots: list                  # sublist of the positive roots, size l
    rho: np.ndarray                     # values on a_basis
    dual_basis: list                    # H_1..H_l with alpha_i(H_j) = delta_ij
    m_basis: list                       # centralizer of a inside k
    n_minus_basis: list                 # X_{-lambda,i} = -theta(X_{lambda,i})
    n_plus_basis: list                  # X_{lambda,i}, same ordering
    k_dim: int                          # dim n^- = sum of positive multiplicities
    positive_roots: list = field(default_factory=list)

    # -- helpers used throughout ------------------------------------------------

    @property
    def n(self):
        return self.spec.dimension

    def theta(self, X):
        return self.spec.involution(X)

    def a_coords(self, H):
        """Coordinates of H in the orthonormal a_basis (Frobenius projection)."""
        return np.array([frobenius_inner(H, A) for A in self.a_basis])

    def a_from_coords(self, y):
        return sum(c * A for c, A in zip(y, self.a_basis))

    def dual_coords(self, H):
        """Coefficients h_j with H = sum_j h_j H_j (dual basis expansion)."""
        y = self.a_coords(H)
        return self._simple_value_matrix @ y

    def root_value(self, root, H):
        """alpha(H) for H in a, alpha given by its functional vector."""
        return float(root.functional @ self.a_coords(H))

    def simple_values(self, H):
        """Vector (alpha_1(H), ..., alpha_l(H))."""
        return self._simple_value_matrix @ self.a_coords(H)

    @property
    def _simple_value_matrix(self):
        return np.array([r.functional for r in self.simple_roots])

    def exp_a(self, coeffs):
        """exp(sum_j coeffs_j H_j) as a group matrix (dual-basis coefficients)."""
        H = sum(c * Hj for c, Hj in zip(coeffs, self.dual_basis))
        return scipy.linalg.expm(H)

    def to_json_dict(self):
        def mat(M):
            return np.asarray(M, dtype=float).reshape(-1).tolist()

        return {
            "group": self.spec.name,
            "dimension": self.spec.dimension,
            "rank": self.rank,
            "k_dim": self.k_dim,
            "killing_form": mat(self.killing_form),
            "theta_form": mat(self.theta_form),
            "a_basis": [mat(A) for A in self.a_basis],
            "dual_basis": [mat(H) for H in self.dual_basis],
            "rho": self.rho.tolist(),
            "roots": [
                {
                    "functional": r.functional.tolist(),
                    "multiplicity": r.multiplicity,
                    "is_positive": bool(r.is_positive),
                    "is_simple": bool(r.is_simple),
                    "root_vectors": [mat(X) for X in r.root_vectors],
                }
                for r in self.roots
            ],
            "n_minus_basis": [mat(X) for X in self.n_minus_basis],
            "n_plus_basis": [mat(X) for X in self.n_plus_basis],
            "m_basis": [mat(X) for X in self.m_basis],
        }


@dataclass
class WeylGroupData:
    elements: list                      # l x l matrices acting on a-coordinates
    generators: list                    # reflection matrices for the simple roots
    representatives: list               # group matrices in M*, aligned with elements
    c_matrices: list                    # c_ij(m_w): Ad(m_w^{-1}) H_i = sum_j c_ij H_j
    names: list                         # reduced words, "e", "s1", "s1s2", ...

    def __len__(self):
        return len(self.elements)

    def index_of_name(self, name):
        return self.names.index(name)


# ---------------------------------------------------------------------------
# group factories
# ---------------------------------------------------------------------------

def _basis_matrix(n, i, j):
    E = np.zeros((n, n))
    E[i, j] = 1.0
    return E


def sl_spec(n, name=None):
    """The standard trace-free realization of sl(n,R).

    Basis order: the n-1 diagonal differences first (so the maximal Abelian
    search lands on the diagonal subspace), then off-diagonal units sorted by
    index.  Involution X -> -X^T.
    """
    basis = []
    for i in range(n - 1):
        basis.append(_basis_matrix(n, i, i) - _basis_matrix(n, i + 1, i + 1))
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(_basis_matrix(n, i, j))
    return GroupSpec(
        name=name or f"sl{n}",
        dimension=n,
        algebra_basis=tuple(basis),
        cartan_involution=lambda X: -np.asarray(X).T,
    )


def sl2_spec():
    return sl_spec(2)


def sl3_spec():
    return sl_spec(3)


GROUPS = {"sl2": sl2_spec, "sl3": sl3_spec}


def group_spec(name):
    try:
        return GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; available: {sorted(GROUPS)}")


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def _orthonormalize(mats, tol=1e-10):
    """Frobenius Gram-Schmidt with rank detection and deterministic sign fix."""
    out = []
    for M in mats:
        V = np.asarray(M, dtype=float).copy()
        for B in out:
            V -= frobenius_inner(V, B) * B
        norm = np.sqrt(frobenius_inner(V, V))
        if norm > tol:
            out.append(_fix_sign(V / norm))
    return out


def _fix_sign(M):
    flat = M.reshape(-1)
    idx = np.nonzero(np.abs(flat) > SIGN_TOL)[0]
    if idx.size and flat[idx[0]] < 0:
        return -M
    return M


def _validate_spec(spec):
    basis = [np.asarray(B, dtype=float) for B in spec.algebra_basis]
    n = spec.dimension
    for B in basis:
        if B.shape != (n, n):
            raise DegenerateAlgebraError("basis matrix of wrong shape")
        if abs(np.trace(B)) > 1e-12:
            raise DegenerateAlgebraError("basis matrix is not trace-free")
        resid = spec.involution(spec.involution(B)) - B
        if np.max(np.abs(resid)) > 1e-12:
            raise DegenerateAlgebraError("cartan_involution is not an involution")
    stack = np.stack([B.reshape(-1) for B in basis])
    if np.linalg.matrix_rank(stack, tol=1e-10) != len(basis):
        raise DegenerateAlgebraError("basis matrices are linearly dependent")
    return basis


def _expand(basis_stack, gram_inv, X):
    """Coordinates of X in the (possibly non-orthonormal) input basis."""
    rhs = basis_stack @ np.asarray(X, dtype=float).reshape(-1)
    return gram_inv @ rhs


def _max_abelian_in_p(p_basis, tol=1e-9):
    """Centralizer iteration: generic element -> centralizer, until Abelian."""
    current = list(p_basis)
    seed = current[0]
    for _ in range(len(p_basis) + 1):
        # centralizer of seed inside span(p_basis)
        cols = np.stack([(seed @ P - P @ seed).reshape(-1) for P in p_basis], axis=1)
        u, s, vt = np.linalg.svd(cols)
        null_mask = np.concatenate([s, np.zeros(cols.shape[1] - s.size)]) < 1e-9
        coeffs = vt.T[:, null_mask] if null_mask.any() else vt.T[:, s.size:]
        cand = [sum(c * P for c, P in zip(col, p_basis)) for col in coeffs.T]
        cand = _orthonormalize(cand)
        abelian = all(
            np.max(np.abs(A @ B - B @ A)) < tol for A in cand for B in cand
        )
        if abelian:
            return cand
        seed = sum((j + 1 + np.pi / (j + 1)) * C for j, C in enumerate(cand))
        current = cand
    raise DegenerateAlgebraError("maximal Abelian subspace iteration did not converge")


def _cluster(values, tol):
    """Group sorted eigenvalues into clusters separated by > tol gaps."""
    order = np.argsort(values)
    clusters = [[order[0]]]
    for idx in order[1:]:
        if values[idx] - values[clusters[-1][-1]] < tol:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    return clusters


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def build_structure(spec: GroupSpec) -> StructureData:
    """Compute the full restricted-root skeleton of the given realization.

    Roots are found by simultaneous eigendecomposition of ad(H) for a fixed
    generic regular element of the maximal Abelian subspace; ordering of the
    dual space is lexicographic in the values on (that element, then the
    Abelian basis), which makes every run bit-reproducible.

    Raises
    ------
    NotSemisimpleError
        if the Killing form of the spanned algebra is singular.
    DegenerateAlgebraError
        if eigenvalue clustering cannot separate the roots at 1e-9.
    """
    basis = _validate_spec(spec)
    d = len(basis)
    basis_stack = np.stack([B.reshape(-1) for B in basis])
    gram = basis_stack @ basis_stack.T
    gram_inv = np.linalg.inv(gram)

    # ad matrices in input-basis coordinates, Killing and theta forms
    ad = np.zeros((d, d, d))
    for i, Bi in enumerate(basis):
        for j, Bj in enumerate(basis):
            ad[i, :, j] = _expand(basis_stack, gram_inv, Bi @ Bj - Bj @ Bi)
    killing = np.einsum("iab,jba->ij", ad, ad)
    sv = np.linalg.svd(killing, compute_uv=False)
    if sv[-1] < 1e-8 * sv[0]:
        raise NotSemisimpleError("Killing form is singular on the spanned algebra")
    theta_form = np.array(
        [[-frobenius_inner(Bi, spec.involution(Bj)) for Bj in basis] for Bi in basis]
    )

    # Cartan split of the basis, orthonormalized
    k_parts, p_parts = [], []
    for B in basis:
        tB = spec.involution(B)
        k_parts.append(0.5 * (B + tB))
        p_parts.append(0.5 * (B - tB))
    k_basis = _orthonormalize(k_parts)
    p_basis = _orthonormalize(p_parts)

    a_basis = _max_abelian_in_p(p_basis)
    rank = len(a_basis)

    # simultaneous eigendecomposition of ad(a) on a Frobenius-orthonormal frame
    onb = _orthonormalize(basis)
    onb_stack = np.stack([B.reshape(-1) for B in onb])
    h_reg = sum((j + 1 + np.pi / (j + 1)) * A for j, A in enumerate(a_basis))
    ad_reg = np.array(
        [[frobenius_inner(Bi, h_reg @ Bj - Bj @ h_reg) for Bj in onb] for Bi in onb]
    )
    evals, evecs = np.linalg.eigh(0.5 * (ad_reg + ad_reg.T))
    clusters = _cluster(evals, CLUSTER_TOL)
    centers = [float(np.mean(evals[c])) for c in clusters]
    for c1, c2 in zip(centers[:-1], centers[1:]):
        if 0 < c2 - c1 < 1e-6:
            raise DegenerateAlgebraError(
                f"ad eigenvalue clusters too close to separate: {c1} vs {c2}"
            )

    def cluster_matrices(idx_list):
        mats = []
        for idx in idx_list:
            vec = evecs[:, idx]
            mats.append(sum(c * B for c, B in zip(vec, onb)))
        return _orthonormalize(mats)

    zero_cluster, root_clusters = None, []
    for c, center in zip(clusters, centers):
        if abs(center) < 1e-7:
            zero_cluster = c
        else:
            root_clusters.append(c)
    if zero_cluster is None:
        raise DegenerateAlgebraError("no zero eigenvalue cluster for ad(H)")

    # m = zero-space intersect k (the a part is projected away)
    zero_mats = cluster_matrices(zero_cluster)
    m_candidates = [0.5 * (M + spec.involution(M)) for M in zero_mats]
    m_basis = _orthonormalize(m_candidates)

    # refine clusters by every ad(a_i) and read off root functionals
    roots = []
    for c in root_clusters:
        mats = cluster_matrices(c)
        sub = [(mats, None)]
        for A in a_basis:
            refined = []
            for group, _ in sub:
                vals = np.array(
                    [frobenius_inner(X, A @ X - X @ A) for X in group]
                )
                if np.ptp(vals) < 1e-8:
                    refined.append((group, None))
                    continue
                mat = np.array(
                    [
                        [frobenius_inner(Xi, A @ Xj - Xj @ A) for Xj in group]
                        for Xi in group
                    ]
                )
                w, v = np.linalg.eigh(0.5 * (mat + mat.T))
                for cc in _cluster(w, CLUSTER_TOL):
                    sub_mats = _orthonormalize(
                        [
                            sum(vi * X for vi, X in zip(v[:, idx], group))
                            for idx in cc
                        ]
                    )
                    refined.append((sub_mats, None))
            sub = refined
        for group, _ in sub:
            X0 = group[0]
            functional = np.array(
                [frobenius_inner(X0, A @ X0 - X0 @ A) for A in a_basis]
            )
            reg_val = float(
                sum((j + 1 + np.pi / (j + 1)) * functional[j] for j in range(rank))
            )
            key = (reg_val,) + tuple(functional)
            positive = next((v > 0 for v in key if abs(v) > CLUSTER_TOL), False)
            roots.append(
                RestrictedRoot(
                    functional=functional,
                    multiplicity=len(group),
                    root_vectors=group,
                    is_positive=bool(positive),
                )
            )

    def lex_key(r):
        reg = sum((j + 1 + np.pi / (j + 1)) * r.functional[j] for j in range(rank))
        return (reg,) + tuple(r.functional)

    roots.sort(key=lex_key)
    positive = [r for r in roots if r.is_positive]

    # simple roots: positive roots that are not sums of two positive roots
    for r in positive:
        is_sum = any(
            np.allclose(r.functional, p.functional + q.functional, atol=1e-8)
            for p in positive
            for q in positive
        )
        r.is_simple = not is_sum
    simple = [r for r in positive if r.is_simple]
    if len(simple) != rank:
        raise DegenerateAlgebraError(
            f"found {len(simple)} simple roots for rank {rank}"
        )

    rho = 0.5 * sum(r.multiplicity * r.functional for r in positive)

    # dual basis H_j: alpha_i(H_j) = delta_ij
    S = np.array([r.functional for r in simple])
    C = np.linalg.inv(S)
    dual_basis = [sum(C[m, j] * a_basis[m] for m in range(rank)) for j in range(rank)]

    # enforce the pairing X_{-lambda,i} = -theta(X_{lambda,i})
    n_plus, n_minus = [], []
    for r in positive:
        for X in r.root_vectors:
            n_plus.append(X)
            n_minus.append(_fix_sign(-spec.involution(X)))
    neg_lookup = {
        tuple(np.round(-r.functional, 9)): r for r in roots if not r.is_positive
    }
    for r in positive:
        neg = neg_lookup.get(tuple(np.round(r.functional, 9)))
        if neg is not None:
            neg.root_vectors = [
                _fix_sign(-spec.involution(X)) for X in r.root_vectors
            ]

    k_dim = sum(r.multiplicity for r in positive)

    data = StructureData(
        spec=spec,
        killing_form=killing,
        theta_form=theta_form,
        k_basis=k_basis,
        p_basis=p_basis,
        a_basis=a_basis,
        rank=rank,
        roots=roots,
        simple_roots=simple,
        rho=rho,
        dual_basis=dual_basis,
        m_basis=m_basis,
        n_minus_basis=n_minus,
        n_plus_basis=n_plus,
        k_dim=k_dim,
        positive_roots=positive,
    )
    return data


def cartan_split(X, s: StructureData):
    """Split X into involution eigencomponents (k_part, p_part)."""
    X = np.asarray(X, dtype=float)
    tX = s.theta(X)
    return 0.5 * (X + tX), 0.5 * (X - tX)


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------

def _reflection_matrix(s, root):
    """Action of the root reflection on a-coordinates (orthonormal a_basis)."""
    l = s.rank
    # Riesz vector of the root in a-coordinates; a_basis orthonormal so the
    # Gram matrix is the identity and the functional vector is the vector.
    h = np.asarray(root.functional, dtype=float)
    R = np.eye(l) - 2.0 * np.outer(h, h) / (h @ h)
    return R


def _ad_on_a(s, g):
    """Projection coordinates of Ad(g) a_j onto a plus the off-a residual."""
    l = s.rank
    M = np.zeros((l, l))
    resid = 0.0
    g_inv = np.linalg.inv(g)
    for j, A in enumerate(s.a_basis):
        img = g @ A @ g_inv
        coords = np.array([frobenius_inner(img, B) for B in s.a_basis])
        M[:, j] = coords
        back = sum(c * B for c, B in zip(coords, s.a_basis))
        resid += np.sqrt(max(frobenius_inner(img - back, img - back), 0.0))
    return M, resid


def _find_representative(s, root, R, tol=1e-8):
    """Smallest t > 0 with Ad(exp(t Z)) acting on a as the reflection R."""
    Z = root.root_vectors[0] + s.theta(root.root_vectors[0])
    # theta(X) = -X^T for sl(n); X - theta... the compact generator is
    # X_{alpha,1} - X_{-alpha,1} = X + theta(X) with X_{-a} = -theta(X_a).
    def objective(t):
        g = scipy.linalg.expm(t * Z)
        M, resid = _ad_on_a(s, g)
        return np.linalg.norm(M - R) + resid

    ts = np.linspace(1e-3, 4 * np.pi, 3000)
    vals = np.array([objective(t) for t in ts])
    i0 = int(np.argmin(vals))
    lo = ts[max(i0 - 1, 0)]
    hi = ts[min(i0 + 1, len(ts) - 1)]
    for _ in range(80):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if objective(m1) < objective(m2):
            hi = m2
        else:
            lo = m1
    t_star = 0.5 * (lo + hi)
    if objective(t_star) > tol:
        raise RepresentativeNotFoundError(
            f"no representative on the one-parameter family within (0, 4pi]"
        )
    return scipy.linalg.expm(t_star * Z)


def _c_matrix(s, m_w):
    """c_ij with Ad(m_w^{-1}) H_i = sum_j c_ij H_j."""
    l = s.rank
    m_inv = np.linalg.inv(m_w)
    C = np.zeros((l, l))
    for i, H in enumerate(s.dual_basis):
        img = m_inv @ H @ m_w
        C[i, :] = s.dual_coords(img)
    return C


def build_weyl(s: StructureData, tol=1e-9) -> WeylGroupData:
    """Generate the Weyl group: reflections, closure, and representatives.

    Elements are stored as matrices acting on a-coordinates; each element's
    group representative is the product of the generator representatives
    along a shortest generator word (breadth-first closure).
    """
    gens = [_reflection_matrix(s, r) for r in s.simple_roots]
    reps = [
        _find_representative(s, r, R) for r, R in zip(s.simple_roots, gens)
    ]

    l = s.rank
    elements = [np.eye(l)]
    representatives = [np.eye(s.spec.dimension)]
    names = ["e"]
    frontier = [0]
    while frontier:
        new_frontier = []
        for idx in frontier:
            for gi, (G, rep) in enumerate(zip(gens, reps)):
                cand = G @ elements[idx]
                if any(np.max(np.abs(cand - E)) < tol for E in elements):
                    continue
                elements.append(cand)
                representatives.append(rep @ representatives[idx])
                base = names[idx] if names[idx] != "e" else ""
                names.append(f"s{gi + 1}" + base)
                new_frontier.append(len(elements) - 1)
        frontier = new_frontier

    c_matrices = [_c_matrix(s, m_w) for m_w in representatives]
    return WeylGroupData(
        elements=elements,
        generators=gens,
        representatives=representatives,
        c_matrices=c_matrices,
        names=names,
    )
