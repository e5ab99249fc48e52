"""Dense complex linear algebra kernel.

Every bounded operator is a 2-D ``complex128`` numpy array. Rank decisions are
taken on the eigenvalues of a Hermitian (Gram) matrix: eigenvalues at or below
``rank_scale * eps * dim * ||G||_2`` count as zero.
"""

import logging
from dataclasses import dataclass

import numpy as np

from maffkit.errors import (
    DimensionMismatch,
    NoConvergence,
    NotHermitian,
    NotPsd,
    ParseError,
)

log = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
EIG_BACKENDS = ("jacobi", "lapack")
JACOBI_SWEEPS = 100
JACOBI_RTOL = 1e-12
INTERSECT_WINDOW = 1e-7
PSD_CERT = 1e-9


@dataclass(frozen=True)
class Tolerance:
    rank_scale: float = 128.0
    eq_abs: float = 1e-8
    eq_rel: float = 1e-8
    eig_backend: str = "lapack"

    def __post_init__(self):
        for name in ("rank_scale", "eq_abs", "eq_rel"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v <= 0.0:
                raise ValueError("Tolerance.%s must be finite and > 0 (got %r)" % (name, v))
        if self.eig_backend not in EIG_BACKENDS:
            raise ValueError("Tolerance.eig_backend must be one of %s" % ", ".join(EIG_BACKENDS))

    def threshold(self, scale=1.0):
        return self.eq_abs + self.eq_rel * float(scale)

    def cutoff(self, norm, dim):
        return self.rank_scale * EPS * max(int(dim), 1) * float(norm)

    def as_dict(self):
        return {
            "rank_scale": self.rank_scale,
            "eq_abs": self.eq_abs,
            "eq_rel": self.eq_rel,
            "eig_backend": self.eig_backend,
        }


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                "Subspace basis has shape %s, ambient dimension %d" % (self.basis.shape, self.ambient_dim)
            )

    @property
    def dim(self):
        return int(self.basis.shape[1])

    def projector(self):
        return self.basis @ self.basis.conj().T

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex))


def as_cmatrix(x, name="matrix"):
    a = np.array(x, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch("%s must be 2-D, got shape %s" % (name, a.shape))
    if not np.all(np.isfinite(a)):
        raise ParseError("%s has non-finite entries" % name)
    return a


def norm2(a):
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def _square(a, name="matrix"):
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch("%s must be square, got shape %s" % (name, a.shape))
    return a.shape[0]


def _rotate(a, q, p, r):
    g = abs(a[p, r])
    if g == 0.0:
        return
    phase = a[p, r] / g
    theta = (a[r, r].real - a[p, p].real) / (2.0 * g)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])

    idx = [p, r]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = j.conj().T @ a[idx, :]
    a[p, r] = 0.0
    a[r, p] = 0.0
    a[p, p] = a[p, p].real
    a[r, r] = a[r, r].real
    q[:, idx] = q[:, idx] @ j


def jacobi_eig(h, max_sweeps=JACOBI_SWEEPS, rtol=JACOBI_RTOL):
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Sweeps over all (p, r) pairs with complex Givens rotations until the
    off-diagonal Frobenius norm drops below ``rtol * ||h||_F``.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    q = np.eye(n, dtype=complex)
    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return np.zeros(n), q

    target = rtol * fro
    sweep = 0
    while True:
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < target:
            break
        if sweep >= max_sweeps:
            raise NoConvergence("Jacobi did not converge in %d sweeps (off=%.3e)" % (max_sweeps, off))
        for p in range(n - 1):
            for r in range(p + 1, n):
                _rotate(a, q, p, r)
        sweep += 1

    log.debug("Jacobi converged: n=%d sweeps=%d", n, sweep)
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], q[:, order]


def hermitian_eig(h, tol=DEFAULT_TOL):
    """Eigenvalues (ascending) and a unitary of eigenvectors of a Hermitian matrix."""
    h = as_cmatrix(h)
    n = _square(h)
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)

    scale = max(1.0, norm2(h))
    skew = norm2(h - h.conj().T)
    if skew > tol.threshold(scale):
        raise NotHermitian("Matrix is not Hermitian (||H - H*|| = %.3e)" % skew)
    h = 0.5 * (h + h.conj().T)

    if tol.eig_backend == "lapack":
        w, q = np.linalg.eigh(h)
        return w, q
    return jacobi_eig(h)


def _gram_split(a, tol, side, scale=None):
    # side "left": eigenvectors of A A* (column space); "right": of A* A (row space)
    g = a @ a.conj().T if side == "left" else a.conj().T @ a
    w, q = hermitian_eig(g, tol)
    ref = norm2(g)
    if scale is not None:
        ref = max(ref, float(scale) ** 2)
    keep = w > tol.cutoff(ref, max(a.shape))
    return w, q, keep


def numerical_rank(a, tol=DEFAULT_TOL, scale=None):
    a = as_cmatrix(a)
    if a.size == 0:
        return 0
    _, _, keep = _gram_split(a, tol, "right", scale)
    return int(np.count_nonzero(keep))


def range_projection(a, tol=DEFAULT_TOL, scale=None):
    a = as_cmatrix(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], a.shape[0]), dtype=complex)
    _, q, keep = _gram_split(a, tol, "left", scale)
    qk = q[:, keep]
    return qk @ qk.conj().T


def null_projection(a, tol=DEFAULT_TOL, scale=None):
    a = as_cmatrix(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.eye(a.shape[1], dtype=complex)
    _, q, keep = _gram_split(a, tol, "right", scale)
    qn = q[:, ~keep]
    return qn @ qn.conj().T


def pseudo_inverse(a, tol=DEFAULT_TOL, scale=None):
    """Moore-Penrose inverse (A*A)^+ A* from the eigendecomposition of A*A."""
    a = as_cmatrix(a)
    if a.size == 0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=complex)
    w, q, keep = _gram_split(a, tol, "right", scale)
    qk = q[:, keep]
    return (qk / w[keep]) @ qk.conj().T @ a.conj().T


def truncate(a, tol=DEFAULT_TOL, scale=None):
    """Drop the singular directions of ``a`` that are negligible against ``scale``."""
    a = as_cmatrix(a)
    if a.size == 0:
        return a
    _, q, keep = _gram_split(a, tol, "right", scale)
    qk = q[:, keep]
    return a @ qk @ qk.conj().T


def psd_sqrt(p, tol=DEFAULT_TOL, scale=None):
    p = as_cmatrix(p)
    n = _square(p)
    if n == 0:
        return p
    w, q = hermitian_eig(p, tol)
    ref = max(norm2(p), float(scale) if scale is not None else 0.0)
    floor = max(n * tol.eq_abs * max(1.0, ref), tol.cutoff(ref, n))
    if w[0] < -floor:
        raise NotPsd("Matrix is not PSD (min eigenvalue %.3e)" % w[0])
    w = np.where(w > tol.cutoff(ref, n), w, 0.0)
    return (q * np.sqrt(w)) @ q.conj().T


def is_hermitian(h, tol=DEFAULT_TOL):
    if h.shape[0] != h.shape[1]:
        return False
    return norm2(h - h.conj().T) <= tol.threshold(max(1.0, norm2(h)))


def is_projection(e, tol=DEFAULT_TOL):
    if not is_hermitian(e, tol):
        return False
    return norm2(e @ e - e) <= tol.threshold(1.0)


def psd_floor(h):
    return -max(h.shape[0], 1) * PSD_CERT * max(1.0, norm2(h))


def is_psd(h, tol=DEFAULT_TOL):
    h = as_cmatrix(h)
    if h.size == 0:
        return True
    if not is_hermitian(h, tol):
        return False
    w, _ = hermitian_eig(h, tol)
    return bool(w[0] >= psd_floor(h))


def psd_le(x, y, tol=DEFAULT_TOL):
    """Certificate for X <= Y in the PSD order."""
    return is_psd(as_cmatrix(y) - as_cmatrix(x), tol)


def from_range(a, tol=DEFAULT_TOL, scale=None):
    a = as_cmatrix(a)
    if a.shape[1] == 0:
        return Subspace.zero(a.shape[0])
    _, q, keep = _gram_split(a, tol, "left", scale)
    return Subspace(a.shape[0], q[:, keep])


def null_basis(a, tol=DEFAULT_TOL, scale=None):
    a = as_cmatrix(a)
    if a.shape[0] == 0:
        return Subspace.full(a.shape[1])
    _, q, keep = _gram_split(a, tol, "right", scale)
    return Subspace(a.shape[1], q[:, ~keep])


def _same_ambient(v, w):
    if v.ambient_dim != w.ambient_dim:
        raise DimensionMismatch("Subspaces live in C^%d and C^%d" % (v.ambient_dim, w.ambient_dim))


def subspace_sum(v, w, tol=DEFAULT_TOL):
    _same_ambient(v, w)
    return from_range(np.hstack([v.basis, w.basis]), tol)


def subspace_intersect(v, w, tol=DEFAULT_TOL):
    _same_ambient(v, w)
    if v.dim == 0 or w.dim == 0:
        return Subspace.zero(v.ambient_dim)
    lam, q = hermitian_eig(v.projector() + w.projector(), tol)
    return Subspace(v.ambient_dim, q[:, np.abs(lam - 2.0) < INTERSECT_WINDOW])


def subspace_preimage(a, w, tol=DEFAULT_TOL):
    a = as_cmatrix(a)
    if a.shape[0] != w.ambient_dim:
        raise DimensionMismatch("Operator rows %d vs subspace ambient %d" % (a.shape[0], w.ambient_dim))
    comp = np.eye(w.ambient_dim) - w.projector()
    return null_basis(comp @ a, tol, scale=norm2(a))


def subspace_distance(v, w):
    _same_ambient(v, w)
    return norm2(v.projector() - w.projector())


def subspace_contains(outer, inner, tol=DEFAULT_TOL):
    _same_ambient(outer, inner)
    if inner.dim == 0:
        return True
    comp = np.eye(outer.ambient_dim) - outer.projector()
    return norm2(comp @ inner.projector()) < tol.threshold(1.0)


SUBSPACE_OPS = {
    "from_range": from_range,
    "sum": subspace_sum,
    "intersect": subspace_intersect,
    "preimage": subspace_preimage,
    "distance": subspace_distance,
    "contains": subspace_contains,
}


def subspace_ops(kind, *args, **kwargs):
    if kind not in SUBSPACE_OPS:
        raise ValueError("Unknown subspace operation: %s" % kind)
    return SUBSPACE_OPS[kind](*args, **kwargs)
