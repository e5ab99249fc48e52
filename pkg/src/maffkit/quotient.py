"""Affiliated operators as quotients T = A B^dagger with dom(T) = ran(B)."""

import logging
from dataclasses import dataclass

import numpy as np

from maffkit.errors import (
    DimensionMismatch,
    NotInjective,
    NotPsd,
    NullspaceViolation,
    OutsideDomain,
    RangesDiffer,
)
from maffkit.numkernel import (
    DEFAULT_TOL,
    as_cmatrix,
    hermitian_eig,
    norm2,
    null_projection,
    pseudo_inverse,
    range_projection,
    truncate,
)
from maffkit.rangecalc import (
    assemble_witness,
    box_dot,
    clean_product,
    douglas_solve,
    inv_circ,
    range_contained,
    s_block,
)

log = logging.getLogger(__name__)

APPLY_RTOL = 1e-8


@dataclass(frozen=True)
class Quotient:
    A: np.ndarray
    B: np.ndarray

    @property
    def n(self):
        return int(self.A.shape[0])

    def stacked(self):
        return np.vstack([self.B, self.A])


@dataclass(frozen=True)
class CanonicalQuotient:
    M: np.ndarray
    E: np.ndarray

    def as_quotient(self):
        return Quotient(self.M, self.E)


def quotient_new(a, b, tol=DEFAULT_TOL):
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionMismatch("A and B must be square of the same size, got %s and %s" % (a.shape, b.shape))

    leak = norm2(a @ null_projection(b, tol))
    if leak >= tol.threshold(max(1.0, norm2(a))):
        raise NullspaceViolation("null(B) is not contained in null(A) (||A N(B)|| = %.3e)" % leak)
    return Quotient(a, b)


def trivial(n):
    z = np.zeros((n, n), dtype=complex)
    return Quotient(z, z.copy())


def total(a):
    a = as_cmatrix(a, "A")
    return Quotient(a, np.eye(a.shape[0], dtype=complex))


def _same_dim(t1, t2):
    if t1.n != t2.n:
        raise DimensionMismatch("Quotients act on C^%d and C^%d" % (t1.n, t2.n))


def canonicalize(t, tol=DEFAULT_TOL):
    e = range_projection(t.B, tol)
    m = t.A @ pseudo_inverse(t.B, tol) @ e
    return CanonicalQuotient(m, e)


def domain_projection(t, tol=DEFAULT_TOL):
    return range_projection(t.B, tol)


def quotient_apply(t, x, tol=DEFAULT_TOL):
    x = np.asarray(x, dtype=complex).reshape(-1)
    if x.shape[0] != t.n:
        raise DimensionMismatch("Vector of length %d for an operator on C^%d" % (x.shape[0], t.n))
    c = canonicalize(t, tol)
    miss = float(np.linalg.norm(x - c.E @ x))
    if miss > APPLY_RTOL * float(np.linalg.norm(x)):
        raise OutsideDomain("Vector is outside dom(T) (distance %.3e)" % miss)
    return c.M @ x


def quotient_right_mul(t, c, tol=DEFAULT_TOL):
    """T C as a total matrix, for ran(C) inside dom(T)."""
    return t.A @ douglas_solve(as_cmatrix(c, "C"), t.B, tol)


def restrict(t, c, tol=DEFAULT_TOL):
    """Restriction of T to ran(C), for ran(C) inside dom(T)."""
    c = as_cmatrix(c, "C")
    return quotient_new(quotient_right_mul(t, c, tol), c, tol)


def quotient_sum(t1, t2, tol=DEFAULT_TOL):
    _same_dim(t1, t2)
    c = box_dot(t1.B, t2.B, tol)
    x1 = douglas_solve(c, t1.B, tol)
    x2 = douglas_solve(c, t2.B, tol)
    # cancellation leaves roundoff; measure it against the summands
    scale = max(norm2(t1.A) * norm2(x1), norm2(t2.A) * norm2(x2))
    a = truncate(t1.A @ x1 + t2.A @ x2, tol, scale=scale)
    return quotient_new(a, c, tol)


def quotient_product(t1, t2, tol=DEFAULT_TOL):
    _same_dim(t1, t2)
    c = inv_circ(t2.A, t1.B, tol)
    b = clean_product(t2.B, c, tol=tol)
    x = douglas_solve(clean_product(t2.A, c, tol=tol), t1.B, tol)
    return quotient_new(clean_product(t1.A, x, tol=tol), b, tol)


# Closures coincide with the operators themselves in finite dimensions.
strong_sum = quotient_sum
strong_product = quotient_product


def quotient_kaufman(t, tol=DEFAULT_TOL):
    n_a = null_projection(t.A, tol)
    n_t = range_projection(clean_product(t.B, n_a, tol=tol), tol)
    b = clean_product(np.eye(t.n) - n_t, t.B, tol=tol, scale=norm2(t.B))
    return quotient_new(b, t.A, tol), n_t


def kernel_projection(t, tol=DEFAULT_TOL):
    return quotient_kaufman(t, tol)[1]


def quotient_adjoint(t, tol=DEFAULT_TOL):
    eye = np.eye(t.n, dtype=complex)
    b_star_dag, _ = quotient_kaufman(Quotient(t.B.conj().T, eye), tol)
    return quotient_product(b_star_dag, Quotient(t.A.conj().T, eye), tol)


def characteristic_projection(t, tol=DEFAULT_TOL):
    return range_projection(s_block(t.A, t.B), tol)


def quotient_equals(t1, t2, tol=DEFAULT_TOL):
    _same_dim(t1, t2)
    c1 = canonicalize(t1, tol)
    c2 = canonicalize(t2, tol)
    scale = max(1.0, norm2(c1.M), norm2(c2.M))
    gap = max(norm2(c1.M - c2.M), norm2(c1.E - c2.E))
    equal = gap <= tol.threshold(scale)

    graph_gap = norm2(characteristic_projection(t1, tol) - characteristic_projection(t2, tol))
    if equal != (graph_gap <= tol.threshold(scale)):
        log.warning("Canonical and graph equality disagree (canonical gap %.3e, graph gap %.3e)", gap, graph_gap)
    return bool(equal)


def quotient_extends(t1, t2, tol=DEFAULT_TOL):
    """True iff T2 extends T1, i.e. graph(T1) lies inside graph(T2)."""
    _same_dim(t1, t2)
    return range_contained(t1.stacked(), t2.stacked(), tol)


def extension_witness(t1, t2, tol=DEFAULT_TOL):
    """C with A1 = A2 C and B1 = B2 C when T2 extends T1."""
    _same_dim(t1, t2)
    return douglas_solve(t1.stacked(), t2.stacked(), tol)


def quotient_witness(t1, t2, alg=None, tol=DEFAULT_TOL):
    """Right-invertible C relating two representations of the same operator, per central block."""
    if not quotient_equals(t1, t2, tol):
        raise RangesDiffer("The quotients represent different operators")
    if alg is None:
        parts = [(t1.A, t1.B, t2.A, t2.B)]
    else:
        parts = zip(alg.components(t1.A), alg.components(t1.B), alg.components(t2.A), alg.components(t2.B))
    pairs = [(np.vstack([b1, a1]), np.vstack([b2, a2])) for a1, b1, a2, b2 in parts]
    return assemble_witness(alg, pairs, tol)


def closed_decomposition(t, tol=DEFAULT_TOL, p=None):
    """T = P^-1 A E^dagger with P positive definite, A bounded and E the domain projection."""
    c = canonicalize(t, tol)
    p = np.eye(t.n, dtype=complex) if p is None else as_cmatrix(p, "P")
    w, _ = hermitian_eig(p, tol)
    if t.n and w[0] <= 0.0:
        raise NotPsd("P must be positive definite (min eigenvalue %.3e)" % w[0])
    return p, p @ c.M, c.E


def recompose(p, a, e, tol=DEFAULT_TOL):
    e = as_cmatrix(e, "E")
    return quotient_new(np.linalg.solve(as_cmatrix(p, "P"), as_cmatrix(a, "A")) @ e, e, tol)


def quotient_inverse(t, tol=DEFAULT_TOL):
    gap = norm2(null_projection(t.A, tol) - null_projection(t.B, tol))
    if gap >= tol.threshold(1.0):
        raise NotInjective("null(A) differs from null(B); T is not one-to-one")
    return quotient_new(t.B, t.A, tol)
