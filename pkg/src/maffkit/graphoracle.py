"""Brute-force graph-subspace representations of partial maps.

Every construction here works on graph subspaces of C^2n directly and uses
only numkernel primitives, so it can check quotient arithmetic from outside.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from maffkit.errors import DimensionMismatch, NotProjection, NotPsd, NotSingleValued
from maffkit.numkernel import (
    DEFAULT_TOL,
    Subspace,
    as_cmatrix,
    from_range,
    is_projection,
    is_psd,
    norm2,
    null_basis,
    pseudo_inverse,
    range_projection,
    subspace_distance,
    subspace_intersect,
)

log = logging.getLogger(__name__)

GRAPH_KINDS = ("sum", "product", "kaufman", "adjoint")
# blocks of an orthonormal graph basis have norm at most 1
UNIT = 1.0


@dataclass(frozen=True)
class PartialGraph:
    n: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.n:
            raise DimensionMismatch("Graph of a map on C^%d must live in C^%d" % (self.n, 2 * self.n))

    @property
    def top(self):
        return self.graph.basis[: self.n, :]

    @property
    def bottom(self):
        return self.graph.basis[self.n :, :]

    def check_single_valued(self, tol=DEFAULT_TOL):
        vertical = Subspace(2 * self.n, np.vstack([np.zeros((self.n, self.n)), np.eye(self.n)]).astype(complex))
        hit = subspace_intersect(self.graph, vertical, tol)
        if hit.dim:
            raise NotSingleValued("Graph contains %d direction(s) of the form (0, y)" % hit.dim)
        return self


def _graph(n, stacked, tol, scale=UNIT):
    return PartialGraph(n, from_range(stacked, tol, scale=scale))


def graph_from_quotient(t, tol=DEFAULT_TOL):
    return _graph(t.n, np.vstack([t.B, t.A]), tol, scale=None)


def _graph_sum(g1, g2, tol):
    # (x, y1) in G1 and (x, y2) in G2 share x: X1 c1 = X2 c2
    d1 = g1.graph.dim
    coef = null_basis(np.hstack([g1.top, -g2.top]), tol, scale=UNIT).basis
    c1, c2 = coef[:d1, :], coef[d1:, :]
    return _graph(g1.n, np.vstack([g1.top @ c1, g1.bottom @ c1 + g2.bottom @ c2]), tol)


def _graph_product(g1, g2, tol):
    # (x, y) in G2 and (y, z) in G1: Y2 c2 = X1 c1
    d2 = g2.graph.dim
    coef = null_basis(np.hstack([g2.bottom, -g1.top]), tol, scale=UNIT).basis
    c2, c1 = coef[:d2, :], coef[d2:, :]
    return _graph(g1.n, np.vstack([g2.top @ c2, g1.bottom @ c1]), tol)


def _graph_kaufman(g, tol):
    kernel = g.top @ null_basis(g.bottom, tol, scale=UNIT).basis
    n_proj = range_projection(kernel, tol, scale=UNIT)
    return _graph(g.n, np.vstack([g.bottom, (np.eye(g.n) - n_proj) @ g.top]), tol)


def _graph_adjoint(g, tol):
    perp = null_basis(g.graph.basis.conj().T, tol, scale=UNIT).basis
    # W(a, b) = (b, -a)
    turned = Subspace(2 * g.n, np.vstack([perp[g.n :, :], -perp[: g.n, :]]))
    dom = from_range(g.top, tol, scale=UNIT)
    codomain = Subspace(2 * g.n, block_diag(np.eye(g.n, dtype=complex), dom.basis))
    return PartialGraph(g.n, subspace_intersect(turned, codomain, tol))


def graph_op(kind, g1, g2=None, tol=DEFAULT_TOL):
    if kind not in GRAPH_KINDS:
        raise ValueError("Unknown graph operation: %s" % kind)
    if kind in ("sum", "product"):
        if g2 is None:
            raise ValueError("graph_op(%s) needs two graphs" % kind)
        if g1.n != g2.n:
            raise DimensionMismatch("Graphs of maps on C^%d and C^%d" % (g1.n, g2.n))
        return _graph_sum(g1, g2, tol) if kind == "sum" else _graph_product(g1, g2, tol)
    if kind == "kaufman":
        return _graph_kaufman(g1, tol)
    return _graph_adjoint(g1, tol)


def graph_distance(g1, g2):
    if g1.n != g2.n:
        raise DimensionMismatch("Graphs of maps on C^%d and C^%d" % (g1.n, g2.n))
    return subspace_distance(g1.graph, g2.graph)


def graph_equals(g1, g2, tol=DEFAULT_TOL):
    return graph_distance(g1, g2) < tol.threshold(1.0)


def graph_contains(outer, inner, tol=DEFAULT_TOL):
    if inner.graph.dim == 0:
        return True
    comp = np.eye(2 * outer.n) - outer.graph.projector()
    return norm2(comp @ inner.graph.basis) < tol.threshold(1.0)


def schur_shorted(a, e, tol=DEFAULT_TOL):
    """Generalized Schur complement of A onto ran(E), padded with zeros."""
    a = as_cmatrix(a, "A")
    e = as_cmatrix(e, "E")
    if not is_psd(a, tol):
        raise NotPsd("A must be positive semidefinite")
    if not is_projection(e, tol):
        raise NotProjection("E must be an orthogonal projection")

    q1 = from_range(e, tol).basis
    q2 = null_basis(e, tol).basis
    a11 = q1.conj().T @ a @ q1
    a12 = q1.conj().T @ a @ q2
    a22 = q2.conj().T @ a @ q2
    s = a11 - a12 @ pseudo_inverse(a22, tol, scale=norm2(a)) @ a12.conj().T
    out = q1 @ s @ q1.conj().T
    return 0.5 * (out + out.conj().T)
