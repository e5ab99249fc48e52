"""Numerical-range predicates on quotients, certified by Hermitian PSD checks.

W(A/B) is {<Ax, Bx> : ||Bx|| = 1}. Half-plane containment reduces to
B*A' + A'*B >= 0 after moving the half-plane onto the closed right half-plane.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from maffkit.numkernel import DEFAULT_TOL, from_range, is_psd, norm2
from maffkit.quotient import (
    Quotient,
    canonicalize,
    quotient_adjoint,
    quotient_equals,
    quotient_product,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HalfPlane:
    """H = {exp(i theta) (z + alpha) : Re z >= 0}."""

    theta: float = 0.0
    alpha: complex = 0j

    def __post_init__(self):
        if not (-math.pi <= self.theta < math.pi):
            raise ValueError("HalfPlane.theta must lie in [-pi, pi) (got %r)" % self.theta)

    def pullback(self):
        """(theta', alpha') with z in H iff exp(i theta') (z + alpha') has Re >= 0."""
        return -self.theta, -np.exp(1j * self.theta) * self.alpha

    def margin(self, z):
        th, al = self.pullback()
        return np.real(np.exp(1j * th) * (np.asarray(z) + al))

    def contains(self, z, atol=0.0):
        return self.margin(z) >= -atol


@dataclass(frozen=True)
class Sector:
    """S = {lambda : |arg(lambda - c)| <= theta}."""

    c: complex = 0j
    theta: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta < math.pi / 2):
            raise ValueError("Sector.theta must lie in [0, pi/2) (got %r)" % self.theta)

    def margin(self, z):
        h1, h2 = in_sector_halfplanes(self)
        return np.minimum(h1.margin(z), h2.margin(z))

    def contains(self, z, atol=0.0):
        return self.margin(z) >= -atol


RIGHT_HALF_PLANE = HalfPlane(0.0, 0j)


def in_sector_halfplanes(sector):
    """The two closed half-planes whose intersection is the sector."""
    phi = math.pi / 2 - sector.theta
    lower = HalfPlane(-phi, sector.c * np.exp(1j * phi))
    upper = HalfPlane(phi, sector.c * np.exp(-1j * phi))
    return lower, upper


def half_plane_transform(t, h):
    """The quotient (exp(i theta')(A + alpha' B), B) whose numerical range is H's pullback."""
    th, al = h.pullback()
    return Quotient(np.exp(1j * th) * (t.A + al * t.B), t.B)


def in_half_plane(t, h, tol=DEFAULT_TOL):
    moved = half_plane_transform(t, h)
    cert = moved.B.conj().T @ moved.A
    return is_psd(cert + cert.conj().T, tol)


def is_accretive(t, tol=DEFAULT_TOL):
    return in_half_plane(t, RIGHT_HALF_PLANE, tol)


def is_sectorial(t, sector, tol=DEFAULT_TOL):
    return all(in_half_plane(t, h, tol) for h in in_sector_halfplanes(sector))


def is_symmetric(t, tol=DEFAULT_TOL):
    form = t.B.conj().T @ t.A
    return norm2(form - form.conj().T) <= tol.threshold(max(1.0, norm2(form)))


def is_positive(t, tol=DEFAULT_TOL):
    return is_psd(t.B.conj().T @ t.A, tol)


def is_self_adjoint(t, tol=DEFAULT_TOL):
    return quotient_equals(t, quotient_adjoint(t, tol), tol)


def is_normal(t, tol=DEFAULT_TOL):
    adj = quotient_adjoint(t, tol)
    return quotient_equals(quotient_product(adj, t, tol), quotient_product(t, adj, tol), tol)


def numerical_range_sample(t, count, rng_seed, tol=DEFAULT_TOL):
    """<Ty, y> for `count` unit vectors y drawn uniformly from the sphere of dom(T)."""
    c = canonicalize(t, tol)
    q = from_range(c.E, tol).basis
    if q.shape[1] == 0 or count <= 0:
        return []

    rng = np.random.default_rng(rng_seed)
    z = rng.standard_normal((q.shape[1], count)) + 1j * rng.standard_normal((q.shape[1], count))
    z /= np.linalg.norm(z, axis=0)
    y = q @ z
    values = np.einsum("ij,ij->j", y.conj(), c.M @ y)
    return [complex(v) for v in values]
