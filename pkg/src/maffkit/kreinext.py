"""Krein extension theory for partially defined positive operators.

The Krein transform K(S) = (S - I)(S + I)^-1 turns a positive quotient into a
symmetric contraction on ran(S + I). Its Hermitian contractive extensions K
with I - K injective correspond to the positive self-adjoint extensions of S.
The extremal ones are

    K_min = K - D(I + K; F)     K_max = K + D(I - K; F)

with F the projection onto the orthogonal complement of the contraction's
domain and D(A; E) the shorted operator.
"""

import logging
from dataclasses import dataclass

import numpy as np

from maffkit.errors import (
    InitialNotInF,
    NoExtensionFound,
    NotAnExtension,
    NotContractive,
    NotHermitian,
    NotInF,
    NotPositive,
    NotProjection,
    NotPsd,
)
from maffkit.numkernel import (
    DEFAULT_TOL,
    as_cmatrix,
    from_range,
    hermitian_eig,
    is_hermitian,
    is_projection,
    is_psd,
    norm2,
    null_basis,
    null_projection,
    psd_sqrt,
)
from maffkit.quotient import canonicalize, quotient_extends, quotient_new, total
from maffkit.specprops import is_positive

log = logging.getLogger(__name__)

MAX_ITER = 10000
RESIDUAL_TARGET = 1e-10
RETRIES = 3
RETRY_DELTAS = (1e-3, 1e-2, 1e-1)
STALL_RTOL = 1e-15


@dataclass(frozen=True)
class SymContraction:
    M: np.ndarray
    E: np.ndarray

    @property
    def n(self):
        return int(self.M.shape[0])

    @property
    def complement(self):
        return np.eye(self.n, dtype=complex) - self.E


@dataclass(frozen=True)
class ExtensionBounds:
    K_min: np.ndarray
    K_max: np.ndarray
    F: np.ndarray
    k_max_valid: bool


class FriedrichsUnbounded:
    """Marker returned when I - K_max is not injective."""

    def __repr__(self):
        return "FriedrichsUnbounded()"

    def __eq__(self, other):
        return isinstance(other, FriedrichsUnbounded)

    def __hash__(self):
        return hash(FriedrichsUnbounded)


FRIEDRICHS_UNBOUNDED = FriedrichsUnbounded()


@dataclass(frozen=True)
class PositiveExtensions:
    krein_vn: object
    friedrichs: object
    bounds: ExtensionBounds
    initial: np.ndarray


def _hermitize(x):
    return 0.5 * (x + x.conj().T)


def shorted_operator(a, e, tol=DEFAULT_TOL):
    """D(A; E) = A^1/2 N((I - E) A^1/2) A^1/2."""
    a = as_cmatrix(a, "A")
    e = as_cmatrix(e, "E")
    if not is_psd(a, tol):
        raise NotPsd("A must be positive semidefinite")
    if not is_projection(e, tol):
        raise NotProjection("E must be an orthogonal projection")

    root = psd_sqrt(a, tol)
    comp = np.eye(a.shape[0]) - e
    n = null_projection(comp @ root, tol, scale=norm2(root))
    return _hermitize(root @ n @ root)


def krein_transform(s, tol=DEFAULT_TOL):
    if not is_positive(s, tol):
        raise NotPositive("Krein transform needs a positive operator")
    c = canonicalize(quotient_new(s.A - s.B, s.A + s.B, tol), tol)
    return SymContraction(c.M, c.E)


def _unit_eig_dim(b, tol):
    # dim of {y in dom : M y = y}
    q = from_range(b.E, tol).basis
    if q.shape[1] == 0:
        return 0
    return null_basis(q - b.M @ q, tol, scale=1.0).dim


def is_in_F(b, tol=DEFAULT_TOL):
    """True iff I - B is one-to-one on dom(B)."""
    return _unit_eig_dim(b, tol) == 0


def inverse_krein_transform(b, tol=DEFAULT_TOL):
    """(I + B)(I - B)^-1 as the quotient (E + M, E - M)."""
    if not is_in_F(b, tol):
        raise NotInF("I - B is not one-to-one on dom(B)")
    return quotient_new(b.E + b.M, b.E - b.M, tol)


def _one_minus_nullity(k, tol):
    return null_basis(np.eye(k.shape[0]) - k, tol, scale=1.0).dim


def _check_extension(b, k, tol):
    k = as_cmatrix(k, "K")
    if not is_hermitian(k, tol):
        raise NotHermitian("Initial extension K must be Hermitian")
    if norm2(k) > 1.0 + tol.eq_abs:
        raise NotContractive("Initial extension has norm %.6g > 1" % norm2(k))
    gap = norm2((k - b.M) @ b.E)
    if gap > tol.threshold(max(1.0, norm2(k))):
        raise NotAnExtension("K does not agree with B on dom(B) (gap %.3e)" % gap)
    if _one_minus_nullity(k, tol):
        raise InitialNotInF("I - K is not one-to-one")
    return _hermitize(k)


def extension_bounds(b, k, tol=DEFAULT_TOL):
    k = _check_extension(b, k, tol)
    f = b.complement
    eye = np.eye(b.n)
    k_min = _hermitize(k - shorted_operator(eye + k, f, tol))
    k_max = _hermitize(k + shorted_operator(eye - k, f, tol))
    valid = _one_minus_nullity(k_max, tol) == 0
    log.debug("Extension bounds: ||K_max - K_min|| = %.3e, K_max valid = %s", norm2(k_max - k_min), valid)
    return ExtensionBounds(K_min=k_min, K_max=k_max, F=f, k_max_valid=bool(valid))


def canonical_extension(b):
    """K0 = M + E M* F, the Hermitian extension vanishing on F C^n (+) F C^n."""
    return _hermitize(b.M + b.E @ b.M.conj().T @ b.complement)


def _clip(k, radius, tol):
    w, q = hermitian_eig(_hermitize(k), tol)
    return (q * np.clip(w, -radius, radius)) @ q.conj().T


def _alternate(b, start, radius, tol, max_iter):
    # alternating projections: affine extension set <-> operator-norm ball
    k0 = canonical_extension(b)
    f = b.complement
    k = start
    residual = np.inf
    for it in range(int(max_iter)):
        y = _clip(k, radius, tol)
        prev, residual = residual, norm2(k - y)
        if residual <= RESIDUAL_TARGET:
            log.debug("Alternating projections converged after %d iterations", it)
            return k, residual
        if abs(prev - residual) <= STALL_RTOL * max(1.0, residual):
            log.debug("Alternating projections stalled at residual %.3e after %d iterations", residual, it)
            return None, residual
        k = k0 + f @ y @ f
    return None, residual


def find_initial_extension(b, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """A Hermitian contraction K extending B with I - K one-to-one."""
    k0 = canonical_extension(b)
    k, residual = _alternate(b, k0, 1.0, tol, max_iter)
    if k is None:
        raise NoExtensionFound("No contractive extension found (residual %.3e); one may not exist" % residual)
    if _one_minus_nullity(k, tol) == 0:
        return _hermitize(k)

    for attempt, delta in enumerate(RETRY_DELTAS[:RETRIES], start=1):
        log.debug("I - K not one-to-one; retry %d with delta %.0e", attempt, delta)
        start = (1.0 - delta) * k + delta * k0
        cand, residual = _alternate(b, start, 1.0 - delta, tol, max_iter)
        if cand is None:
            continue
        if norm2(cand) <= 1.0 + tol.eq_abs and _one_minus_nullity(cand, tol) == 0:
            return _hermitize(cand)

    raise NoExtensionFound("Every contractive extension found has I - K singular; none may exist in F")


def witness_extension(s, witness, tol=DEFAULT_TOL):
    """K(W) for a PSD total matrix W that extends S."""
    w = as_cmatrix(witness, "witness")
    if not is_psd(w, tol):
        raise NotPsd("Witness must be positive semidefinite")
    if not quotient_extends(s, total(w), tol):
        raise NotAnExtension("Witness does not extend S")
    eye = np.eye(w.shape[0])
    return _hermitize((w - eye) @ np.linalg.inv(w + eye))


def positive_extensions(s, witness=None, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Krein-von Neumann and Friedrichs extensions of a positive quotient."""
    b = krein_transform(s, tol)
    if witness is not None:
        k = witness_extension(s, witness, tol)
    else:
        k = find_initial_extension(b, tol, max_iter)

    bounds = extension_bounds(b, k, tol)
    eye = np.eye(s.n, dtype=complex)
    krein_vn = inverse_krein_transform(SymContraction(bounds.K_min, eye), tol)
    if bounds.k_max_valid:
        friedrichs = inverse_krein_transform(SymContraction(bounds.K_max, eye), tol)
    else:
        friedrichs = FRIEDRICHS_UNBOUNDED
    return PositiveExtensions(krein_vn=krein_vn, friedrichs=friedrichs, bounds=bounds, initial=k)


def sample_extension(bounds, t=None, rng=None):
    """K_t = (1 - t) K_min + t K_max."""
    if t is None:
        rng = rng if rng is not None else np.random.default_rng()
        t = float(rng.uniform(0.0, 1.0))
    if not (0.0 <= t <= 1.0):
        raise ValueError("t must lie in [0, 1] (got %r)" % t)
    return (1.0 - t) * bounds.K_min + t * bounds.K_max
