import math

import numpy as np

from maffkit.functor import RepAlgebra, phi_aff
from maffkit.generators import (
    gaussian,
    random_homomorphism,
    random_hermitian,
    random_matrix,
    random_psd,
    random_unitary,
)
from maffkit.quotient import Quotient
from maffkit.specprops import (
    HalfPlane,
    Sector,
    half_plane_transform,
    in_half_plane,
    is_accretive,
    is_normal,
    is_positive,
    is_sectorial,
    is_self_adjoint,
    is_symmetric,
    numerical_range_sample,
)
from maffkit.verify.base import BaseSuite

SAMPLE_LIMIT = 1e-7
KINDS = ("hermitian", "psd", "sector", "normal", "generic")
REFUTE_DRAWS = 10000
# a counterexample puts the median sample this far outside the region
CUT_DEPTH = 0.1


def _draw(rng, n):
    kind = KINDS[int(rng.integers(0, len(KINDS)))]
    c0 = complex(gaussian(rng, 1, 1)[0, 0]) * 0.5
    theta0 = float(rng.uniform(0.1, 1.4))
    rank = int(rng.integers(1, n + 1))
    if kind == "hermitian":
        x = random_hermitian(rng, n)
    elif kind == "psd":
        x = random_psd(rng, n)
    elif kind == "sector":
        phi = float(rng.uniform(-theta0, theta0))
        x = c0 * np.eye(n) + np.exp(1j * phi) * random_psd(rng, n)
    elif kind == "normal":
        u = random_unitary(rng, n)
        x = (u * gaussian(rng, 1, n)) @ u.conj().T
        rank = n
    else:
        x = gaussian(rng, n, n)
    b = random_matrix(rng, n, rank=rank)
    return Quotient(x @ b, b), Sector(c0, theta0)


def _shifted(t, s):
    # W(T + s) = W(T) + s
    return Quotient(t.A + s * t.B, t.B)


def _samples(t, rng, count, tol):
    return np.array(numerical_range_sample(t, count, int(rng.integers(0, 2**32)), tol))


def _region_checks(values, h, sector):
    """predicate name -> (certificate, claimed-region violation per sample)."""
    im = np.abs(values.imag)
    return {
        "symmetric": (lambda q, tol: is_symmetric(q, tol), im),
        "self_adjoint": (lambda q, tol: is_self_adjoint(q, tol), im),
        "positive": (lambda q, tol: is_positive(q, tol), np.maximum(im, -values.real)),
        "accretive": (lambda q, tol: is_accretive(q, tol), -values.real),
        "half_plane": (lambda q, tol: in_half_plane(q, h, tol), -h.margin(values)),
        "sector": (lambda q, tol: is_sectorial(q, sector, tol), -sector.margin(values)),
        "normal": (lambda q, tol: is_normal(q, tol), None),
    }


def _counterexamples(t, pilot, theta, sector):
    """Operators and regions built so that the median pilot sample lands CUT_DEPTH outside."""
    re_mid = float(np.median(pilot.real))
    im_mid = float(np.median(pilot.imag))
    depth = CUT_DEPTH * max(1.0, float(np.ptp(pilot.real)), float(np.ptp(pilot.imag)))
    rot_mid = float(np.median(np.real(np.exp(-1j * theta) * pilot)))

    left = _shifted(t, -(re_mid + depth))
    tilted = _shifted(t, 1j * (depth - im_mid))
    cut = HalfPlane(theta, rot_mid + depth)
    vertex = Sector(complex(re_mid + depth, im_mid), sector.theta)
    return {
        "symmetric": (tilted, cut, vertex),
        "self_adjoint": (tilted, cut, vertex),
        "positive": (left, cut, vertex),
        "accretive": (left, cut, vertex),
        "half_plane": (t, cut, vertex),
        "sector": (t, cut, vertex),
    }


class NumericalRangeSuite(BaseSuite):
    name = "numrange"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        n = rec.dim
        t, sector = _draw(rng, n)
        h = HalfPlane(float(rng.uniform(-math.pi, math.pi)), complex(gaussian(rng, 1, 1)[0, 0]))
        rec.attach(T=t)

        values = _samples(t, rng, ctx["samples"], tol)
        alg = RepAlgebra(((n, 1),))
        image = phi_aff(random_homomorphism(rng, alg), t, tol)

        for name, (pred, violation) in _region_checks(values, h, sector).items():
            if not pred(t, tol):
                continue
            if violation is not None:
                worst = float(violation.max()) if violation.size else 0.0
                rec.note("%s_samples_inside" % name, worst, SAMPLE_LIMIT)
            rec.expect("%s_preserved" % name, pred(image, tol))

        pilot = _samples(t, rng, REFUTE_DRAWS, tol)
        for name, (q, cut, vertex) in _counterexamples(t, pilot, h.theta, sector).items():
            fresh = _samples(q, rng, REFUTE_DRAWS, tol)
            pred, violation = _region_checks(fresh, cut, vertex)[name]
            rec.expect("%s_refuted" % name, not pred(q, tol))
            rec.expect("%s_refuted_by_samples" % name, float(violation.max()) > SAMPLE_LIMIT)

        moved = half_plane_transform(t, h)
        rec.expect("affine_covariance", in_half_plane(t, h, tol) == is_accretive(moved, tol))
