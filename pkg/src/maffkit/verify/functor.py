import numpy as np

from maffkit.functor import compose, hom_amplify2, hom_apply, phi_aff, phi_aff_s
from maffkit.generators import random_algebra, random_element, random_homomorphism, random_quotient_in
from maffkit.numkernel import from_range, range_projection, subspace_distance
from maffkit.quotient import (
    characteristic_projection,
    quotient_adjoint,
    quotient_extends,
    quotient_kaufman,
    quotient_product,
    quotient_sum,
    restrict,
)
from maffkit.rangecalc import box_dot, box_plus, douglas_solve, inv_circ, s_block, t_block
from maffkit.verify.base import BaseSuite, matrix_gap, quotient_gap

FUNCTOR_LIMIT = 1e-7


class FunctorSuite(BaseSuite):
    name = "functor"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        alg = random_algebra(rng, rec.dim)
        phi = random_homomorphism(rng, alg)
        t1 = random_quotient_in(rng, alg)
        t2 = random_quotient_in(rng, alg)
        rec.attach(T1=t1, T2=t2)

        def f(t):
            return phi_aff(phi, t, tol)

        def h(x):
            return hom_apply(phi, x, tol)

        ops = {
            "sum": (quotient_sum(t1, t2, tol), quotient_sum(f(t1), f(t2), tol)),
            "product": (quotient_product(t1, t2, tol), quotient_product(f(t1), f(t2), tol)),
            "kaufman": (quotient_kaufman(t1, tol)[0], quotient_kaufman(f(t1), tol)[0]),
            "adjoint": (quotient_adjoint(t1, tol), quotient_adjoint(f(t1), tol)),
        }
        for kind, (before, after) in ops.items():
            rec.note("preserves_%s" % kind, quotient_gap(f(before), after, tol), FUNCTOR_LIMIT)

        phi2 = hom_amplify2(phi)
        a, b = t1.A, t1.B
        rec.note("chi_intertwines", matrix_gap(characteristic_projection(f(t1), tol), hom_apply(phi2, characteristic_projection(t1, tol), tol)), FUNCTOR_LIMIT)
        rec.note("amplify_s_block", matrix_gap(hom_apply(phi2, s_block(a, b), tol), s_block(h(a), h(b))), FUNCTOR_LIMIT)
        rec.note("amplify_t_block", matrix_gap(hom_apply(phi2, t_block(a, b), tol), t_block(h(a), h(b))), FUNCTOR_LIMIT)

        dom = from_range(b, tol)
        rec.note("domain", subspace_distance(from_range(f(t1).B, tol), phi_aff_s(phi, dom, tol)), FUNCTOR_LIMIT)
        rec.note("range_projection", matrix_gap(h(range_projection(a, tol)), range_projection(h(a), tol)), FUNCTOR_LIMIT)

        x, y = random_element(rng, alg), random_element(rng, alg)
        rec.note("box_plus", matrix_gap(h(box_plus(x, y, tol)), box_plus(h(x), h(y), tol)), FUNCTOR_LIMIT)
        rec.note("box_dot", matrix_gap(h(box_dot(a, t2.B, tol)), box_dot(h(a), h(t2.B), tol)), FUNCTOR_LIMIT)
        rec.note("inv_circ", matrix_gap(h(inv_circ(a, t2.B, tol)), inv_circ(h(a), h(t2.B), tol)), FUNCTOR_LIMIT)

        lhs = b @ x
        rec.note("douglas", matrix_gap(h(douglas_solve(lhs, b, tol)), douglas_solve(h(lhs), h(b), tol)), FUNCTOR_LIMIT)

        t0 = restrict(t1, b @ x, tol)
        rec.expect("preserves_extension", quotient_extends(f(t0), f(t1), tol))

        rec.note("unital", matrix_gap(h(np.eye(alg.dim)), np.eye(phi.target.dim)), FUNCTOR_LIMIT)

        psi = random_homomorphism(rng, phi.target, max_dim=phi.target.dim + alg.dim)
        chain = compose(psi, phi)
        rec.note("composition", quotient_gap(phi_aff(chain, t1, tol), phi_aff(psi, f(t1), tol), tol), FUNCTOR_LIMIT)
