from maffkit.generators import random_matrix
from maffkit.numkernel import from_range, subspace_distance, subspace_intersect, subspace_preimage, subspace_sum
from maffkit.rangecalc import box_dot, box_plus, inv_circ
from maffkit.verify.base import BaseSuite

SUBSPACE_LIMIT = 1e-7


class LatticeSuite(BaseSuite):
    name = "lattice"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        n = rec.dim
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        rec.attach(A=a, B=b)
        va = from_range(a, tol)
        vb = from_range(b, tol)

        rec.note("box_plus_sum", subspace_distance(from_range(box_plus(a, b, tol), tol), subspace_sum(va, vb, tol)), SUBSPACE_LIMIT)
        rec.note("box_dot_intersect", subspace_distance(from_range(box_dot(a, b, tol), tol), subspace_intersect(va, vb, tol)), SUBSPACE_LIMIT)
        rec.note("inv_circ_preimage", subspace_distance(from_range(inv_circ(a, b, tol), tol), subspace_preimage(a, vb, tol)), SUBSPACE_LIMIT)
