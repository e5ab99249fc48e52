import numpy as np

from maffkit.generators import random_invertible, random_matrix, random_projection, random_quotient, rerepresent
from maffkit.graphoracle import graph_contains, graph_equals, graph_from_quotient
from maffkit.numkernel import norm2
from maffkit.quotient import extension_witness, quotient_equals, quotient_extends, quotient_witness, restrict
from maffkit.rangecalc import equirange_witness
from maffkit.verify.base import BaseSuite

WITNESS_LIMIT = 1e-8


class UniquenessSuite(BaseSuite):
    name = "uniqueness"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        n = rec.dim
        t = random_quotient(rng, n)
        other = random_quotient(rng, n)
        same, _ = rerepresent(rng, t)
        rec.attach(T=t, T_other=other, T_same=same)

        g = graph_from_quotient(t, tol)
        for label, u in (("same", same), ("other", other)):
            gu = graph_from_quotient(u, tol)
            rec.expect("equals_matches_graph_%s" % label, quotient_equals(t, u, tol) == graph_equals(g, gu, tol))
        rec.expect("rerepresented_equal", quotient_equals(t, same, tol))

        w = quotient_witness(t, same, tol=tol)
        rec.note("witness_recomposes", norm2(same.stacked() @ w.C - t.stacked()), WITNESS_LIMIT)
        rec.note("witness_right_inverse", norm2(w.C @ w.D - np.eye(n)), WITNESS_LIMIT)

        # restriction chain T0 <= T
        t0 = restrict(t, t.B @ random_projection(rng, n), tol)
        g0 = graph_from_quotient(t0, tol)
        rec.expect("restriction_extends", quotient_extends(t0, t, tol))
        rec.expect("extends_matches_graph", quotient_extends(t, t0, tol) == graph_contains(g0, g, tol))
        rec.expect("extends_reflexive", quotient_extends(t, t, tol))
        c = extension_witness(t0, t, tol)
        rec.note("extension_witness", norm2(t.stacked() @ c - t0.stacked()), WITNESS_LIMIT)

        a = random_matrix(rng, n)
        b = a @ random_invertible(rng, n)
        er = equirange_witness(a, b, tol=tol)
        rec.note("equirange_forward", norm2(a @ er.P - b @ er.C @ er.P), WITNESS_LIMIT)
        rec.note("equirange_backward", norm2(b @ er.Q - a @ er.C @ er.Q), WITNESS_LIMIT)
        rec.note("equirange_right_inverse", norm2(er.C @ er.D - np.eye(n)), WITNESS_LIMIT)
