import numpy as np

from maffkit.generators import random_quotient
from maffkit.graphoracle import graph_distance, graph_from_quotient, graph_op
from maffkit.numkernel import from_range, norm2
from maffkit.quotient import canonicalize, quotient_kaufman
from maffkit.verify.base import BaseSuite

IDENTITY_LIMIT = 1e-8
GRAPH_LIMIT = 1e-7


class KaufmanSuite(BaseSuite):
    name = "kaufman"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        t = random_quotient(rng, rec.dim)
        rec.attach(T=t)

        tdag, n_t = quotient_kaufman(t, tol)
        m = canonicalize(t, tol).M
        md = canonicalize(tdag, tol).M

        dom = from_range(t.B, tol).basis
        rng_t = from_range(t.A, tol).basis
        eye = np.eye(t.n)
        # T^dag T = I - N(T) on dom(T); T T^dag = id on ran(T)
        rec.note("left_identity", norm2(md @ m @ dom - (eye - n_t) @ dom), IDENTITY_LIMIT)
        rec.note("right_identity", norm2(m @ md @ rng_t - rng_t), IDENTITY_LIMIT)
        rec.note("kernel_in_domain", norm2(n_t - from_range(t.B, tol).projector() @ n_t), IDENTITY_LIMIT)

        tdd, _ = quotient_kaufman(tdag, tol)
        g = graph_from_quotient(t, tol)
        oracle = graph_op("kaufman", graph_op("kaufman", g, tol=tol), tol=tol)
        rec.note("double_dagger_graph", graph_distance(graph_from_quotient(tdd, tol), oracle), GRAPH_LIMIT)
