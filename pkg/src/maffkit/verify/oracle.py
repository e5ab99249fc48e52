from maffkit.generators import random_quotient
from maffkit.graphoracle import graph_distance, graph_from_quotient, graph_op
from maffkit.quotient import quotient_adjoint, quotient_kaufman, quotient_product, quotient_sum
from maffkit.verify.base import BaseSuite

GRAPH_LIMIT = 1e-7


class OracleSuite(BaseSuite):
    name = "oracle"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        n = rec.dim
        t1 = random_quotient(rng, n)
        t2 = random_quotient(rng, n)
        rec.attach(T1=t1, T2=t2)
        g1 = graph_from_quotient(t1, tol)
        g2 = graph_from_quotient(t2, tol)

        results = {
            "sum": (quotient_sum(t1, t2, tol), graph_op("sum", g1, g2, tol)),
            "product": (quotient_product(t1, t2, tol), graph_op("product", g1, g2, tol)),
            "kaufman": (quotient_kaufman(t1, tol)[0], graph_op("kaufman", g1, tol=tol)),
            "adjoint": (quotient_adjoint(t1, tol), graph_op("adjoint", g1, tol=tol)),
        }
        for kind, (q, g) in results.items():
            rec.note("%s_graph" % kind, graph_distance(graph_from_quotient(q, tol), g), GRAPH_LIMIT)
            g.check_single_valued(tol)
