import numpy as np

from maffkit.generators import gaussian, random_matrix
from maffkit.numkernel import norm2, numerical_rank, psd_le, range_projection
from maffkit.rangecalc import douglas_solve, range_contained
from maffkit.verify.base import BaseSuite

RESIDUAL_LIMIT = 1e-9
LAMBDA_SLACK = 1e-6


class DouglasSuite(BaseSuite):
    name = "douglas"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        n = rec.dim
        b = random_matrix(rng, n)
        a = b @ gaussian(rng, n, n)
        rec.attach(A=a, B=b)

        x = douglas_solve(a, b, tol)
        rec.note("bx_equals_a", norm2(b @ x - a), RESIDUAL_LIMIT)
        rec.note("x_on_row_space", norm2(range_projection(b.conj().T, tol) @ x - x), RESIDUAL_LIMIT)

        # minimum-norm least squares through LAPACK's SVD path
        x2 = np.linalg.lstsq(b, a, rcond=None)[0]
        rec.note("unique_solution", norm2(x - x2), RESIDUAL_LIMIT)

        lam = norm2(x) + LAMBDA_SLACK
        rec.expect("majorization", psd_le(a @ a.conj().T, lam * lam * (b @ b.conj().T), tol))
        rec.expect("contained", range_contained(a, b, tol))

        if numerical_rank(b, tol) < n:
            wide = random_matrix(rng, n, rank=n)
            rec.expect("not_contained", not range_contained(wide, b, tol))
