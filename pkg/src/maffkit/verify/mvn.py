from maffkit.functor import mvn_check
from maffkit.generators import amplified_algebra, gaussian, random_quotient_in
from maffkit.numkernel import numerical_rank
from maffkit.quotient import Quotient
from maffkit.verify.base import BaseSuite, CaseRecord

COMMUTANT_SAMPLES = 50
DETECTION_RATE = 0.95
PERTURBATION = 0.5


class MvnSuite(BaseSuite):
    name = "mvn"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        alg = amplified_algebra(rng, max(rec.dim, 2))
        t = random_quotient_in(rng, alg)
        while numerical_rank(t.B, tol) == 0:
            t = random_quotient_in(rng, alg)
        rec.attach(T=t)

        rec.expect("affiliated_commutes", mvn_check(t, alg, COMMUTANT_SAMPLES, int(rng.integers(0, 2**32)), tol))

        # outside the algebra but still a valid quotient: null(B) stays inside null(A')
        bent = Quotient(t.A + PERTURBATION * gaussian(rng, alg.dim, alg.dim) @ t.B, t.B)
        rec.attach(T_bent=bent)
        rec.flags["detected"] = not mvn_check(bent, alg, COMMUTANT_SAMPLES, int(rng.integers(0, 2**32)), tol)

    def finish(self, records, ctx):
        flagged = [r for r in records if "detected" in r.flags]
        if not flagged:
            return []
        rec = CaseRecord(self.name, len(records), 0, ctx["seed"])
        rate = sum(1 for r in flagged if r.flags["detected"]) / float(len(flagged))
        rec.note("perturbations_detected_shortfall", max(0.0, DETECTION_RATE - rate), 1e-12)
        return [rec]
