import numpy as np

from maffkit.functor import hom_apply, phi_aff
from maffkit.generators import (
    random_algebra,
    random_homomorphism,
    random_positive_quotient,
    random_positive_quotient_in,
    random_projection,
    random_psd,
)
from maffkit.graphoracle import schur_shorted
from maffkit.kreinext import (
    FriedrichsUnbounded,
    SymContraction,
    extension_bounds,
    inverse_krein_transform,
    krein_transform,
    positive_extensions,
    sample_extension,
    shorted_operator,
    witness_extension,
)
from maffkit.numkernel import from_range, norm2, null_projection, psd_le, psd_sqrt
from maffkit.quotient import Quotient, canonicalize, quotient_extends
from maffkit.specprops import is_positive
from maffkit.verify.base import BaseSuite, CaseRecord, matrix_gap, quotient_gap

SHORTED_LIMIT = 1e-8
ROUND_TRIP_LIMIT = 1e-8
SEED_LIMIT = 1e-7
FUNCTOR_LIMIT = 1e-6
ORDER_SAMPLES = 20


class KreinSuite(BaseSuite):
    name = "krein"

    def case(self, rec, rng, ctx):
        tol = ctx["tol"]
        n = rec.dim
        a = random_psd(rng, n)
        e = random_projection(rng, n)
        rec.attach(A=a, E=e)

        d = shorted_operator(a, e, tol)
        rec.note("shorted_schur", matrix_gap(d, schur_shorted(a, e, tol)), SHORTED_LIMIT)
        root = psd_sqrt(a, tol)
        room = from_range(null_projection((np.eye(n) - e) @ root, tol, scale=norm2(root)), tol).basis
        if room.shape[1]:
            sub = room @ random_projection(rng, room.shape[1]) @ room.conj().T
            rec.expect("shorted_maximal", psd_le(root @ sub @ root, d, tol))

        s, w = random_positive_quotient(rng, n)
        rec.attach(S=s, W=w)
        b = krein_transform(s, tol)
        rec.note("krein_round_trip", quotient_gap(inverse_krein_transform(b, tol), s, tol), ROUND_TRIP_LIMIT)

        f_dom = np.eye(n) - from_range(s.B, tol).projector()
        w2 = w + f_dom @ random_psd(rng, n) @ f_dom
        bounds = extension_bounds(b, witness_extension(s, w, tol), tol)
        bounds2 = extension_bounds(b, witness_extension(s, w2, tol), tol)
        rec.note("k_min_seed_independent", matrix_gap(bounds.K_min, bounds2.K_min), SEED_LIMIT)
        rec.note("k_max_seed_independent", matrix_gap(bounds.K_max, bounds2.K_max), SEED_LIMIT)

        eye = np.eye(n, dtype=complex)
        krein_vn = inverse_krein_transform(SymContraction(bounds.K_min, eye), tol)
        vn = canonicalize(krein_vn, tol).M
        for t in np.linspace(0.0, 0.95, ORDER_SAMPLES):
            kt = sample_extension(bounds, float(t))
            ext = inverse_krein_transform(SymContraction(kt, eye), tol)
            ok = (
                psd_le(bounds.K_min, kt, tol)
                and psd_le(kt, bounds.K_max, tol)
                and is_positive(ext, tol)
                and quotient_extends(s, ext, tol)
                and psd_le(vn, canonicalize(ext, tol).M, tol)
            )
            rec.expect("segment_t%.2f" % t, ok)

        alg = random_algebra(rng, n)
        phi = random_homomorphism(rng, alg)
        sa, wa = random_positive_quotient_in(rng, alg)
        ext = positive_extensions(sa, witness=wa, tol=tol)
        image = positive_extensions(phi_aff(phi, sa, tol), witness=hom_apply(phi, wa, tol), tol=tol)
        rec.note("krein_vn_functorial", quotient_gap(phi_aff(phi, ext.krein_vn, tol), image.krein_vn, tol), FUNCTOR_LIMIT)
        if not isinstance(ext.friedrichs, FriedrichsUnbounded):
            rec.note("friedrichs_functorial", quotient_gap(phi_aff(phi, ext.friedrichs, tol), image.friedrichs, tol), FUNCTOR_LIMIT)

        ka = krein_transform(sa, tol)
        kimg = krein_transform(phi_aff(phi, sa, tol), tol)

        def h(x):
            return hom_apply(phi, x, tol)

        rec.note("krein_transform_functorial", max(matrix_gap(h(ka.M), kimg.M), matrix_gap(h(ka.E), kimg.E)), FUNCTOR_LIMIT)
        aa = random_psd(rng, alg.dim)
        aa = alg.project(aa)
        ea = alg.embed([random_projection(rng, size) for size, _ in alg.blocks])
        rec.note("shorted_functorial", matrix_gap(h(shorted_operator(aa, ea, tol)), shorted_operator(h(aa), h(ea), tol)), FUNCTOR_LIMIT)

    def finish(self, records, ctx):
        tol = ctx["tol"]
        rec = CaseRecord(self.name, len(records), 2, ctx["seed"])
        s = Quotient(np.diag([1.0, 0.0]).astype(complex), np.diag([1.0, 0.0]).astype(complex))
        rec.attach(S=s)
        ext = positive_extensions(s, tol=tol)
        rec.note("worked_krein_vn", matrix_gap(canonicalize(ext.krein_vn, tol).M, np.diag([1.0, 0.0])), SHORTED_LIMIT)
        rec.expect("worked_friedrichs_unbounded", isinstance(ext.friedrichs, FriedrichsUnbounded))
        rec.note("worked_k_min", matrix_gap(ext.bounds.K_min, np.diag([0.0, -1.0])), SHORTED_LIMIT)
        rec.note("worked_k_max", matrix_gap(ext.bounds.K_max, np.diag([0.0, 1.0])), SHORTED_LIMIT)
        return [rec]
