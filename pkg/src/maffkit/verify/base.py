import numpy as np

from maffkit.codec import encode_matrix, encode_quotient
from maffkit.errors import MaffkitError
from maffkit.generators import case_rng
from maffkit.numkernel import norm2
from maffkit.quotient import Quotient, characteristic_projection


class CaseRecord:
    def __init__(self, suite, index, dim, seed):
        self.suite = suite
        self.index = int(index)
        self.dim = int(dim)
        self.seed = int(seed)
        self.inputs = {}
        self.rows = []
        self.error = None
        self.flags = {}

    def attach(self, **objs):
        for k, v in objs.items():
            if isinstance(v, Quotient):
                self.inputs[k] = encode_quotient(v)
            else:
                self.inputs[k] = encode_matrix(v)

    def note(self, check, observed, limit):
        observed = float(observed)
        self.rows.append({
            "suite": self.suite,
            "case": self.index,
            "dim": self.dim,
            "check": check,
            "observed": observed,
            "limit": float(limit),
            "passed": bool(observed < limit),
        })

    def expect(self, check, ok):
        self.note(check, 0.0 if ok else 1.0, 0.5)

    @property
    def passed(self):
        return self.error is None and all(r["passed"] for r in self.rows)

    def failures(self):
        out = []
        for r in self.rows:
            if not r["passed"]:
                out.append({
                    "suite": self.suite,
                    "case": self.index,
                    "dim": self.dim,
                    "seed": self.seed,
                    "check": r["check"],
                    "observed": r["observed"],
                    "limit": r["limit"],
                    "inputs": self.inputs,
                })
        if self.error is not None:
            out.append({
                "suite": self.suite,
                "case": self.index,
                "dim": self.dim,
                "seed": self.seed,
                "check": "error",
                "error": self.error,
                "inputs": self.inputs,
            })
        return out


def quotient_gap(t1, t2, tol):
    """Graph distance ||chi(T1) - chi(T2)||."""
    return norm2(characteristic_projection(t1, tol) - characteristic_projection(t2, tol))


def matrix_gap(x, y):
    return norm2(np.asarray(x) - np.asarray(y))


class BaseSuite:
    name = "base"

    def case(self, rec, rng, ctx):
        raise NotImplementedError("Suite must implement case(rec, rng, ctx)")

    def finish(self, records, ctx):
        return []

    def run(self, ctx):
        log = ctx["log"]
        dims = ctx["dims"]
        records = []
        for i in range(int(ctx["cases"])):
            n = int(dims[i % len(dims)])
            rec = CaseRecord(self.name, i, n, ctx["seed"])
            try:
                self.case(rec, case_rng(ctx["seed"], self.name, i), ctx)
            except MaffkitError as e:
                log.warning("Suite '%s' case %d raised %s: %s", self.name, i, type(e).__name__, str(e))
                rec.error = "%s: %s" % (type(e).__name__, str(e))
            records.append(rec)
        records.extend(self.finish(records, ctx))
        return records
