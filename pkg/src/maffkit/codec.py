"""JSON formats for matrices, quotients, algebras and homomorphisms.

Matrix:        {"rows": n, "cols": m, "data": [[re, im], ...]}  (row-major)
Quotient:      {"A": <matrix>, "B": <matrix>}
Algebra:       {"blocks": [[n, k], ...], "frame": <matrix>}     (frame optional)
Homomorphism:  {"source": <algebra>, "target": <algebra>, "mult": [[..]], "conjugators": [<matrix>, ...]}
"""

import math

import numpy as np

from maffkit.errors import ParseError
from maffkit.functor import Homomorphism, RepAlgebra
from maffkit.quotient import Quotient


def _need(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError("%s is missing key '%s'" % (what, key))
    return obj[key]


def _count(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ParseError("%s must be a nonnegative integer (got %r)" % (what, x))
    return x


def _number(x):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError("Matrix entry part must be a number (got %r)" % (x,))
    v = float(x)
    if not math.isfinite(v):
        raise ParseError("Matrix entry is not finite")
    return v


def encode_matrix(a):
    a = np.asarray(a, dtype=complex)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in a.reshape(-1)],
    }


def parse_matrix(obj):
    rows = _count(_need(obj, "rows", "Matrix"), "rows")
    cols = _count(_need(obj, "cols", "Matrix"), "cols")
    data = _need(obj, "data", "Matrix")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError("Matrix data must hold rows*cols = %d entries" % (rows * cols))

    out = np.zeros(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("Matrix entry %d must be a [re, im] pair" % i)
        out[i] = complex(_number(pair[0]), _number(pair[1]))
    return out.reshape(rows, cols)


def encode_quotient(t):
    return {"A": encode_matrix(t.A), "B": encode_matrix(t.B)}


def parse_quotient(obj):
    return Quotient(parse_matrix(_need(obj, "A", "Quotient")), parse_matrix(_need(obj, "B", "Quotient")))


def encode_algebra(alg):
    out = {"blocks": [[n, k] for n, k in alg.blocks]}
    if alg.frame is not None:
        out["frame"] = encode_matrix(alg.frame)
    return out


def parse_algebra(obj):
    blocks = _need(obj, "blocks", "Algebra")
    if not isinstance(blocks, list) or not blocks:
        raise ParseError("Algebra blocks must be a non-empty list")
    pairs = []
    for b in blocks:
        if not isinstance(b, list) or len(b) != 2:
            raise ParseError("Algebra block must be an [n, k] pair")
        pairs.append((_count(b[0], "block size"), _count(b[1], "multiplicity")))
    frame = parse_matrix(obj["frame"]) if "frame" in obj else None
    try:
        return RepAlgebra(tuple(pairs), frame)
    except ValueError as e:
        raise ParseError("Invalid algebra: %s" % str(e))


def encode_homomorphism(phi):
    return {
        "source": encode_algebra(phi.source),
        "target": encode_algebra(phi.target),
        "mult": [[int(x) for x in row] for row in phi.mult],
        "conjugators": [encode_matrix(u) for u in phi.conjugators],
    }


def parse_homomorphism(obj):
    source = parse_algebra(_need(obj, "source", "Homomorphism"))
    target = parse_algebra(_need(obj, "target", "Homomorphism"))
    mult = _need(obj, "mult", "Homomorphism")
    if not isinstance(mult, list) or not all(isinstance(r, list) for r in mult):
        raise ParseError("Homomorphism mult must be a list of rows")
    mult = [[_count(x, "multiplicity") for x in row] for row in mult]
    conj = _need(obj, "conjugators", "Homomorphism")
    if not isinstance(conj, list):
        raise ParseError("Homomorphism conjugators must be a list")
    try:
        return Homomorphism(source, target, np.array(mult, dtype=int), tuple(parse_matrix(u) for u in conj))
    except ValueError as e:
        raise ParseError("Invalid homomorphism: %s" % str(e))
