"""Operator-range lattice: Douglas factorization, box-plus, box-dot, inverse image."""

import logging
from dataclasses import dataclass, field

import numpy as np

from maffkit.errors import DimensionMismatch, NotInAlgebra, RangeNotContained, RangesDiffer
from maffkit.numkernel import (
    DEFAULT_TOL,
    as_cmatrix,
    norm2,
    null_basis,
    pseudo_inverse,
    psd_sqrt,
    range_projection,
    truncate,
)

log = logging.getLogger(__name__)

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class EquiRangeWitness:
    C: np.ndarray
    D: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    per_block: list = field(default_factory=list)

    @property
    def direction(self):
        dirs = sorted(set(d for _, d in self.per_block))
        return dirs[0] if len(dirs) == 1 else "mixed"


def _same_rows(a, b):
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch("Row dimensions differ: %d vs %d" % (a.shape[0], b.shape[0]))


def t_block(a, b):
    """T_{A,B} = [[A, -B], [0, 0]]."""
    z = np.zeros((a.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    return np.vstack([np.hstack([a, -b]), z])


def s_block(a, b):
    """S_{A,B} = [[B, 0], [A, 0]]."""
    return np.block([[b, np.zeros_like(b)], [a, np.zeros_like(a)]])


def range_contained(a, b, tol=DEFAULT_TOL):
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    _same_rows(a, b)
    comp = np.eye(a.shape[0]) - range_projection(b, tol)
    return norm2(comp @ a) < tol.threshold(max(1.0, norm2(a)))


def douglas_solve(a, b, tol=DEFAULT_TOL):
    """The unique X with B X = A and ran(X) inside ran(B*)."""
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    _same_rows(a, b)
    if not range_contained(a, b, tol):
        raise RangeNotContained("ran(A) is not contained in ran(B)")
    x = pseudo_inverse(b, tol) @ a
    return range_projection(b.conj().T, tol) @ x


def box_plus(a, b, tol=DEFAULT_TOL):
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    _same_rows(a, b)
    return psd_sqrt(a @ a.conj().T + b @ b.conj().T, tol)


def _null_corner(a, b, tol):
    # (1,1) block of N(T_{A,B}); its range is {x : Ax in ran(B)}
    n = a.shape[1]
    scale = max(norm2(a), norm2(b))
    nb = null_basis(np.hstack([a, -b]), tol, scale=scale)
    z1 = nb.basis[:n, :]
    return z1 @ z1.conj().T


def box_dot(a, b, tol=DEFAULT_TOL):
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    _same_rows(a, b)
    n11 = _null_corner(a, b, tol)
    return psd_sqrt(a @ n11 @ a.conj().T, tol, scale=norm2(a) ** 2)


def inv_circ(a, b, tol=DEFAULT_TOL):
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    _same_rows(a, b)
    return psd_sqrt(_null_corner(a, b, tol), tol, scale=1.0)


def _partial_isometry(src, dst):
    # maps the orthonormal basis src onto dst column by column
    k = min(src.shape[1], dst.shape[1])
    return dst[:, :k] @ src[:, :k].conj().T


def block_witness(a, b, tol=DEFAULT_TOL, direction=None):
    """Right-invertible C relating two matrices with the same range.

    forward:  C = B^+ A + V,  V : null(A) -> null(B), so that B C = A.
    backward: C = A^+ B + V*, V* : null(B) -> null(A), so that A C = B.
    """
    na = null_basis(a, tol).basis
    nb = null_basis(b, tol).basis
    if direction is None:
        direction = FORWARD if na.shape[1] >= nb.shape[1] else BACKWARD

    if direction == FORWARD:
        c = douglas_solve(a, b, tol) + _partial_isometry(na, nb)
    else:
        c = douglas_solve(b, a, tol) + _partial_isometry(nb, na)
    return c, direction


def _components(alg, x):
    if alg is None:
        return [x]
    return alg.components(x)


def _embed(alg, blocks):
    if alg is None:
        return blocks[0]
    return alg.embed(blocks)


def equirange_witness(a, b, alg=None, tol=DEFAULT_TOL, direction=None):
    """Witness C (in the algebra) with AP = BCP and BQ = ACQ for central P + Q = I."""
    a = as_cmatrix(a, "A")
    b = as_cmatrix(b, "B")
    _same_rows(a, b)
    if alg is not None:
        for name, x in (("A", a), ("B", b)):
            if not alg.contains(x, tol):
                raise NotInAlgebra("%s is not a member of the algebra" % name)

    if not (range_contained(a, b, tol) and range_contained(b, a, tol)):
        raise RangesDiffer("ran(A) and ran(B) differ")

    pairs = list(zip(_components(alg, a), _components(alg, b)))
    return assemble_witness(alg, pairs, tol, direction)


def assemble_witness(alg, pairs, tol=DEFAULT_TOL, direction=None):
    """Per-block witnesses for (A_i, B_i) component pairs, assembled in the algebra."""
    cs, ds, ps, qs, per_block = [], [], [], [], []
    for i, (ai, bi) in enumerate(pairs):
        ci, d = block_witness(ai, bi, tol, direction)
        cs.append(ci)
        ds.append(np.linalg.inv(ci))
        eye = np.eye(ci.shape[0], dtype=complex)
        ps.append(eye if d == FORWARD else 0 * eye)
        qs.append(0 * eye if d == FORWARD else eye)
        per_block.append((i, d))

    log.debug("Equi-range witness directions: %s", per_block)
    return EquiRangeWitness(
        C=_embed(alg, cs),
        D=_embed(alg, ds),
        P=_embed(alg, ps),
        Q=_embed(alg, qs),
        per_block=per_block,
    )


def clean_product(*factors, tol=DEFAULT_TOL, scale=None):
    """Product of factors with singular directions below the factors' scale removed.

    ``scale`` overrides the product of factor norms; pass the operand norm when a
    factor (a complementary projection, say) can itself be pure roundoff.
    """
    out = factors[0]
    ref = norm2(factors[0])
    for f in factors[1:]:
        out = out @ f
        ref *= norm2(f)
    return truncate(out, tol, scale=ref if scale is None else scale)

