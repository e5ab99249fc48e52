"""Seeded random operators, quotients, algebras and homomorphisms.

Nonzero singular values are drawn from [0.5, 2] so that rank decisions on
generated inputs are never borderline.
"""

import zlib

import numpy as np

from maffkit.functor import Homomorphism, RepAlgebra, haar_unitary
from maffkit.numkernel import DEFAULT_TOL, numerical_rank
from maffkit.quotient import Quotient

SV_LOW = 0.5
SV_HIGH = 2.0
RESAMPLE_LIMIT = 20


def case_rng(seed, name, index):
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(name.encode("utf-8")), int(index)]))


def random_rank(rng, n, low=0):
    return int(rng.integers(low, n + 1))


def gaussian(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(rng, n):
    return haar_unitary(n, rng)


def _singular_values(rng, r):
    return rng.uniform(SV_LOW, SV_HIGH, size=r)


def random_matrix(rng, n, rank=None, tol=DEFAULT_TOL):
    rank = random_rank(rng, n) if rank is None else int(rank)
    for _ in range(RESAMPLE_LIMIT):
        u = random_unitary(rng, n)[:, :rank]
        v = random_unitary(rng, n)[:, :rank]
        a = (u * _singular_values(rng, rank)) @ v.conj().T
        if numerical_rank(a, tol) == rank:
            return a
    raise RuntimeError("Could not draw a rank-%d matrix" % rank)


def random_invertible(rng, n):
    return random_matrix(rng, n, rank=n)


def random_psd(rng, n, rank=None):
    rank = random_rank(rng, n) if rank is None else int(rank)
    u = random_unitary(rng, n)[:, :rank]
    return (u * _singular_values(rng, rank)) @ u.conj().T


def random_projection(rng, n, rank=None):
    rank = random_rank(rng, n) if rank is None else int(rank)
    u = random_unitary(rng, n)[:, :rank]
    return u @ u.conj().T


def random_hermitian(rng, n, low=-1.0, high=1.0):
    u = random_unitary(rng, n)
    return (u * rng.uniform(low, high, size=n)) @ u.conj().T


def random_quotient(rng, n, rank=None, kernel=None):
    """(A, B) with row(A) inside row(B), both with well-separated singular values."""
    r = random_rank(rng, n) if rank is None else int(rank)
    k = int(rng.integers(0, r + 1)) if kernel is None else int(kernel)
    v = random_unitary(rng, n)[:, :r]
    b = (random_unitary(rng, n)[:, :r] * _singular_values(rng, r)) @ v.conj().T
    q = r - k
    g = (random_unitary(rng, n)[:, :q] * _singular_values(rng, q)) @ random_unitary(rng, r)[:, :q].conj().T if r else np.zeros((n, 0))
    a = g @ v.conj().T
    return Quotient(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def rerepresent(rng, t):
    """(AC, BC) for a random invertible C."""
    c = random_invertible(rng, t.n)
    return Quotient(t.A @ c, t.B @ c), c


def random_positive_quotient(rng, n, rank=None):
    """(W B, B) with W a PSD witness extending the quotient."""
    w_rank = n if rng.uniform() < 0.75 else max(n - 1, 0)
    w = random_psd(rng, n, rank=w_rank)
    b = random_matrix(rng, n, rank=rank)
    return Quotient(w @ b, b), w


def random_algebra(rng, dim, max_mult=2):
    """Blocks (n_i, k_i) with sum n_i k_i == dim."""
    blocks = []
    left = int(dim)
    while left > 0:
        k = int(rng.integers(1, min(max_mult, left) + 1))
        n = int(rng.integers(1, left // k + 1))
        blocks.append((n, k))
        left -= n * k
    return RepAlgebra(tuple(blocks))


def amplified_algebra(rng, dim):
    """An algebra with at least one block of multiplicity >= 2 (dim >= 2)."""
    for _ in range(RESAMPLE_LIMIT):
        alg = random_algebra(rng, dim)
        if any(k >= 2 for _, k in alg.blocks):
            return alg
    n = dim // 2
    rest = dim - 2 * n
    return RepAlgebra(((n, 2),) + (((rest, 1),) if rest else ()))


def random_element(rng, alg):
    return alg.embed([gaussian(rng, n, n) for n, _ in alg.blocks])


def random_quotient_in(rng, alg):
    parts = [random_quotient(rng, n) for n, _ in alg.blocks]
    return Quotient(alg.embed([p.A for p in parts]), alg.embed([p.B for p in parts]))


def random_positive_quotient_in(rng, alg):
    parts = [random_positive_quotient(rng, n) for n, _ in alg.blocks]
    t = Quotient(alg.embed([p.A for p, _ in parts]), alg.embed([p.B for p, _ in parts]))
    return t, alg.embed([w for _, w in parts])


def random_homomorphism(rng, source, max_dim=None, max_mult=2):
    """Unital homomorphism out of `source` with one or two target blocks."""
    max_dim = 2 * source.dim if max_dim is None else int(max_dim)
    sizes = np.array([n for n, _ in source.blocks])

    for _ in range(RESAMPLE_LIMIT):
        count = int(rng.integers(1, 3))
        rows, blocks = [], []
        for _ in range(count):
            row = rng.integers(0, max_mult + 1, size=len(sizes))
            if not row.any():
                row[int(rng.integers(0, len(sizes)))] = 1
            rows.append(row)
            blocks.append((int(row @ sizes), int(rng.integers(1, 3))))
        if sum(m * k for m, k in blocks) <= max_dim:
            break
    else:
        rows = [np.ones(len(sizes), dtype=int)]
        blocks = [(int(sizes.sum()), 1)]

    target = RepAlgebra(tuple(blocks))
    conj = tuple(random_unitary(rng, m) for m, _ in blocks)
    return Homomorphism(source, target, np.array(rows, dtype=int), conj)
