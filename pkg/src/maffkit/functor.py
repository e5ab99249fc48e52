"""Represented finite-dimensional algebras and unital *-homomorphisms between them.

An algebra with blocks [(n_1, k_1), ...] acts on C^N, N = sum n_i k_i, by
F (A_1 (x) I_k1 (+) A_2 (x) I_k2 (+) ...) F*, where F is a fixed unitary frame
(identity unless the algebra was built as an amplification). A homomorphism
sends the components (A_i) to U_j (+)_i (A_i (x) I_mult[j][i]) U_j* in target
block j.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag
from scipy.stats import unitary_group

from maffkit.errors import DimensionMismatch, NotAffiliated, NotInAlgebra
from maffkit.numkernel import DEFAULT_TOL, as_cmatrix, from_range, norm2, truncate
from maffkit.quotient import Quotient, characteristic_projection, quotient_new

log = logging.getLogger(__name__)


def haar_unitary(n, rng):
    if n == 1:
        return np.exp(2j * np.pi * rng.uniform()) * np.ones((1, 1))
    return unitary_group.rvs(n, random_state=rng).astype(complex)


def _offsets(sizes):
    return np.concatenate([[0], np.cumsum(sizes)]).astype(int)


@dataclass(frozen=True)
class RepAlgebra:
    blocks: tuple
    frame: np.ndarray = None

    def __post_init__(self):
        blocks = tuple((int(n), int(k)) for n, k in self.blocks)
        if not blocks:
            raise ValueError("RepAlgebra needs at least one block")
        for n, k in blocks:
            if n < 1 or k < 1:
                raise ValueError("Block sizes and multiplicities must be >= 1 (got %s)" % ((n, k),))
        object.__setattr__(self, "blocks", blocks)

        if self.frame is not None:
            f = as_cmatrix(self.frame, "frame")
            if f.shape != (self.dim, self.dim):
                raise DimensionMismatch("Frame has shape %s for an algebra on C^%d" % (f.shape, self.dim))
            object.__setattr__(self, "frame", f)

    @property
    def dim(self):
        return int(sum(n * k for n, k in self.blocks))

    @property
    def offsets(self):
        return _offsets([n * k for n, k in self.blocks])

    def _to_frame(self, x):
        if self.frame is None:
            return x
        return self.frame @ x @ self.frame.conj().T

    def _from_frame(self, x):
        if self.frame is None:
            return x
        return self.frame.conj().T @ x @ self.frame

    def _check_dim(self, x):
        if x.shape != (self.dim, self.dim):
            raise DimensionMismatch("Matrix of shape %s for an algebra on C^%d" % (x.shape, self.dim))

    def embed(self, comps):
        if len(comps) != len(self.blocks):
            raise DimensionMismatch("%d components for %d blocks" % (len(comps), len(self.blocks)))
        parts = []
        for a, (n, k) in zip(comps, self.blocks):
            a = np.asarray(a, dtype=complex)
            if a.shape != (n, n):
                raise DimensionMismatch("Component of shape %s for a block of size %d" % (a.shape, n))
            parts.append(np.kron(a, np.eye(k)))
        return self._to_frame(block_diag(*parts).astype(complex))

    def components(self, x):
        """Per-block partial traces over the multiplicity factors."""
        x = as_cmatrix(x)
        self._check_dim(x)
        std = self._from_frame(x)
        out = []
        for (n, k), o in zip(self.blocks, self.offsets):
            sub = std[o : o + n * k, o : o + n * k].reshape(n, k, n, k)
            out.append(np.einsum("akbk->ab", sub) / k)
        return out

    def project(self, x):
        return self.embed(self.components(x))

    def contains(self, x, tol=DEFAULT_TOL):
        x = as_cmatrix(x)
        self._check_dim(x)
        return norm2(x - self.project(x)) < tol.threshold(max(1.0, norm2(x)))

    def identity(self):
        return np.eye(self.dim, dtype=complex)

    def commutant_unitary(self, rng):
        parts = [np.kron(np.eye(n), haar_unitary(k, rng)) for n, k in self.blocks]
        return self._to_frame(block_diag(*parts).astype(complex))

    def amplify2(self):
        """M_2 of this algebra acting on C^N (+) C^N, blocks (2 n_i, k_i)."""
        big = self.dim
        w = np.zeros((2 * big, 2 * big))
        for (n, k), o in zip(self.blocks, self.offsets):
            for a in range(2):
                for r in range(n):
                    for s in range(k):
                        w[a * big + o + r * k + s, 2 * o + (a * n + r) * k + s] = 1.0
        frame = w.astype(complex)
        if self.frame is not None:
            frame = np.kron(np.eye(2), self.frame) @ frame
        return RepAlgebra(tuple((2 * n, k) for n, k in self.blocks), frame)


def algebra_membership(a, alg, tol=DEFAULT_TOL):
    return alg.contains(a, tol)


@dataclass(frozen=True)
class Homomorphism:
    source: RepAlgebra
    target: RepAlgebra
    mult: np.ndarray
    conjugators: tuple

    def __post_init__(self):
        mult = np.asarray(self.mult, dtype=int)
        if mult.shape != (len(self.target.blocks), len(self.source.blocks)):
            raise DimensionMismatch(
                "Multiplicity matrix has shape %s, expected %s"
                % (mult.shape, (len(self.target.blocks), len(self.source.blocks)))
            )
        if np.any(mult < 0):
            raise ValueError("Multiplicities must be nonnegative")

        sizes = np.array([n for n, _ in self.source.blocks])
        for j, (m, _) in enumerate(self.target.blocks):
            if int(mult[j] @ sizes) != m:
                raise ValueError("Target block %d has size %d but receives %d (not unital)" % (j, m, int(mult[j] @ sizes)))

        conj = tuple(as_cmatrix(u, "conjugator") for u in self.conjugators)
        if len(conj) != len(self.target.blocks):
            raise DimensionMismatch("%d conjugators for %d target blocks" % (len(conj), len(self.target.blocks)))
        for u, (m, _) in zip(conj, self.target.blocks):
            if u.shape != (m, m):
                raise DimensionMismatch("Conjugator of shape %s for a target block of size %d" % (u.shape, m))
            if norm2(u.conj().T @ u - np.eye(m)) > DEFAULT_TOL.threshold(1.0):
                raise ValueError("Conjugators must be unitary")

        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "conjugators", conj)

    def apply_components(self, comps):
        out = []
        for j, u in enumerate(self.conjugators):
            parts = [np.kron(a, np.eye(mu)) for a, mu in zip(comps, self.mult[j]) if mu > 0]
            out.append(u @ block_diag(*parts) @ u.conj().T)
        return out


def hom_apply(phi, a, tol=DEFAULT_TOL):
    a = as_cmatrix(a, "A")
    if not phi.source.contains(a, tol):
        raise NotInAlgebra("Operand is not a member of the source algebra")
    return phi.target.embed(phi.apply_components(phi.source.components(a)))


def _regroup(n_sizes, mu):
    # standard (+)_i A_i (x) I_mu[i]  ->  (a, p) layout of (+)_i [[A_i^ab]] (x) I_mu[i]
    m = int(np.dot(n_sizes, mu))
    p = np.zeros((2 * m, 2 * m))
    off = 0
    for n, k in zip(n_sizes, mu):
        for a in range(2):
            for r in range(n):
                for s in range(k):
                    p[a * m + off + r * k + s, 2 * off + (a * n + r) * k + s] = 1.0
        off += n * k
    return p


def hom_amplify2(phi):
    """Phi_(2): acts entrywise on 2x2 block matrices over the source."""
    n_sizes = [n for n, _ in phi.source.blocks]
    conj = []
    for j, u in enumerate(phi.conjugators):
        conj.append(np.kron(np.eye(2), u) @ _regroup(n_sizes, phi.mult[j]))
    return Homomorphism(phi.source.amplify2(), phi.target.amplify2(), phi.mult, tuple(conj))


def phi_aff(phi, t, tol=DEFAULT_TOL):
    """Phi_aff(A/B) = Phi(A)/Phi(B).

    ||Phi(X)|| <= ||X||, so directions of the images that are negligible against
    the source operands are roundoff from blocks Phi kills and are dropped.
    """
    a = truncate(hom_apply(phi, t.A, tol), tol, scale=norm2(t.A))
    b = truncate(hom_apply(phi, t.B, tol), tol, scale=norm2(t.B))
    return quotient_new(a, b, tol)


def phi_aff_s(phi, v, tol=DEFAULT_TOL):
    """Image of an affiliated subspace: ran(P_V) -> ran(Phi(P_V))."""
    p = v.projector()
    if not phi.source.contains(p, tol):
        raise NotAffiliated("Subspace is not affiliated with the source algebra")
    return from_range(hom_apply(phi, p, tol), tol, scale=1.0)


def identity_hom(alg):
    k = len(alg.blocks)
    return Homomorphism(alg, alg, np.eye(k, dtype=int), tuple(np.eye(n, dtype=complex) for n, _ in alg.blocks))


def amplification(alg, k):
    """X -> X (x) I_k."""
    frame = None if alg.frame is None else np.kron(alg.frame, np.eye(k))
    target = RepAlgebra(tuple((n, m * k) for n, m in alg.blocks), frame)
    return Homomorphism(
        alg,
        target,
        np.eye(len(alg.blocks), dtype=int),
        tuple(np.eye(n, dtype=complex) for n, _ in alg.blocks),
    )


def _concat_perm(n_sizes, mu, nu, mid_sizes):
    # standard (+)_i A_i (x) I_M[i], M = mu^T nu  ->  (+)_j (D_j (x) I_nu[j]), D_j = (+)_i A_i (x) I_mu[j][i]
    big_m = nu @ mu
    total = int(np.dot(n_sizes, big_m))
    q = _offsets([n * m for n, m in zip(n_sizes, big_m)])
    p = np.zeros((total, total))

    c = 0
    d = np.zeros(len(n_sizes), dtype=int)
    for j, m_j in enumerate(mid_sizes):
        v = int(nu[j])
        if v == 0:
            continue
        pj = 0
        for i, n in enumerate(n_sizes):
            u = int(mu[j][i])
            for r in range(n):
                for s in range(u):
                    for t in range(v):
                        row = c + (pj + r * u + s) * v + t
                        col = q[i] + r * big_m[i] + d[i] + s * v + t
                        p[row, col] = 1.0
            pj += n * u
            d[i] += u * v
        c += m_j * v
    return p


def compose(psi, phi):
    """psi o phi, with phi: A -> B and psi: B -> C."""
    if psi.source.blocks != phi.target.blocks:
        raise DimensionMismatch("Homomorphisms are not composable")
    n_sizes = [n for n, _ in phi.source.blocks]
    mid_sizes = [m for m, _ in phi.target.blocks]

    conj = []
    for l, v_l in enumerate(psi.conjugators):
        nu = psi.mult[l]
        d = block_diag(*[np.kron(u, np.eye(nu[j])) for j, u in enumerate(phi.conjugators) if nu[j] > 0])
        conj.append(v_l @ d @ _concat_perm(n_sizes, phi.mult, nu, mid_sizes))
    return Homomorphism(phi.source, psi.target, psi.mult @ phi.mult, tuple(conj))


def mvn_check(t, alg, samples, rng_seed, tol=DEFAULT_TOL):
    """True iff U T U* = T, as graphs, for `samples` Haar-random commutant unitaries U."""
    rng = np.random.default_rng(rng_seed)
    chi = characteristic_projection(t, tol)
    scale = max(1.0, norm2(chi))
    for i in range(int(samples)):
        u = alg.commutant_unitary(rng)
        moved = characteristic_projection(Quotient(u @ t.A, u @ t.B), tol)
        gap = norm2(moved - chi)
        if gap >= tol.threshold(scale):
            log.debug("Commutant sample %d moves the graph by %.3e", i, gap)
            return False
    return True
