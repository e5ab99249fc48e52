import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from maffkit.errors import DimensionMismatch, NotAffiliated, NotInAlgebra
from maffkit.functor import (
    Homomorphism,
    RepAlgebra,
    algebra_membership,
    amplification,
    compose,
    hom_amplify2,
    hom_apply,
    identity_hom,
    mvn_check,
    phi_aff,
    phi_aff_s,
)
from maffkit.generators import (
    amplified_algebra,
    gaussian,
    random_invertible,
    random_unitary,
    random_algebra,
    random_element,
    random_homomorphism,
    random_quotient_in,
)
from maffkit.numkernel import Subspace, from_range, norm2
from maffkit.quotient import (
    Quotient,
    characteristic_projection,
    quotient_adjoint,
    quotient_equals,
    quotient_kaufman,
    quotient_product,
    quotient_sum,
    total,
)


def _chi_gap(t1, t2):
    return norm2(characteristic_projection(t1) - characteristic_projection(t2))


def test_algebra_validation():
    with pytest.raises(ValueError):
        RepAlgebra(())
    with pytest.raises(ValueError):
        RepAlgebra(((0, 1),))
    with pytest.raises(DimensionMismatch):
        RepAlgebra(((2, 1),), frame=np.eye(3))


def test_embed_and_components(rng):
    alg = RepAlgebra(((2, 1), (1, 3)))
    assert alg.dim == 5
    comps = [gaussian(rng, 2, 2), gaussian(rng, 1, 1)]
    x = alg.embed(comps)
    assert_allclose(x[2:, 2:], comps[1][0, 0] * np.eye(3))
    for got, want in zip(alg.components(x), comps):
        assert_allclose(got, want, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        alg.embed(comps[:1])


def test_membership_examples(rng, tol):
    alg = RepAlgebra(((2, 2),))
    assert algebra_membership(np.eye(4), alg, tol)
    assert algebra_membership(np.kron(gaussian(rng, 2, 2), np.eye(2)), alg, tol)
    assert not algebra_membership(gaussian(rng, 4, 4), alg, tol)


def test_commutant_unitary_commutes(rng, tol):
    alg = amplified_algebra(rng, 6)
    u = alg.commutant_unitary(rng)
    assert norm2(u.conj().T @ u - np.eye(alg.dim)) < 1e-10
    x = random_element(rng, alg)
    assert norm2(u @ x - x @ u) < 1e-10


def test_amplify2_holds_block_matrices(rng, tol):
    alg = RepAlgebra(((2, 1), (1, 2)))
    big = alg.amplify2()
    assert big.blocks == ((4, 1), (2, 2))
    parts = [random_element(rng, alg) for _ in range(4)]
    x = np.block([[parts[0], parts[1]], [parts[2], parts[3]]])
    assert big.contains(x, tol)
    assert not big.contains(gaussian(rng, 8, 8), tol)


def test_homomorphism_validation():
    src = RepAlgebra(((1, 1), (1, 1)))
    tgt = RepAlgebra(((2, 1),))
    with pytest.raises(ValueError):
        Homomorphism(src, tgt, np.array([[1, 0]]), (np.eye(2),))
    with pytest.raises(ValueError):
        Homomorphism(src, tgt, np.array([[1, 1]]), (2 * np.eye(2),))
    with pytest.raises(DimensionMismatch):
        Homomorphism(src, tgt, np.array([[1], [1]]), (np.eye(2),))


def test_identity_and_amplification(rng, tol):
    alg = RepAlgebra(((2, 1), (1, 1)))
    x = random_element(rng, alg)
    assert_allclose(hom_apply(identity_hom(alg), x, tol), x, atol=1e-12)

    scalar = RepAlgebra(((1, 1),))
    amp = amplification(scalar, 2)
    assert_allclose(hom_apply(amp, np.array([[3 - 1j]]), tol), (3 - 1j) * np.eye(2))

    with pytest.raises(NotInAlgebra):
        hom_apply(identity_hom(alg), gaussian(rng, 3, 3), tol)


def test_amplified_identity_is_identity(rng, tol):
    alg = RepAlgebra(((2, 1), (1, 2)))
    big = alg.amplify2()
    x = big.embed([gaussian(rng, n, n) for n, _ in big.blocks])
    assert_allclose(hom_apply(hom_amplify2(identity_hom(alg)), x, tol), x, atol=1e-10)


def test_phi_aff_of_identity(rng, tol):
    alg = random_algebra(rng, 4)
    t = random_quotient_in(rng, alg)
    assert quotient_equals(phi_aff(identity_hom(alg), t, tol), t, tol)


def test_phi_aff_s_examples(tol):
    alg = RepAlgebra(((2, 1),))
    amp = amplification(alg, 2)
    assert phi_aff_s(amp, Subspace.zero(2), tol).dim == 0
    assert phi_aff_s(amp, Subspace.full(2), tol).dim == 4
    e1 = from_range(np.array([[1.0], [0.0]]), tol)
    img = phi_aff_s(amp, e1, tol)
    assert_allclose(img.projector(), np.diag([1, 1, 0, 0]), atol=1e-12)

    split = RepAlgebra(((1, 1), (1, 1)))
    with pytest.raises(NotAffiliated):
        phi_aff_s(identity_hom(split), from_range(np.array([[1.0], [1.0]]), tol), tol)


def test_mvn_examples(rng, tol):
    alg = RepAlgebra(((2, 2),))
    t = random_quotient_in(rng, alg)
    assert mvn_check(t, alg, 20, 3, tol)

    full = RepAlgebra(((3, 1),))
    assert mvn_check(Quotient(gaussian(rng, 3, 3), np.eye(3, dtype=complex)), full, 5, 3, tol)

    bent = total(gaussian(rng, 4, 4))
    assert not mvn_check(bent, alg, 20, 3, tol)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 5))
def test_phi_aff_preserves_operations(seed, dim):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng, dim)
    phi = random_homomorphism(rng, alg)
    t1 = random_quotient_in(rng, alg)
    t2 = random_quotient_in(rng, alg)

    assert _chi_gap(phi_aff(phi, quotient_sum(t1, t2)), quotient_sum(phi_aff(phi, t1), phi_aff(phi, t2))) < 1e-7
    assert _chi_gap(phi_aff(phi, quotient_product(t1, t2)), quotient_product(phi_aff(phi, t1), phi_aff(phi, t2))) < 1e-7
    assert _chi_gap(phi_aff(phi, quotient_kaufman(t1)[0]), quotient_kaufman(phi_aff(phi, t1))[0]) < 1e-7
    assert _chi_gap(phi_aff(phi, quotient_adjoint(t1)), quotient_adjoint(phi_aff(phi, t1))) < 1e-7


def test_characteristic_projection_intertwines(rng, tol):
    alg = random_algebra(rng, 4)
    phi = random_homomorphism(rng, alg)
    t = random_quotient_in(rng, alg)
    left = characteristic_projection(phi_aff(phi, t, tol), tol)
    right = hom_apply(hom_amplify2(phi), characteristic_projection(t, tol), tol)
    assert norm2(left - right) < 1e-7


def test_compose_matches_sequential_application(rng, tol):
    alg = random_algebra(rng, 3)
    phi = random_homomorphism(rng, alg)
    psi = random_homomorphism(rng, phi.target, max_dim=3 * phi.target.dim)
    x = random_element(rng, alg)
    both = compose(psi, phi)
    assert_allclose(hom_apply(both, x, tol), hom_apply(psi, hom_apply(phi, x, tol), tol), atol=1e-9)
    with pytest.raises(DimensionMismatch):
        compose(phi, identity_hom(RepAlgebra(((alg.dim + 1, 1),))))


def test_phi_aff_drops_blocks_it_kills(rng, tol):
    alg = RepAlgebra(((2, 1), (1, 1)))
    # the (1, 1) block is sent nowhere
    phi = Homomorphism(alg, RepAlgebra(((2, 1),)), np.array([[1, 0]]), (random_unitary(rng, 2),))
    z = np.zeros((2, 2))
    t1 = Quotient(alg.embed([z, [[3.0]]]), alg.embed([random_invertible(rng, 2), [[1.0]]]))
    t2 = Quotient(alg.embed([z, [[-3.0]]]), alg.embed([random_invertible(rng, 2), [[2.0]]]))

    image = phi_aff(phi, quotient_sum(t1, t2, tol), tol)
    assert quotient_equals(image, total(z), tol)
    assert _chi_gap(image, quotient_sum(phi_aff(phi, t1, tol), phi_aff(phi, t2, tol), tol)) < 1e-7
    assert _chi_gap(phi_aff(phi, quotient_product(t1, t2, tol), tol), total(z)) < 1e-7

    tdag = quotient_kaufman(quotient_sum(t1, t2, tol), tol)[0]
    assert norm2(characteristic_projection(phi_aff(phi, tdag, tol), tol)) < 1e-12
    assert norm2(characteristic_projection(quotient_kaufman(image, tol)[0], tol)) < 1e-12


def test_characteristic_projection_commutes_with_amplified_commutant(rng, tol):
    alg = amplified_algebra(rng, 4)
    t = random_quotient_in(rng, alg)
    chi = characteristic_projection(t, tol)
    big = alg.amplify2()
    assert big.contains(chi, tol)
    for _ in range(5):
        u = big.commutant_unitary(rng)
        assert norm2(u @ chi - chi @ u) < 1e-9
