import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from maffkit.errors import DimensionMismatch, NotInjective, NotPsd, NullspaceViolation, OutsideDomain, RangesDiffer
from maffkit.generators import gaussian, random_invertible, random_projection, random_quotient, rerepresent
from maffkit.graphoracle import graph_distance, graph_from_quotient, graph_op
from maffkit.numkernel import norm2
from maffkit.quotient import (
    Quotient,
    canonicalize,
    characteristic_projection,
    closed_decomposition,
    domain_projection,
    extension_witness,
    kernel_projection,
    quotient_adjoint,
    quotient_apply,
    quotient_equals,
    quotient_extends,
    quotient_inverse,
    quotient_kaufman,
    quotient_new,
    quotient_product,
    quotient_right_mul,
    quotient_sum,
    quotient_witness,
    recompose,
    restrict,
    total,
    trivial,
)

I2 = np.eye(2, dtype=complex)
E1 = np.diag([1.0, 0.0]).astype(complex)
E2 = np.diag([0.0, 1.0]).astype(complex)
A0 = np.array([[1, 2], [3j, -1]], dtype=complex)


def q(a, b):
    return Quotient(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def test_quotient_new_validates(tol):
    t = quotient_new(A0, I2, tol)
    assert t.n == 2
    with pytest.raises(NullspaceViolation):
        quotient_new(I2, E1, tol)
    with pytest.raises(DimensionMismatch):
        quotient_new(np.eye(2), np.eye(3), tol)
    assert trivial(3).n == 3


def test_canonicalize_examples(tol):
    c = canonicalize(total(A0), tol)
    assert_allclose(c.M, A0, atol=1e-12)
    assert_allclose(c.E, I2, atol=1e-12)

    c = canonicalize(q(E1, 2 * E1), tol)
    assert_allclose(c.M, 0.5 * E1, atol=1e-12)
    assert_allclose(c.E, E1, atol=1e-12)

    c = canonicalize(trivial(2), tol)
    assert norm2(c.M) == 0.0
    assert norm2(c.E) == 0.0


def test_apply_examples(tol):
    assert_allclose(quotient_apply(q(2 * E1, E1), [1, 0], tol), [2, 0], atol=1e-12)
    x = np.array([1.0, -2.0j])
    assert_allclose(quotient_apply(total(A0), x, tol), A0 @ x, atol=1e-12)
    with pytest.raises(OutsideDomain):
        quotient_apply(trivial(2), [1, 0], tol)


def test_sum_examples(tol):
    b = np.array([[0, 1], [1, 1]], dtype=complex)
    assert quotient_equals(quotient_sum(total(A0), total(b), tol), total(A0 + b), tol)

    s = quotient_sum(total(A0), trivial(2), tol)
    assert quotient_equals(s, trivial(2), tol)

    s = quotient_sum(q(E1, E1), q(E2, E2), tol)
    assert norm2(domain_projection(s, tol)) < 1e-12


def test_product_examples(tol):
    b = np.array([[0, 1], [1, 1]], dtype=complex)
    assert quotient_equals(quotient_product(total(A0), total(I2), tol), total(A0), tol)
    assert quotient_equals(quotient_product(total(A0), total(b), tol), total(A0 @ b), tol)


def test_product_with_partial_domain_matches_oracle(tol):
    # T1 defined on span e1, T2 the nilpotent shift e2 -> e1
    t1 = q(3 * E1, E1)
    t2 = total(np.array([[0, 1], [0, 0]]))
    p = quotient_product(t1, t2, tol)
    e = domain_projection(p, tol)
    assert norm2(e @ np.array([0, 1]) - np.array([0, 1])) < 1e-12
    g = graph_op("product", graph_from_quotient(t1, tol), graph_from_quotient(t2, tol), tol)
    assert graph_distance(graph_from_quotient(p, tol), g) < 1e-7


def test_right_mul_examples(tol):
    t = q(2 * E1, E1)
    assert_allclose(quotient_right_mul(t, E1, tol), 2 * E1, atol=1e-12)
    assert_allclose(quotient_right_mul(t, 3 * E1, tol), 6 * E1, atol=1e-12)
    assert norm2(quotient_right_mul(t, np.zeros((2, 2)), tol)) == 0.0


def test_kaufman_examples(tol):
    tdag, n_t = quotient_kaufman(q(2 * E1, I2), tol)
    assert_allclose(n_t, E2, atol=1e-12)
    assert_allclose(quotient_apply(tdag, [2, 0], tol), [1, 0], atol=1e-12)

    tdag, _ = quotient_kaufman(total(I2), tol)
    assert quotient_equals(tdag, total(I2), tol)

    tdag, _ = quotient_kaufman(total(E1), tol)
    assert quotient_equals(tdag, q(E1, E1), tol)
    assert_allclose(kernel_projection(total(E1), tol), E2, atol=1e-12)


def test_adjoint_examples(tol):
    assert quotient_equals(quotient_adjoint(total(A0), tol), total(A0.conj().T), tol)
    assert quotient_equals(quotient_adjoint(trivial(2), tol), total(np.zeros((2, 2))), tol)
    assert quotient_equals(quotient_adjoint(q(2 * E1, E1), tol), total(2 * E1), tol)


def test_equals_examples(rng, tol):
    t = random_quotient(rng, 4)
    moved, _ = rerepresent(rng, t)
    assert quotient_equals(t, moved, tol)
    assert not quotient_equals(total(I2), total(np.zeros((2, 2))), tol)
    assert quotient_equals(q(E1, 2 * E1), q(2 * E1, 4 * E1), tol)


def test_extends_examples(rng, tol):
    t = random_quotient(rng, 3)
    assert quotient_extends(t, t, tol)
    assert quotient_extends(trivial(3), t, tol)

    small = restrict(total(A0), E1, tol)
    assert quotient_extends(small, total(A0), tol)
    assert not quotient_extends(total(A0), small, tol)

    c = extension_witness(small, total(A0), tol)
    assert norm2(A0 @ c - small.A) < 1e-10
    assert norm2(c - small.B) < 1e-10


def test_characteristic_projection_examples(tol):
    z = np.zeros((2, 2))
    assert_allclose(characteristic_projection(total(z), tol), np.block([[I2, z], [z, z]]), atol=1e-12)
    assert_allclose(characteristic_projection(total(I2), tol), 0.5 * np.block([[I2, I2], [I2, I2]]), atol=1e-12)
    assert norm2(characteristic_projection(trivial(2), tol)) == 0.0


def test_closed_decomposition(tol):
    p, a, e = closed_decomposition(total(A0), tol)
    assert_allclose(p, I2)
    assert_allclose(a, A0, atol=1e-12)
    assert_allclose(e, I2, atol=1e-12)

    t = q(np.array([[1, 0], [2, 0]]), E1)
    p, a, e = closed_decomposition(t, tol, p=np.diag([1.0, 2.0]))
    assert quotient_equals(recompose(p, a, e, tol), t, tol)

    with pytest.raises(NotPsd):
        closed_decomposition(t, tol, p=np.diag([1.0, -1.0]))


def test_inverse_examples(tol):
    assert quotient_equals(quotient_inverse(total(I2), tol), total(I2), tol)
    inv = quotient_inverse(q(2 * E1, E1), tol)
    assert_allclose(quotient_apply(inv, [2, 0], tol), [1, 0], atol=1e-12)
    with pytest.raises(NotInjective):
        quotient_inverse(total(E1), tol)


def test_quotient_witness(rng, tol):
    t = random_quotient(rng, 5)
    moved, _ = rerepresent(rng, t)
    w = quotient_witness(moved, t, tol=tol)
    assert norm2(t.A @ w.C @ w.P - moved.A @ w.P) < 1e-8
    assert norm2(t.B @ w.C @ w.P - moved.B @ w.P) < 1e-8
    assert norm2(moved.A @ w.C @ w.Q - t.A @ w.Q) < 1e-8
    with pytest.raises(RangesDiffer):
        quotient_witness(total(I2), total(2 * I2), tol=tol)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 6))
def test_operations_match_graph_oracle(seed, n):
    rng = np.random.default_rng(seed)
    t1 = random_quotient(rng, n)
    t2 = random_quotient(rng, n)
    g1 = graph_from_quotient(t1)
    g2 = graph_from_quotient(t2)

    assert graph_distance(graph_from_quotient(quotient_sum(t1, t2)), graph_op("sum", g1, g2)) < 1e-7
    assert graph_distance(graph_from_quotient(quotient_product(t1, t2)), graph_op("product", g1, g2)) < 1e-7
    assert graph_distance(graph_from_quotient(quotient_kaufman(t1)[0]), graph_op("kaufman", g1)) < 1e-7
    assert graph_distance(graph_from_quotient(quotient_adjoint(t1)), graph_op("adjoint", g1)) < 1e-7


def test_kaufman_identities(rng, tol):
    for n in range(2, 7):
        t = random_quotient(rng, n)
        tdag, n_t = quotient_kaufman(t, tol)
        c = canonicalize(t, tol)
        d = canonicalize(tdag, tol)
        eye = np.eye(n)
        # T-dagger T = I - N(T) on dom(T), T T-dagger = id on ran(T)
        assert norm2(d.M @ c.M @ c.E - (eye - n_t) @ c.E) < 1e-8
        ran = c.M @ c.E
        assert norm2(c.M @ d.M @ ran - ran) < 1e-8


def test_invertible_rerepresentation_keeps_domain(rng, tol):
    t = random_quotient(rng, 4)
    c = random_invertible(rng, 4)
    moved = Quotient(t.A @ c, t.B @ c)
    assert norm2(domain_projection(moved, tol) - domain_projection(t, tol)) < 1e-9


def test_operations_on_zero_operators(rng, tol):
    for n in (2, 3, 5):
        zero = Quotient(np.zeros((n, n), dtype=complex), random_invertible(rng, n))
        tdag, n_t = quotient_kaufman(zero, tol)
        assert_allclose(n_t, np.eye(n), atol=1e-10)
        assert norm2(characteristic_projection(tdag, tol)) < 1e-12
        assert graph_distance(graph_from_quotient(tdag, tol), graph_from_quotient(trivial(n), tol)) < 1e-12

        t = random_quotient(rng, n)
        assert quotient_equals(quotient_sum(zero, t, tol), t, tol)
        on_dom = Quotient(np.zeros((n, n), dtype=complex), t.B)
        assert quotient_equals(quotient_product(zero, t, tol), on_dom, tol)
        assert quotient_equals(quotient_product(t, zero, tol), total(np.zeros((n, n))), tol)

        # T + (-T) in another representation cancels only up to roundoff
        moved, _ = rerepresent(rng, t)
        cancel = quotient_sum(t, Quotient(-moved.A, moved.B), tol)
        assert quotient_equals(cancel, on_dom, tol)
        assert norm2(characteristic_projection(quotient_kaufman(cancel, tol)[0], tol)) < 1e-12


def test_extension_order_on_restriction_chains(rng, tol):
    for n in (3, 4, 5):
        t = total(gaussian(rng, n, n))
        mid = restrict(t, random_projection(rng, n, rank=n - 1), tol)
        low = restrict(mid, mid.B @ random_projection(rng, n, rank=n - 2), tol)

        assert quotient_extends(low, mid, tol)
        assert quotient_extends(mid, t, tol)
        assert quotient_extends(low, t, tol)
        assert not quotient_extends(t, mid, tol)
        assert not quotient_extends(mid, low, tol)

        moved, _ = rerepresent(rng, mid)
        assert quotient_extends(mid, moved, tol)
        assert quotient_extends(moved, mid, tol)
        assert quotient_equals(mid, moved, tol)
