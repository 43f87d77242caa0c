import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifspin.core import (
    Multivector,
    Signature,
    embed_vector,
    from_text,
    grade_involution,
    inverse,
    is_scalar,
    norm,
    odd_part,
)
from clifspin.errors import (
    DegenerateSignature,
    IsotropicVector,
    NotInCliffordGroup,
    SignatureMismatch,
)
from clifspin.groups import (
    GroupKind,
    admissible_pair,
    degenerate_kernel_witness,
    group_element,
    is_in_clifford_group,
    is_pin,
    is_spin,
    pin_action,
    quaternion_to_spin3,
    random_pin,
    random_spin,
    random_unit_vector,
    reflection_matrix,
    rho_matrix,
    six_dim_counterexample,
    spin2_angle,
    spin3_to_quaternion,
    spin4_quaternions,
    spin4_split,
    twisted_action,
    twisted_adjoint,
)
from clifspin.core import quadratic_form
from oracles import hamilton, rotation2

E = Multivector.generator
M = Multivector.monomial

nondegenerate = st.builds(lambda p, q: Signature(p, q), st.integers(0, 3), st.integers(0, 2)).filter(
    lambda s: s.n >= 1)


def rotor2(theta):
    return Multivector(Signature(0, 2), [math.cos(theta), 0, 0, math.sin(theta)])


# ---------------------------------------------------------------------------
# twisted adjoint


@pytest.mark.parametrize("theta", [0.0, 0.3, math.pi / 4, 2.0, -1.1])
def test_twisted_adjoint_rotates_by_twice_the_angle(theta):
    v = np.array([0.7, -1.3])
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    expected = np.array([c * v[0] - s * v[1], c * v[1] + s * v[0]])
    assert np.allclose(twisted_adjoint(rotor2(theta), v), expected, atol=1e-12)


def test_twisted_adjoint_examples():
    sig = Signature(0, 3)
    v = np.array([1.0, 2.0, 3.0])
    assert np.array_equal(twisted_adjoint(Multivector.scalar(sig), v), v)
    e1 = E(sig, 1)
    assert np.array_equal(twisted_adjoint(e1, [1, 0, 0]), [-1, 0, 0])
    assert np.array_equal(twisted_adjoint(e1, [0, 1, 0]), [0, 1, 0])


def test_twisted_adjoint_rejects_non_members():
    sig = Signature(0, 2)
    with pytest.raises(NotInCliffordGroup):
        twisted_adjoint(from_text(sig, "1 + e1"), [1, 0])
    with pytest.raises(NotInCliffordGroup):
        twisted_adjoint(Multivector.zero(sig), [1, 0])
    with pytest.raises(DegenerateSignature):
        twisted_adjoint(Multivector.scalar(Signature(0, 0, 2)), [1, 0])


def test_rho_matrix_examples():
    sig = Signature(1, 2)
    assert np.array_equal(rho_matrix(Multivector.scalar(sig)), np.eye(3))
    x = random_pin(sig, np.random.default_rng(1), 3)
    assert np.allclose(rho_matrix(x), rho_matrix(-x), atol=1e-12)
    quarter = rotor2(math.pi / 4)
    assert np.allclose(rho_matrix(quarter), [[0, -1], [1, 0]], atol=1e-15)


def test_rho_preserves_the_form():
    rng = np.random.default_rng(5)
    for sig in [Signature(2, 2), Signature(1, 3), Signature(0, 4)]:
        x = random_pin(sig, rng, 4)
        m = rho_matrix(x)
        j = sig.metric()
        assert np.allclose(m.T @ j @ m, j, atol=1e-9)


# ---------------------------------------------------------------------------
# membership


def test_pin1_is_cyclic_of_order_four():
    sig = Signature(0, 1)
    one, e1 = Multivector.scalar(sig), E(sig, 1)
    elements = [one, -one, e1, -e1]
    assert all(is_pin(x) for x in elements)
    group = {one}
    frontier = [one]
    while frontier:
        x = frontier.pop()
        for g in elements:
            y = x * g
            if y not in group:
                group.add(y)
                frontier.append(y)
    assert len(group) == 4
    # e1 generates it
    assert e1 * e1 * e1 * e1 == one and e1 * e1 != one


@pytest.mark.parametrize("s", [0.0, 0.4, -1.3, 2.5])
def test_spin11_hyperbola(s):
    sig = Signature(1, 1)
    a, b = math.cosh(s), math.sinh(s)
    x = Multivector(sig, [a, 0, 0, b])
    assert is_spin(x)
    assert group_element(x).kind is GroupKind.SPIN


def test_spin11_off_hyperbola_is_not_pin():
    x = Multivector(Signature(1, 1), [2.0, 0, 0, 1.0])
    assert is_in_clifford_group(x) and not is_pin(x)
    assert group_element(x).kind is GroupKind.CLIFFORD


def test_six_dimensional_counterexample():
    x = six_dim_counterexample()
    nx = norm(x)
    assert is_scalar(nx) and abs(nx.coeffs[0] - 1) < 1e-15
    assert not is_in_clifford_group(x)
    image = x * E(x.sig, 1) * inverse(x)
    assert image.allclose(M(x.sig, 2, 3, 4, 5, 6), 1e-15)


def test_six_dimensional_counterexample_integer_form():
    # Y = 1 + I is X scaled by sqrt(2); everything is exact in integers
    sig = Signature(0, 6)
    y = Multivector.scalar(sig) + Multivector.blade(sig, 0b111111)
    assert norm(y) == Multivector.scalar(sig, 2)
    assert y * E(sig, 1) * grade_involution(y).conjugate().involute() == 2 * M(sig, 2, 3, 4, 5, 6)


def test_degenerate_witness():
    x = degenerate_kernel_witness()
    assert x == from_text(Signature(0, 0, 2), "1 + e1^e2")
    for v in np.eye(2):
        assert twisted_action(x, v) == embed_vector(x.sig, v)
    # not a multiple of 1
    assert x.coeffs[0b11] != 0
    with pytest.raises(DegenerateSignature):
        is_pin(x)
    bigger = degenerate_kernel_witness(4)
    for v in np.eye(4):
        assert twisted_action(bigger, v) == embed_vector(bigger.sig, v)
    with pytest.raises(ValueError):
        degenerate_kernel_witness(1)


def test_group_element_kinds():
    sig = Signature(0, 3)
    assert group_element(E(sig, 1)).kind is GroupKind.PIN
    assert group_element(M(sig, 1, 2)).kind is GroupKind.SPIN
    g = group_element(2 * E(sig, 1))
    assert g.kind is GroupKind.CLIFFORD and g.norm_sign == 1
    assert group_element(E(Signature(1, 0), 1)).norm_sign == -1
    with pytest.raises(NotInCliffordGroup):
        group_element(from_text(sig, "1 + e1"))


# ---------------------------------------------------------------------------
# reflections


def test_reflection_examples():
    sig = Signature(0, 3)
    assert np.array_equal(reflection_matrix(sig, [1, 0, 0]), np.diag([-1.0, 1, 1]))
    w = np.array([0.3, -1.0, 2.0])
    s = reflection_matrix(sig, w)
    assert np.allclose(s @ s, np.eye(3), atol=1e-15)
    assert np.array_equal(reflection_matrix(Signature(1, 1), [1, 0]), np.diag([-1.0, 1]))
    with pytest.raises(IsotropicVector):
        reflection_matrix(Signature(1, 1), [1, 1])


@given(nondegenerate, st.integers(0, 2 ** 32 - 1))
def test_vector_action_is_reflection(sig, seed):
    v = random_unit_vector(sig, np.random.default_rng(seed))
    assert abs(abs(quadratic_form(sig, v)) - 1) < 1e-12
    assert np.max(np.abs(rho_matrix(embed_vector(sig, v)) - reflection_matrix(sig, v))) < 1e-10


# ---------------------------------------------------------------------------
# group properties


@given(nondegenerate, st.integers(0, 2 ** 32 - 1))
def test_random_pin_elements_are_members(sig, seed):
    rng = np.random.default_rng(seed)
    x = random_pin(sig, rng)
    assert is_pin(x)
    nx = norm(x).coeffs[0]
    assert abs(abs(nx) - 1) < 1e-9
    y = random_spin(sig, rng)
    assert is_spin(y) and odd_part(y).max_abs() == 0


@given(nondegenerate, st.integers(0, 2 ** 32 - 1))
def test_norm_is_multiplicative(sig, seed):
    rng = np.random.default_rng(seed)
    x, y = random_pin(sig, rng), random_pin(sig, rng)
    assert (norm(x * y) - norm(x) * norm(y)).max_abs() < 1e-9
    assert (norm(grade_involution(x)) - norm(x)).max_abs() < 1e-9


@given(nondegenerate, st.integers(0, 2 ** 32 - 1))
def test_rho_is_a_homomorphism(sig, seed):
    rng = np.random.default_rng(seed)
    x, y = random_pin(sig, rng), random_pin(sig, rng)
    a, b = rho_matrix(x), rho_matrix(y)
    assert np.max(np.abs(rho_matrix(x * y) - a @ b)) <= 1e-9 * np.max(np.abs(a)) * np.max(np.abs(b))


@given(nondegenerate, st.integers(0, 2 ** 32 - 1), st.integers(0, 6))
def test_determinant_parity(sig, seed, k):
    x = random_pin(sig, np.random.default_rng(seed), k)
    assert (np.linalg.det(rho_matrix(x)) < 0) == (k % 2 == 1)


@given(nondegenerate, st.integers(0, 2 ** 32 - 1))
def test_two_formulas_for_the_pin_action(sig, seed):
    rng = np.random.default_rng(seed)
    x = random_pin(sig, rng)
    v = rng.standard_normal(sig.n)
    assert np.allclose(twisted_adjoint(x, v), pin_action(x, v), atol=1e-10 * (1 + np.abs(v).max()))


def test_kernel_is_plus_minus_one():
    rng = np.random.default_rng(11)
    for sig in [Signature(0, 2), Signature(2, 1), Signature(1, 3), Signature(0, 5)]:
        for _ in range(20):
            u = embed_vector(sig, random_unit_vector(sig, rng))
            x = u * u
            assert np.allclose(rho_matrix(x), np.eye(sig.n), atol=1e-12)
            assert x.allclose(Multivector.scalar(sig, x.coeffs[0]), 1e-12)
            assert abs(abs(x.coeffs[0]) - 1) < 1e-12


# ---------------------------------------------------------------------------
# low dimensions


def test_spin2_angle():
    assert spin2_angle(Multivector.scalar(Signature(0, 2))) == 0
    e12 = M(Signature(0, 2), 1, 2)
    assert spin2_angle(e12) == pytest.approx(math.pi / 2)
    assert np.allclose(rho_matrix(e12), rotation2(math.pi), atol=1e-15)
    minus = Multivector.scalar(Signature(0, 2), -1)
    assert spin2_angle(minus) == pytest.approx(math.pi)
    assert np.array_equal(rho_matrix(minus), np.eye(2))
    for theta in np.linspace(0, 2 * math.pi, 13)[:-1]:
        assert spin2_angle(rotor2(theta)) == pytest.approx(theta, abs=1e-12)
    with pytest.raises(SignatureMismatch):
        spin2_angle(Multivector.scalar(Signature(2, 0)))
    with pytest.raises(NotInCliffordGroup):
        spin2_angle(2 * Multivector.scalar(Signature(0, 2)))


def test_spin3_examples():
    sig = Signature(0, 3)
    assert spin3_to_quaternion(Multivector.scalar(sig)) == (1, 0, 0, 0)
    assert spin3_to_quaternion(M(sig, 2, 3)) == (0, 1, 0, 0)
    assert spin3_to_quaternion(M(sig, 3, 1)) == (0, 0, 1, 0)
    assert spin3_to_quaternion(M(sig, 1, 2)) == (0, 0, 0, 1)
    with pytest.raises(NotInCliffordGroup):
        spin3_to_quaternion(E(sig, 1))


def test_spin3_matches_quaternion_rotation():
    rng = np.random.default_rng(2)
    sig = Signature(0, 3)
    for _ in range(20):
        x = random_spin(sig, rng)
        q = np.array(spin3_to_quaternion(x))
        qbar = q * [1, -1, -1, -1]
        rot = np.column_stack([hamilton(hamilton(q, np.r_[0, e]), qbar)[1:] for e in np.eye(3)])
        assert np.allclose(rot, rho_matrix(x), atol=1e-12)
        assert quaternion_to_spin3(q).allclose(x, 1e-15)


def test_spin3_cyclic_permutation():
    x = quaternion_to_spin3([0.5, 0.5, 0.5, 0.5])
    assert np.allclose(rho_matrix(x), [[0, 0, 1], [1, 0, 0], [0, 1, 0]], atol=1e-15)


@given(st.integers(0, 2 ** 32 - 1))
def test_spin3_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    sig = Signature(0, 3)
    x, y = random_spin(sig, rng), random_spin(sig, rng)
    got = np.array(spin3_to_quaternion(x * y))
    assert np.allclose(got, hamilton(spin3_to_quaternion(x), spin3_to_quaternion(y)), atol=1e-10)


def test_spin4_examples():
    sig = Signature(0, 4)
    one = Multivector.scalar(sig)
    assert spin4_split(one) == (one, one)
    pseudo = Multivector.blade(sig, 0b1111)
    assert norm(pseudo) == one and is_spin(pseudo)
    assert spin4_split(pseudo) == (one, -one)
    u, v = spin4_quaternions(pseudo)
    assert np.array_equal(u, [1, 0, 0, 0]) and np.array_equal(v, [-1, 0, 0, 0])
    with pytest.raises(NotInCliffordGroup):
        spin4_split(E(sig, 1))


@given(st.integers(0, 2 ** 32 - 1))
def test_spin4_split_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    sig = Signature(0, 4)
    x, y = random_spin(sig, rng), random_spin(sig, rng)
    (a1, b1), (a2, b2), (a3, b3) = spin4_split(x), spin4_split(y), spin4_split(x * y)
    assert (a1 * a2 - a3).max_abs() < 1e-10 and (b1 * b2 - b3).max_abs() < 1e-10
    one = Multivector.scalar(sig)
    assert norm(a3).allclose(one, 1e-10) and norm(b3).allclose(one, 1e-10)


def test_spin4_basis_products():
    # I i = e4e3, I j = e4e1, I k = e4e2 with i = e1e2, j = e2e3, k = e3e1
    sig = Signature(0, 4)
    pseudo = Multivector.blade(sig, 0b1111)
    assert pseudo * M(sig, 1, 2) == M(sig, 4, 3)
    assert pseudo * M(sig, 2, 3) == M(sig, 4, 1)
    assert pseudo * M(sig, 3, 1) == M(sig, 4, 2)


# ---------------------------------------------------------------------------
# sampling helpers


def test_random_unit_vector_bounds():
    rng = np.random.default_rng(0)
    sig = Signature(2, 3)
    for _ in range(200):
        v = random_unit_vector(sig, rng)
        assert abs(abs(quadratic_form(sig, v)) - 1) < 1e-12
        assert np.dot(v, v) <= 4 + 1e-12
    with pytest.raises(ValueError):
        random_unit_vector(Signature(0), rng)
    with pytest.raises(ValueError):
        random_spin(sig, rng, 3)


def test_admissible_pair():
    assert admissible_pair(Signature(1, 1)) is None
    assert admissible_pair(Signature(1, 2)) == (2, 3)
    assert admissible_pair(Signature(2, 2)) == (1, 2)
    assert admissible_pair(Signature(0, 1)) is None


def test_exhaustive_signed_blades_in_pin():
    # every signed blade is in Pin; rho of +-b agree
    for sig in [Signature(1, 2), Signature(0, 3)]:
        for bits, sign in itertools.product(range(sig.dim), (1, -1)):
            b = Multivector.blade(sig, bits, sign)
            assert is_pin(b)
            assert np.array_equal(rho_matrix(b), rho_matrix(-b))
