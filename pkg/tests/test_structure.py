import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import clifspin.structure as structure
from clifspin.core import Signature, cayley_table
from clifspin.errors import CapExceeded, DegenerateSignature, MissingGrading, VerificationFailed
from clifspin.structure import (
    AlgebraClass,
    AlgebraMorphism,
    FiniteAlgebra,
    classify,
    classify_complex,
    clifford_as_algebra,
    clifford_class_table,
    complexify,
    direct_sum,
    direct_sum_iso,
    even_subalgebra_morphism,
    faithful_matrix_rep,
    graded_tensor,
    matiso_morphism,
    matrix_algebra,
    matrix_rank,
    periodicity_morphism,
    quat_mul,
    rescaling_morphism,
    tensor,
    tensor_class,
)
from oracles import hamilton

# reference rows, n = 0..8
ROW_0N = ["R", "C", "H", "H+H", "H(2)", "C(4)", "R(8)", "R(8)+R(8)", "R(16)"]
ROW_N0 = ["R", "R+R", "R(2)", "C(2)", "H(2)", "H(2)+H(2)", "H(4)", "C(8)", "R(16)"]
ROW_C = ["C", "2C", "C(2)", "2C(2)", "C(4)", "2C(4)", "C(8)", "2C(8)", "C(16)"]

REAL_DIM = {"R": 1, "C": 2, "H": 4}


def real_dimension(k: AlgebraClass) -> int:
    return k.summands * k.size ** 2 * REAL_DIM[k.field]


def oracle_constants(alg: FiniteAlgebra) -> np.ndarray:
    c = np.zeros((alg.dim,) * 3, dtype=alg.coeff.dtype)
    for i, j in itertools.product(range(alg.dim), repeat=2):
        c[i, j, alg.index[i, j]] += alg.coeff[i, j]
    return c


# ---------------------------------------------------------------------------
# finite algebras


def test_clifford_algebra_small_cases():
    c = clifford_as_algebra(Signature(0, 1))
    assert c.dim == 2 and c.multiply([0, 1], [0, 1]).tolist() == [-1, 0]
    r = clifford_as_algebra(Signature(1, 0))
    plus, minus = np.array([0.5, 0.5]), np.array([0.5, -0.5])
    assert np.array_equal(r.multiply(plus, plus), plus)
    assert np.array_equal(r.multiply(minus, minus), minus)
    assert np.array_equal(r.multiply(plus, minus), [0, 0])
    assert np.array_equal(plus + minus, r.unit)
    assert clifford_as_algebra(Signature(0, 0, 0)).dim == 1
    with pytest.raises(CapExceeded):
        clifford_as_algebra(Signature(0, 11))


def test_clifford_algebra_is_graded_and_integral():
    alg = clifford_as_algebra(Signature(1, 2))
    assert alg.integral and alg.grading == (0, 1, 1, 0, 1, 0, 0, 1)
    assert np.array_equal(alg.coeff, cayley_table(Signature(1, 2)))


def test_structure_constants_match_loop():
    alg = tensor(matrix_algebra(1, "H"), clifford_as_algebra(Signature(1, 1)))
    assert np.array_equal(alg.structure_constants(), oracle_constants(alg))


def test_matrix_algebra_matches_matrix_products():
    alg = matrix_algebra(2, "R")
    rng = np.random.default_rng(0)
    for _ in range(10):
        x, y = rng.standard_normal(4), rng.standard_normal(4)
        assert np.allclose(alg.multiply(x, y), (x.reshape(2, 2) @ y.reshape(2, 2)).ravel())


def test_quaternion_algebra_is_hamilton():
    h = matrix_algebra(1, "H")
    rng = np.random.default_rng(1)
    for _ in range(10):
        x, y = rng.standard_normal(4), rng.standard_normal(4)
        assert np.allclose(h.multiply(x, y), hamilton(x, y))
        assert np.allclose(quat_mul(x, y), hamilton(x, y))


def test_associativity_failure_is_detected():
    # a sign flip in the quaternion table breaks associativity
    h = matrix_algebra(1, "H")
    coeff = h.coeff.copy()
    coeff[1, 2] = -coeff[1, 2]
    with pytest.raises(VerificationFailed):
        FiniteAlgebra(h.labels, h.index, coeff, h.unit)
    with pytest.raises(VerificationFailed):
        FiniteAlgebra(h.labels, h.index, h.coeff, [0, 1, 0, 0])


def test_tensor_dimensions_and_unit():
    h = matrix_algebra(1, "H")
    hh = tensor(h, h)
    assert hh.dim == 16 and np.array_equal(hh.unit, np.kron(h.unit, h.unit))
    scalars = clifford_as_algebra(Signature(0))
    ha = tensor(h, scalars)
    assert np.array_equal(ha.coeff, h.coeff) and np.array_equal(ha.index, h.index)


def test_complex_tensor_idempotent():
    c = matrix_algebra(1, "C")
    cc = tensor(c, c)
    e = 0.5 * (np.eye(4)[0] + np.eye(4)[3])
    assert np.array_equal(cc.multiply(e, e), e)


def test_graded_tensor_signs():
    a = clifford_as_algebra(Signature(0, 1))
    b = clifford_as_algebra(Signature(0, 1))
    g = graded_tensor(a, b)
    # (1 x e)(e x 1) = -(e x e) and (e x 1)(1 x e) = +(e x e)
    one_e, e_one, e_e = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]
    assert np.array_equal(g.multiply(one_e, e_one), -e_e)
    assert np.array_equal(g.multiply(e_one, one_e), e_e)
    assert np.array_equal(g.multiply(np.eye(4)[0], e_e), e_e)
    assert g.grading == (0, 1, 1, 0)
    ungraded = tensor(a, b)
    assert np.array_equal(ungraded.multiply(one_e, e_one), e_e)
    with pytest.raises(MissingGrading):
        graded_tensor(a, matrix_algebra(1, "H"))


def test_direct_sum_rejects_mixed_scalars():
    with pytest.raises(ValueError):
        direct_sum(matrix_algebra(1, "C"), matrix_algebra(1, "C", scalars="C"))


# ---------------------------------------------------------------------------
# morphisms


@pytest.mark.parametrize("a,b", [((0, 1), (0, 1)), ((1, 0), (0, 1)), ((0, 0), (1, 2)),
                                 ((1, 1), (2, 0)), ((2, 1), (1, 2))])
def test_direct_sum_iso(a, b):
    mor = direct_sum_iso(Signature(*a), Signature(*b))
    n = sum(a) + sum(b)
    assert mor.rank() == 2 ** n
    assert mor.multiplicativity_residual() == 0 and mor.unit_residual() == 0


def test_direct_sum_with_trivial_is_identity():
    mor = direct_sum_iso(Signature(0, 0), Signature(1, 2))
    assert np.array_equal(mor.matrix, np.eye(8))


def test_direct_sum_iso_rejects_degenerate():
    with pytest.raises(DegenerateSignature):
        direct_sum_iso(Signature(0, 0, 1), Signature(0, 1))


def test_sign_bug_in_blade_table_is_caught(monkeypatch):
    real = structure.cayley_table

    def buggy(sig):
        table = np.array(real(sig))
        if sig.n >= 2:
            table[1, 2] = -table[1, 2]
        return table

    monkeypatch.setattr(structure, "cayley_table", buggy)
    with pytest.raises(VerificationFailed):
        direct_sum_iso(Signature(0, 1), Signature(0, 1))
    with pytest.raises(VerificationFailed):
        direct_sum_iso(Signature(1, 1), Signature(0, 1))


def test_non_multiplicative_map_is_rejected():
    c = clifford_as_algebra(Signature(0, 1))
    with pytest.raises(VerificationFailed):
        AlgebraMorphism(c, c, np.array([[1.0, 0], [0, 2]])).verify()
    with pytest.raises(VerificationFailed):
        AlgebraMorphism(c, c, np.array([[1.0, 0], [0, 0]])).verify()
    AlgebraMorphism(c, c, np.array([[1.0, 0], [0, -1]])).verify()


def test_periodicity_examples():
    a0 = periodicity_morphism("A", 0)
    assert a0.source.dim == 4 and a0.rank() == 4
    c00 = periodicity_morphism("C", 0, 0)
    assert c00.rank() == 4
    a2 = periodicity_morphism("A", 2)
    assert a2.rank() == 16 and a2.source.name == "Cl(0,4)"
    with pytest.raises(ValueError):
        periodicity_morphism("D", 1)
    with pytest.raises(ValueError):
        periodicity_morphism("C", 1)


@pytest.mark.parametrize("kind,params", [("A", (n,)) for n in range(5)] + [("B", (n,)) for n in range(5)]
                         + [("C", (p, q)) for p in range(4) for q in range(4) if p + q <= 4])
def test_periodicity_family(kind, params):
    mor = periodicity_morphism(kind, *params)
    assert mor.rank() == mor.source.dim == mor.target.dim


def test_matiso():
    cc = matiso_morphism("CC")
    e1, e2 = cc.apply([1, 0, 0, 0]), cc.apply([0, 0, 1, 0])
    t = cc.target
    assert np.allclose(t.multiply(e1, e1), e1) and np.allclose(t.multiply(e2, e2), e2)
    assert np.allclose(t.multiply(e1, e2), 0) and np.allclose(e1 + e2, t.unit)
    assert np.allclose(e1, [0.5, 0, 0, 0.5])
    assert matiso_morphism("CH").rank() == 8
    assert matiso_morphism("HH").rank() == 16
    with pytest.raises(ValueError):
        matiso_morphism("RR")


def test_even_subalgebra_examples():
    m = even_subalgebra_morphism(0, 1)
    assert np.flatnonzero(m.apply([0, 1])).tolist() == [3]
    m = even_subalgebra_morphism(0, 2)
    images = {tuple(np.flatnonzero(m.apply(v)).tolist()) for v in np.eye(4)}
    assert images == {(0,), (3,), (5,), (6,)}


@pytest.mark.parametrize("p,q", [(p, q) for p in range(7) for q in range(7) if p + q <= 6])
def test_even_subalgebra_family(p, q):
    assert even_subalgebra_morphism(p, q).rank() == 2 ** (p + q)


def test_complexification():
    a, b = complexify(Signature(0, 1)), complexify(Signature(1, 0))
    assert a.scalars == "C" and a.dim == 2
    mor = rescaling_morphism(Signature(0, 1), Signature(1, 0))
    assert mor.rank() == 2
    # both become C + C over C: the image of the idempotents of Cl(1,0)
    e = np.array([0.5, 0.5], dtype=complex)
    assert np.allclose(b.multiply(e, e), e)
    with pytest.raises(ValueError):
        rescaling_morphism(Signature(0, 1), Signature(1, 1))
    with pytest.raises(DegenerateSignature):
        complexify(Signature(0, 0, 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_all_complexifications_agree(n):
    target = Signature(0, n)
    for p in range(n + 1):
        mor = rescaling_morphism(Signature(p, n - p), target)
        assert mor.rank() == 2 ** n
        assert classify_complex(n).dimension == 2 ** n


# ---------------------------------------------------------------------------
# classification


def test_reference_rows():
    assert [str(classify(0, n)) for n in range(9)] == ROW_0N
    assert [str(classify(n, 0)) for n in range(9)] == ROW_N0
    assert [str(classify_complex(n)) for n in range(9)] == ROW_C
    assert clifford_class_table() == {"Cl_{0,n}": ROW_0N, "Cl_{n,0}": ROW_N0, "Cl(n,C)": ROW_C}


def test_classification_examples():
    assert str(classify(0, 3)) == "H+H"
    assert str(classify(6, 0)) == "H(4)"
    assert str(classify(0, 8)) == "R(16)"
    assert str(classify(1, 1)) == "R(2)"
    assert str(classify_complex(2)) == "C(2)"
    assert str(classify_complex(5)) == "2C(4)"
    assert str(classify_complex(0)) == "C"
    with pytest.raises(CapExceeded):
        classify(20, 13)
    with pytest.raises(ValueError):
        classify(-1, 2)


@given(st.integers(0, 16), st.integers(0, 16))
def test_dimension_identity(p, q):
    k = classify(p, q)
    assert real_dimension(k) == 2 ** (p + q) == k.dimension


@given(st.integers(0, 24))
def test_eight_periodicity(n):
    for a, b in [(classify(0, n), classify(0, n + 8)), (classify(n, 0), classify(n + 8, 0))]:
        assert (a.field, a.summands, 16 * a.size) == (b.field, b.summands, b.size)


def test_shift_symmetry():
    for p, q in itertools.product(range(11), repeat=2):
        if p + q <= 10:
            assert classify(p + 1, q) == classify(q + 1, p)


def test_mod_four_symmetry():
    for p, q in itertools.product(range(17), repeat=2):
        if (p - q) % 4 == 0 and p + q <= 16:
            assert classify(p, q) == classify(q, p)


def test_class_parsing_and_tensor_rules():
    for text in ROW_0N + ROW_N0:
        assert str(AlgebraClass.parse(text)) == text
    for text in ROW_C:
        assert str(AlgebraClass.parse(text, "C")) == text
    with pytest.raises(ValueError):
        AlgebraClass.parse("R(2)+C(2)")
    c, h = AlgebraClass("C", 1), AlgebraClass("H", 1)
    assert str(tensor_class(c, c)) == "C+C"
    assert str(tensor_class(c, h)) == "C(2)"
    assert str(tensor_class(h, h)) == "R(4)"
    assert str(tensor_class(AlgebraClass("R", 2), h)) == "H(2)"


# ---------------------------------------------------------------------------
# representations


def test_representation_examples():
    r01 = faithful_matrix_rep(0, 1)
    assert np.array_equal(r01.generators[0], [[0, -1], [1, 0]])
    r11 = faithful_matrix_rep(1, 1)
    assert r11.size == 2 and r11.relation_residual() == 0
    assert np.array_equal(r11.generators[0], [[1, 0], [0, -1]])
    assert np.array_equal(r11.generators[1], [[0, 1], [-1, 0]])
    r08 = faithful_matrix_rep(0, 8)
    assert r08.size == 16 and r08.rank() == 256
    with pytest.raises(CapExceeded):
        faithful_matrix_rep(5, 4)


@pytest.mark.parametrize("p,q", [(p, q) for p in range(9) for q in range(9) if p + q <= 8])
def test_faithful_representations(p, q):
    rep = faithful_matrix_rep(p, q)
    assert rep.relation_residual() == 0
    assert rep.size == classify(p, q).real_matrix_size
    assert rep.rank() == 2 ** (p + q)


def test_matrix_rank():
    assert matrix_rank(np.zeros((0, 0))) == 0
    assert matrix_rank(np.zeros((3, 3))) == 0
    assert matrix_rank(np.diag([1.0, 1e-12, 1])) == 2
