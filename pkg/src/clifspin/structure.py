"""Finite-dimensional algebras by structure constants, explicit isomorphisms,
and the matrix-algebra classification of real and complex Clifford algebras.

Every algebra here has a *monomial* basis: the product of two basis elements
is a scalar multiple (possibly zero) of a single basis element.  Clifford
algebras, matrix algebras over R, C and H in their elementary-matrix bases,
and their tensor products and direct sums all have this shape, which keeps
the tables at ``dim x dim`` instead of ``dim**3``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import MAX_GENERATORS, Signature, blade_name, cayley_table
from .errors import CapExceeded, DegenerateSignature, MissingGrading, VerificationFailed

ALGEBRA_CAP = 10
RANK_RTOL = 1e-8
FLOAT_ATOL = 1e-10

# Hamilton's table on the basis (1, i, j, k): QUAT[u][v] = (sign, w) with u v = sign * w
QUAT = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def quat_mul(x, y) -> np.ndarray:
    x = np.asarray(x)
    y = np.asarray(y)
    out = np.zeros(4, dtype=np.result_type(x, y))
    for u in range(4):
        for v in range(4):
            sign, w = QUAT[u][v]
            out[w] += sign * x[u] * y[v]
    return out


def quat_conj(x) -> np.ndarray:
    x = np.asarray(x)
    return np.array([x[0], -x[1], -x[2], -x[3]])


def quat_left_matrix(h) -> np.ndarray:
    """Real 4x4 matrix of ``x -> h x`` on the basis (1, i, j, k)."""
    return np.column_stack([quat_mul(h, e) for e in np.eye(4)])


class FiniteAlgebra:
    """Algebra with basis ``b_0..b_{d-1}`` and ``b_i b_j = coeff[i, j] * b_{index[i, j]}``.

    ``unit`` is the coordinate vector of the identity, ``grading`` an optional
    parity per basis element, and ``scalars`` is ``"R"`` or ``"C"``.  The unit
    law and associativity on all basis triples are verified on construction
    unless ``verify=False``.
    """

    def __init__(self, labels: Sequence[str], index, coeff, unit, grading=None,
                 scalars: str = "R", name: str = "", verify: bool = True):
        self.labels = tuple(labels)
        self.index = np.asarray(index, dtype=np.int64)
        dtype = complex if scalars == "C" else None
        self.coeff = np.asarray(coeff, dtype=dtype)
        if scalars == "R" and np.iscomplexobj(self.coeff):
            raise ValueError("complex structure constants need scalars='C'")
        self.unit = np.asarray(unit, dtype=self.coeff.dtype if scalars == "C" else float)
        self.grading = None if grading is None else tuple(int(g) % 2 for g in grading)
        self.scalars = scalars
        self.name = name
        d = len(self.labels)
        if self.index.shape != (d, d) or self.coeff.shape != (d, d) or self.unit.shape != (d,):
            raise ValueError("inconsistent table shapes")
        if self.grading is not None and len(self.grading) != d:
            raise ValueError("grading length differs from dimension")
        self.index.flags.writeable = False
        self.coeff.flags.writeable = False
        self._row_perm = all(len(set(row)) == d for row in self.index.tolist())
        if verify:
            self.check_unit()
            self.check_associative()

    def __repr__(self):
        return f"FiniteAlgebra({self.name or '?'}, dim={self.dim}, scalars={self.scalars})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def integral(self) -> bool:
        c = self.coeff
        return not np.iscomplexobj(c) and bool(np.all(c == np.round(c)))

    @property
    def dtype(self):
        return complex if self.scalars == "C" else float

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=self.dtype)
        v[i] = 1
        return v

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x)
        y = np.asarray(y)
        out = np.zeros(self.dim, dtype=np.result_type(x, y, self.coeff, float))
        for a in np.flatnonzero(x):
            contrib = x[a] * self.coeff[a] * y
            if self._row_perm:
                out[self.index[a]] += contrib
            else:
                np.add.at(out, self.index[a], contrib)
        return out

    def left_times(self, x, mat: np.ndarray) -> np.ndarray:
        """``x * m_j`` for every column ``m_j`` of ``mat``."""
        x = np.asarray(x)
        out = np.zeros((self.dim, mat.shape[1]), dtype=np.result_type(x, mat, self.coeff))
        for a in np.flatnonzero(x):
            contrib = x[a] * self.coeff[a][:, None] * mat
            if self._row_perm:
                out[self.index[a]] += contrib
            else:
                np.add.at(out, self.index[a], contrib)
        return out

    def structure_constants(self) -> np.ndarray:
        """Dense ``c[i, j, k]`` with ``b_i b_j = sum_k c[i, j, k] b_k``."""
        d = self.dim
        c = np.zeros((d, d, d), dtype=self.coeff.dtype)
        i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
        c[i, j, self.index] = self.coeff
        return c

    def _close(self, diff) -> bool:
        diff = np.abs(diff)
        limit = 0.0 if self.integral else FLOAT_ATOL
        return bool(np.max(diff, initial=0.0) <= limit)

    def check_unit(self):
        eye = np.eye(self.dim)
        left = self.left_times(self.unit, eye)
        # column j of ``right`` is b_j * unit
        right = np.zeros_like(left)
        cols = np.arange(self.dim)
        for a in np.flatnonzero(self.unit):
            np.add.at(right, (self.index[:, a], cols), self.unit[a] * self.coeff[:, a])
        if not (self._close(left - eye) and self._close(right - eye)):
            raise VerificationFailed(f"{self.name}: unit law fails")

    def check_associative(self):
        idx, c = self.index, self.coeff
        for i in range(self.dim):
            # (b_i b_j) b_k against b_i (b_j b_k), for all j, k at once
            left_c = c[i][:, None] * c[idx[i]]
            left_k = idx[idx[i]]
            right_c = c * c[i][idx]
            right_k = idx[i][idx]
            same = np.where(left_k == right_k, np.abs(left_c - right_c),
                            np.abs(left_c) + np.abs(right_c))
            if not self._close(same):
                j, k = np.unravel_index(int(np.argmax(same)), same.shape)
                raise VerificationFailed(
                    f"{self.name}: associativity fails on ({self.labels[i]}, "
                    f"{self.labels[j]}, {self.labels[k]})"
                )


# ---------------------------------------------------------------------------
# constructors


def clifford_as_algebra(sig: Signature, verify: bool = True, scalars: str = "R") -> FiniteAlgebra:
    """Cl_{p,q,r} on its blade basis, graded by blade parity."""
    if sig.n > ALGEBRA_CAP:
        raise CapExceeded(f"n = {sig.n} exceeds the structure-constant cap {ALGEBRA_CAP}")
    d = sig.dim
    idx = np.arange(d)
    labels = [blade_name(b, sep="") for b in range(d)]
    grading = np.bitwise_count(idx) % 2
    unit = np.zeros(d)
    unit[0] = 1
    return FiniteAlgebra(labels, idx[:, None] ^ idx[None, :], cayley_table(sig), unit,
                         grading=grading, scalars=scalars, name=f"Cl{sig}", verify=verify)


def complexify(sig: Signature, verify: bool = True) -> FiniteAlgebra:
    """The complex algebra with the same blade table as Cl_{p,q}."""
    if sig.degenerate:
        raise DegenerateSignature(f"{sig} has null generators")
    alg = clifford_as_algebra(sig, verify=verify, scalars="C")
    alg.name = f"C(x)Cl{sig}"
    return alg


_FIELD_UNITS = {"R": 1, "C": 2, "H": 4}


def matrix_algebra(size: int, field: str = "R", scalars: str = "R") -> FiniteAlgebra:
    """K(size) on the basis ``u E_ab`` with ``u`` running over the units of K.

    ``scalars="C"`` gives the complex algebra C(size) (then ``field`` must be C
    and the basis is just ``E_ab``).
    """
    if scalars == "C":
        if field != "C":
            raise ValueError("complex scalars only pair with field C")
        units = 1
    else:
        units = _FIELD_UNITS[field]
    m = size
    d = m * m * units
    index = np.zeros((d, d), dtype=np.int64)
    coeff = np.zeros((d, d), dtype=float)
    names = ["1", "i", "j", "k"]
    labels = []
    for a in range(m):
        for b in range(m):
            for u in range(units):
                labels.append(("" if u == 0 else names[u]) + f"E{a + 1}{b + 1}")
    for a in range(m):
        for b in range(m):
            for u in range(units):
                row = (a * m + b) * units + u
                for c_ in range(m):
                    for e in range(m):
                        for v in range(units):
                            col = (c_ * m + e) * units + v
                            if b != c_:
                                continue
                            sign, w = QUAT[u][v]
                            index[row, col] = (a * m + e) * units + w
                            coeff[row, col] = sign
    unit = np.zeros(d)
    for a in range(m):
        unit[(a * m + a) * units] = 1
    name = f"{field}({m})" if scalars == "R" else f"C({m}) over C"
    return FiniteAlgebra(labels, index, coeff, unit, scalars=scalars, name=name)


def direct_sum(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    if a.scalars != b.scalars:
        raise ValueError("direct sum of algebras over different scalars")
    da, db = a.dim, b.dim
    d = da + db
    index = np.zeros((d, d), dtype=np.int64)
    coeff = np.zeros((d, d), dtype=np.result_type(a.coeff, b.coeff))
    index[:da, :da] = a.index
    coeff[:da, :da] = a.coeff
    index[da:, da:] = b.index + da
    coeff[da:, da:] = b.coeff
    labels = [f"({s},0)" for s in a.labels] + [f"(0,{s})" for s in b.labels]
    grading = None
    if a.grading is not None and b.grading is not None:
        grading = a.grading + b.grading
    return FiniteAlgebra(labels, index, coeff, np.concatenate([a.unit, b.unit]),
                         grading=grading, scalars=a.scalars, name=f"{a.name}+{b.name}")


def _tensor(a: FiniteAlgebra, b: FiniteAlgebra, graded: bool, verify: bool) -> FiniteAlgebra:
    if a.scalars != b.scalars:
        raise ValueError("tensor product of algebras over different scalars")
    if graded and (a.grading is None or b.grading is None):
        raise MissingGrading("graded tensor product needs both factors graded")
    da, db = a.dim, b.dim
    # basis (i, j) -> i * db + j; product (i, j)(k, l) = a_ik (x) b_jl
    index = (a.index[:, None, :, None] * db + b.index[None, :, None, :]).reshape(da * db, da * db)
    coeff = a.coeff[:, None, :, None] * b.coeff[None, :, None, :]
    if graded:
        # (a' (x) b)(a (x) b') = (-1)^{|b||a|} a'a (x) bb'
        gb = np.array(b.grading)[None, :, None, None]
        ga = np.array(a.grading)[None, None, :, None]
        coeff = np.where((gb * ga) % 2 == 1, -coeff, coeff)
    coeff = coeff.reshape(da * db, da * db)
    grading = None
    if a.grading is not None and b.grading is not None:
        grading = (np.array(a.grading)[:, None] + np.array(b.grading)[None, :]).ravel() % 2
    labels = [f"{s}⊗{t}" for s in a.labels for t in b.labels]
    op = "⊗^" if graded else "⊗"
    return FiniteAlgebra(labels, index, coeff, np.kron(a.unit, b.unit), grading=grading,
                         scalars=a.scalars, name=f"{a.name}{op}{b.name}", verify=verify)


def tensor(a: FiniteAlgebra, b: FiniteAlgebra, verify: bool = True) -> FiniteAlgebra:
    return _tensor(a, b, graded=False, verify=verify)


def graded_tensor(a: FiniteAlgebra, b: FiniteAlgebra, verify: bool = True) -> FiniteAlgebra:
    return _tensor(a, b, graded=True, verify=verify)


# ---------------------------------------------------------------------------
# morphisms


def matrix_rank(mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > RANK_RTOL * s[0])) if s[0] > 0 else 0


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Linear map given by ``matrix`` (target.dim x source.dim)."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    matrix: np.ndarray
    name: str = ""

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x)

    @property
    def _limit(self) -> float:
        m = self.matrix
        exact = (self.source.integral and self.target.integral and not np.iscomplexobj(m)
                 and bool(np.all(m == np.round(m))))
        return 0.0 if exact else FLOAT_ATOL

    def unit_residual(self) -> float:
        return float(np.max(np.abs(self.apply(self.source.unit) - self.target.unit), initial=0.0))

    def multiplicativity_residual(self) -> float:
        """``max |f(b_i b_j) - f(b_i) f(b_j)|`` over all basis pairs."""
        f = self.matrix
        src = self.source
        worst = 0.0
        for i in range(src.dim):
            lhs = f[:, src.index[i]] * src.coeff[i][None, :]
            rhs = self.target.left_times(f[:, i], f)
            worst = max(worst, float(np.max(np.abs(lhs - rhs), initial=0.0)))
        return worst

    def rank(self) -> int:
        return matrix_rank(self.matrix)

    def verify(self, bijective: bool = True, rank: int | None = None) -> "AlgebraMorphism":
        """Raise :class:`VerificationFailed` unless unital, multiplicative and of full rank."""
        label = self.name or f"{self.source.name} -> {self.target.name}"
        limit = self._limit
        if self.unit_residual() > limit:
            raise VerificationFailed(f"{label}: unit is not preserved")
        worst = self.multiplicativity_residual()
        if worst > limit:
            raise VerificationFailed(f"{label}: not multiplicative (residual {worst:.3g})")
        expected = rank if rank is not None else (self.source.dim if bijective else None)
        if expected is not None:
            got = self.rank()
            if got != expected or (bijective and rank is None and self.target.dim != self.source.dim):
                raise VerificationFailed(f"{label}: rank {got}, expected {expected}")
        return self


def extend_from_generators(sig: Signature, source: FiniteAlgebra, target: FiniteAlgebra,
                           images: Sequence[np.ndarray], name: str = "") -> AlgebraMorphism:
    """Send each blade of Cl(sig) to the ordered product of its generator images."""
    if len(images) != sig.n:
        raise ValueError(f"need {sig.n} generator images, got {len(images)}")
    cols = [target.unit.copy()]
    for bits in range(1, sig.dim):
        top = bits.bit_length() - 1
        cols.append(target.multiply(cols[bits ^ (1 << top)], images[top]))
    return AlgebraMorphism(source, target, np.column_stack(cols), name)


def check_generator_relations(sig: Signature, target: FiniteAlgebra, images: Sequence[np.ndarray],
                              rng: np.random.Generator | None = None, trials: int = 8) -> float:
    """Residual of ``f(x)^2 = Phi(x) 1`` on generators, pairs and random vectors."""
    worst = 0.0
    squares = sig.squares
    n = sig.n
    for i in range(n):
        for j in range(i, n):
            anti = target.multiply(images[i], images[j]) + target.multiply(images[j], images[i])
            expected = 2 * squares[i] * target.unit if i == j else 0 * target.unit
            worst = max(worst, float(np.max(np.abs(anti - expected), initial=0.0)))
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(trials if n else 0):
        x = rng.standard_normal(n)
        fx = sum(x[k] * images[k] for k in range(n))
        q = float(np.dot(np.array(squares) * x, x))
        diff = target.multiply(fx, fx) - q * target.unit
        worst = max(worst, float(np.max(np.abs(diff))) / (1.0 + float(np.dot(x, x))))
    return worst


def _verify_generators(sig, target, images, label):
    limit = 0.0 if target.integral else FLOAT_ATOL
    exact = check_generator_relations(sig, target, images, trials=0)
    sampled = check_generator_relations(sig, target, images)
    if exact > limit or sampled > 1e-12:
        raise VerificationFailed(f"{label}: generator images violate the Clifford relations")


def _tensor_vector(a: FiniteAlgebra, b: FiniteAlgebra, i: int, j: int) -> np.ndarray:
    v = np.zeros(a.dim * b.dim)
    v[i * b.dim + j] = 1.0
    return v


def _require_nondegenerate(*sigs: Signature):
    for s in sigs:
        if s.degenerate:
            raise DegenerateSignature(f"{s} has null generators")


def direct_sum_iso(sig_a: Signature, sig_b: Signature) -> AlgebraMorphism:
    """Cl(A + B) -> Cl(A) graded-tensor Cl(B) from ``(v, w) -> v (x) 1 + 1 (x) w``.

    The orthogonal sum has signature ``(p_a + p_b, q_a + q_b)``; its plus
    generators are those of A then B, and likewise for the minus generators.
    """
    _require_nondegenerate(sig_a, sig_b)
    total = Signature(sig_a.p + sig_b.p, sig_a.q + sig_b.q)
    a = clifford_as_algebra(sig_a)
    b = clifford_as_algebra(sig_b)
    target = graded_tensor(a, b)
    left = [_tensor_vector(a, b, 1 << k, 0) for k in range(sig_a.n)]
    right = [_tensor_vector(a, b, 0, 1 << k) for k in range(sig_b.n)]
    images = (left[: sig_a.p] + right[: sig_b.p] + left[sig_a.p:] + right[sig_b.p:])
    label = f"Cl{sig_a}+Cl{sig_b}"
    _verify_generators(total, target, images, label)
    mor = extend_from_generators(total, clifford_as_algebra(total), target, images, label)
    return mor.verify()


def periodicity_morphism(kind: str, *params: int) -> AlgebraMorphism:
    """The explicit isomorphisms behind the period-8 classification.

    ``("A", n)``: Cl_{0,n+2} -> Cl_{n,0} (x) Cl_{0,2}
    ``("B", n)``: Cl_{n+2,0} -> Cl_{0,n} (x) Cl_{2,0}
    ``("C", p, q)``: Cl_{p+1,q+1} -> Cl_{p,q} (x) Cl_{1,1}

    The first factor's generators are sent to ``e_i' (x) e_1''e_2''`` and the
    two extra generators to ``1 (x) e_1''`` and ``1 (x) e_2''``.
    """
    kind = kind.upper()
    if kind in ("A", "B"):
        if len(params) != 1:
            raise ValueError(f"kind {kind} takes one parameter n")
        (n,) = params
        if kind == "A":
            source_sig, left_sig, right_sig = Signature(0, n + 2), Signature(n, 0), Signature(0, 2)
        else:
            source_sig, left_sig, right_sig = Signature(n + 2, 0), Signature(0, n), Signature(2, 0)
    elif kind == "C":
        if len(params) != 2:
            raise ValueError("kind C takes parameters p, q")
        p, q = params
        source_sig, left_sig, right_sig = Signature(p + 1, q + 1), Signature(p, q), Signature(1, 1)
    else:
        raise ValueError(f"unknown periodicity kind {kind!r}")
    if source_sig.n > ALGEBRA_CAP:
        raise CapExceeded(f"{source_sig} exceeds the structure-constant cap")
    a = clifford_as_algebra(left_sig)
    b = clifford_as_algebra(right_sig)
    target = tensor(a, b)
    paired = [_tensor_vector(a, b, 1 << k, 0b11) for k in range(left_sig.n)]
    first, second = _tensor_vector(a, b, 0, 0b01), _tensor_vector(a, b, 0, 0b10)
    if kind == "A":
        images = paired + [first, second]
    elif kind == "B":
        images = paired + [first, second]
    else:
        p, q = params
        images = paired[:p] + [first] + paired[p:] + [second]
    label = f"periodicity {kind}{params}"
    _verify_generators(source_sig, target, images, label)
    mor = extend_from_generators(source_sig, clifford_as_algebra(source_sig), target, images, label)
    return mor.verify()


def even_subalgebra_morphism(p: int, q: int) -> AlgebraMorphism:
    """Cl_{p,q} -> Cl_{p,q+1}, ``e_j -> e_j e_{n+1}``, onto the even part."""
    source_sig = Signature(p, q)
    target_sig = Signature(p, q + 1)
    if target_sig.n > ALGEBRA_CAP:
        raise CapExceeded(f"{target_sig} exceeds the structure-constant cap")
    target = clifford_as_algebra(target_sig)
    n = source_sig.n
    images = []
    for j in range(n):
        v = np.zeros(target.dim)
        v[(1 << j) | (1 << n)] = 1.0  # e_j e_{n+1} is already in ascending order
        images.append(v)
    label = f"Cl{source_sig} -> even part of Cl{target_sig}"
    _verify_generators(source_sig, target, images, label)
    mor = extend_from_generators(source_sig, clifford_as_algebra(source_sig), target, images, label)
    odd = np.array(target.grading) == 1
    if np.any(mor.matrix[odd] != 0):
        raise VerificationFailed(f"{label}: image leaves the even subalgebra")
    return mor.verify(bijective=False, rank=source_sig.dim)


def rescaling_morphism(source_sig: Signature, target_sig: Signature) -> AlgebraMorphism:
    """Complex isomorphism C(x)Cl_{p,q} -> C(x)Cl_{p',q'} for ``p+q = p'+q'``.

    Generator ``e_k`` goes to ``e_k`` when the squares agree and to ``i e_k``
    otherwise.
    """
    _require_nondegenerate(source_sig, target_sig)
    if source_sig.n != target_sig.n:
        raise ValueError("complexifications only match in equal dimension")
    target = complexify(target_sig)
    images = []
    for k, (s, t) in enumerate(zip(source_sig.squares, target_sig.squares)):
        v = np.zeros(target.dim, dtype=complex)
        v[1 << k] = 1.0 if s == t else 1j
        images.append(v)
    label = f"C(x)Cl{source_sig} -> C(x)Cl{target_sig}"
    _verify_generators(source_sig, target, images, label)
    mor = extend_from_generators(source_sig, complexify(source_sig), target, images, label)
    return mor.verify()


def _pi_complex_quaternion(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Complex 2x2 matrix of ``x -> y x conj(z)`` on H = C + C j (C acting on the left)."""
    y_quat = np.array([y[0], y[1], 0.0, 0.0])
    cols = []
    for x in (np.array([1.0, 0, 0, 0]), np.array([0, 0, 1.0, 0])):
        h = quat_mul(quat_mul(y_quat, x), quat_conj(z))
        cols.append([h[0] + 1j * h[1], h[2] + 1j * h[3]])
    return np.array(cols).T


def _pi_quaternion_quaternion(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Real 4x4 matrix of ``x -> y x conj(z)`` on H = R^4."""
    return np.column_stack([quat_mul(quat_mul(y, x), quat_conj(z)) for x in np.eye(4)])


def _complex_matrix_coords(mat: np.ndarray) -> np.ndarray:
    """Coordinates of a complex matrix in ``matrix_algebra(m, "C")``."""
    m = mat.shape[0]
    v = np.zeros(2 * m * m)
    for a in range(m):
        for b in range(m):
            v[(a * m + b) * 2] = mat[a, b].real
            v[(a * m + b) * 2 + 1] = mat[a, b].imag
    return v


def matiso_morphism(kind: str) -> AlgebraMorphism:
    """Explicit isomorphisms C+C -> C(x)C, C(x)H -> C(2) and H(x)H -> R(4)."""
    kind = kind.upper()
    c = matrix_algebra(1, "C")
    h = matrix_algebra(1, "H")
    if kind == "CC":
        source = direct_sum(c, c)
        target = tensor(c, c)
        one_one = _tensor_vector(c, c, 0, 0)
        i_i = _tensor_vector(c, c, 1, 1)
        i_one = _tensor_vector(c, c, 1, 0)
        idem = [0.5 * (one_one + i_i), 0.5 * (one_one - i_i)]
        cols = []
        for e in idem:
            cols += [e, target.multiply(i_one, e)]
        mor = AlgebraMorphism(source, target, np.column_stack(cols), "C+C -> C(x)C")
    elif kind == "CH":
        source = tensor(c, h)
        target = matrix_algebra(2, "C")
        cols = [_complex_matrix_coords(_pi_complex_quaternion(y, z))
                for y in np.eye(2) for z in np.eye(4)]
        mor = AlgebraMorphism(source, target, np.column_stack(cols), "C(x)H -> C(2)")
    elif kind == "HH":
        source = tensor(h, h)
        target = matrix_algebra(4, "R")
        cols = [_pi_quaternion_quaternion(y, z).ravel() for y in np.eye(4) for z in np.eye(4)]
        mor = AlgebraMorphism(source, target, np.column_stack(cols), "H(x)H -> R(4)")
    else:
        raise ValueError(f"unknown kind {kind!r}; expected CC, CH or HH")
    return mor.verify()


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class AlgebraClass:
    """``summands`` copies of the matrix algebra ``field(size)``.

    ``scalars`` records whether this is a real or a complex algebra.
    """

    field: str
    size: int
    summands: int = 1
    scalars: str = "R"

    def __post_init__(self):
        if self.field not in _FIELD_UNITS or self.scalars not in ("R", "C"):
            raise ValueError(f"bad field/scalars {self.field}/{self.scalars}")
        if self.scalars == "C" and self.field != "C":
            raise ValueError("complex algebras classify over C")
        if self.summands not in (1, 2) or self.size < 1:
            raise ValueError(f"bad size/summands {self.size}/{self.summands}")

    @property
    def dimension(self) -> int:
        """Dimension over the algebra's own scalars."""
        field_dim = 1 if self.scalars == "C" else _FIELD_UNITS[self.field]
        return self.summands * self.size * self.size * field_dim

    @property
    def real_matrix_size(self) -> int:
        """Size of the block-diagonal real matrices realising this class."""
        return self.summands * self.size * _FIELD_UNITS[self.field]

    def __str__(self) -> str:
        block = self.field if self.size == 1 else f"{self.field}({self.size})"
        if self.summands == 1:
            return block
        if self.scalars == "C":
            return f"2{block}"
        return f"{block}+{block}"

    @classmethod
    def parse(cls, text: str, scalars: str | None = None) -> "AlgebraClass":
        text = text.replace(" ", "").replace("⊕", "+")
        m = re.fullmatch(r"(2)?([RCH])(?:\((\d+)\))?(?:\+([RCH])(?:\((\d+)\))?)?", text)
        if not m:
            raise ValueError(f"cannot parse algebra class {text!r}")
        two, field, size, field2, size2 = m.groups()
        size = int(size or 1)
        summands = 1
        if field2:
            if field2 != field or int(size2 or 1) != size or two:
                raise ValueError(f"unequal summands in {text!r}")
            summands = 2
        if two:
            summands = 2
            scalars = scalars or "C"
        return cls(field, size, summands, scalars or "R")


R1 = AlgebraClass("R", 1)


def tensor_class(x: AlgebraClass, y: AlgebraClass) -> AlgebraClass:
    """Symbolic real tensor product, using R(m)(x)R(n) = R(mn), R(n)(x)K = K(n),
    C(x)C = C+C, C(x)H = C(2), H(x)H = R(4), and distributing over +.
    """
    if x.scalars != y.scalars:
        raise ValueError("tensor of classes over different scalars")
    size = x.size * y.size
    summands = x.summands * y.summands
    if x.scalars == "C":
        field = "C"
    else:
        pair = {x.field, y.field}
        if x.field == "R":
            field = y.field
        elif y.field == "R":
            field = x.field
        elif pair == {"C"}:
            field, summands = "C", summands * 2
        elif pair == {"C", "H"}:
            field, size = "C", size * 2
        else:  # H (x) H
            field, size = "R", size * 4
    assert summands <= 2, "at most one direct-sum split can arise"
    return AlgebraClass(field, size, summands, x.scalars)


@lru_cache(maxsize=None)
def _classify_definite(p: int, q: int) -> AlgebraClass:
    if (p, q) == (0, 0):
        return R1
    if (p, q) == (0, 1):
        return AlgebraClass("C", 1)
    if (p, q) == (1, 0):
        return AlgebraClass("R", 1, 2)
    if p == 0:  # Cl_{0,n+2} = Cl_{n,0} (x) H
        return tensor_class(_classify_definite(q - 2, 0), AlgebraClass("H", 1))
    # Cl_{n+2,0} = Cl_{0,n} (x) R(2)
    return tensor_class(_classify_definite(0, p - 2), AlgebraClass("R", 2))


def classify(p: int, q: int) -> AlgebraClass:
    """Matrix-algebra type of Cl_{p,q}: strip (1,1) pairs, then reduce the definite rest."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    if p + q > 32:
        raise CapExceeded("classification is supported for p+q <= 32")
    m = min(p, q)
    return tensor_class(_classify_definite(p - m, q - m), AlgebraClass("R", 2 ** m))


def classify_complex(n: int) -> AlgebraClass:
    """Cl(n, C): C(2^k) for n = 2k, and two copies of it for n = 2k + 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = AlgebraClass("C", 1, 2 if n % 2 else 1, "C")
    for _ in range(n // 2):
        out = tensor_class(out, AlgebraClass("C", 2, 1, "C"))
    return out


# ---------------------------------------------------------------------------
# faithful real matrix representations


@dataclass(frozen=True)
class _KRep:
    """Generator images as matrices over K, one list per direct summand.

    Real matrices are (m, m) float arrays, complex ones (m, m) complex arrays,
    quaternionic ones (m, m, 4) arrays of (1, i, j, k) coordinates.
    """

    field: str
    size: int
    summands: tuple[tuple[np.ndarray, ...], ...]

    def identity(self) -> np.ndarray:
        eye = np.eye(self.size)
        if self.field == "C":
            return eye.astype(complex)
        if self.field == "H":
            out = np.zeros((self.size, self.size, 4))
            out[..., 0] = eye
            return out
        return eye


def _tensor_quaternion(field: str, mat: np.ndarray, q: np.ndarray) -> tuple[str, np.ndarray]:
    """Image of ``mat (x) q`` in K(m) (x) H, reduced by the matrix isomorphisms."""
    if field == "R":
        return "H", mat[..., None] * q
    m = mat.shape[0]
    if field == "C":
        blocks = {u: _pi_complex_quaternion(e, q) for u, e in enumerate(np.eye(2))}
        out = np.zeros((2 * m, 2 * m), dtype=complex)
        for r in range(m):
            for s in range(m):
                out[2 * r:2 * r + 2, 2 * s:2 * s + 2] = (mat[r, s].real * blocks[0]
                                                         + mat[r, s].imag * blocks[1])
        return "C", out
    blocks = {u: _pi_quaternion_quaternion(e, q) for u, e in enumerate(np.eye(4))}
    out = np.zeros((4 * m, 4 * m))
    for r in range(m):
        for s in range(m):
            out[4 * r:4 * r + 4, 4 * s:4 * s + 4] = sum(mat[r, s, u] * blocks[u] for u in range(4))
    return "R", out


def _tensor_real2(mat: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Image of ``mat (x) b`` in K(m) (x) R(2) = K(2m)."""
    if mat.ndim == 3:
        m = mat.shape[0]
        return np.einsum("rsu,ab->rasbu", mat, b).reshape(2 * m, 2 * m, 4)
    return np.kron(mat, b)


_E_PLUS = np.array([[1.0, 0.0], [0.0, -1.0]])   # square +1
_E_PLUS2 = np.array([[0.0, 1.0], [1.0, 0.0]])   # square +1
_E_MINUS = np.array([[0.0, 1.0], [-1.0, 0.0]])  # square -1
_QI, _QJ, _QK = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]


def _step_quaternion(rep: _KRep) -> _KRep:
    """Cl_{n,0} -> Cl_{0,n+2} via Cl_{n,0} (x) Cl_{0,2}, with Cl_{0,2} = H."""
    new = []
    field = size = None
    for gens in rep.summands:
        imgs = [_tensor_quaternion(rep.field, g, _QK) for g in gens]
        imgs += [_tensor_quaternion(rep.field, rep.identity(), _QI),
                 _tensor_quaternion(rep.field, rep.identity(), _QJ)]
        field = imgs[0][0]
        size = imgs[0][1].shape[0]
        new.append(tuple(m for _, m in imgs))
    return _KRep(field, size, tuple(new))


def _step_real2(rep: _KRep, first: np.ndarray, second: np.ndarray, split_at: int | None) -> _KRep:
    """Tensor with R(2) = Cl_{2,0} or Cl_{1,1}; old generators pick up ``first second``."""
    both = first @ second
    new = []
    for gens in rep.summands:
        paired = [_tensor_real2(g, both) for g in gens]
        one = _tensor_real2(rep.identity(), first)
        two = _tensor_real2(rep.identity(), second)
        if split_at is None:
            new.append(tuple(paired + [one, two]))
        else:
            new.append(tuple(paired[:split_at] + [one] + paired[split_at:] + [two]))
    return _KRep(rep.field, 2 * rep.size, tuple(new))


@lru_cache(maxsize=None)
def _definite_rep(p: int, q: int) -> _KRep:
    if (p, q) == (0, 0):
        return _KRep("R", 1, ((),))
    if (p, q) == (0, 1):
        return _KRep("C", 1, ((np.array([[1j]]),),))
    if (p, q) == (1, 0):
        return _KRep("R", 1, ((np.array([[1.0]]),), (np.array([[-1.0]]),)))
    if p == 0:
        return _step_quaternion(_definite_rep(q - 2, 0))
    return _step_real2(_definite_rep(0, p - 2), _E_PLUS, _E_PLUS2, None)


def _k_rep(p: int, q: int) -> _KRep:
    if p > 0 and q > 0:
        return _step_real2(_k_rep(p - 1, q - 1), _E_PLUS, _E_MINUS, p - 1)
    return _definite_rep(p, q)


def _realize(field: str, mat: np.ndarray) -> np.ndarray:
    if field == "R":
        return mat.astype(float)
    m = mat.shape[0]
    if field == "C":
        out = np.zeros((2 * m, 2 * m))
        out[0::2, 0::2] = mat.real
        out[0::2, 1::2] = -mat.imag
        out[1::2, 0::2] = mat.imag
        out[1::2, 1::2] = mat.real
        return out
    out = np.zeros((4 * m, 4 * m))
    for r in range(m):
        for s in range(m):
            out[4 * r:4 * r + 4, 4 * s:4 * s + 4] = quat_left_matrix(mat[r, s])
    return out


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


@dataclass(frozen=True)
class MatrixRep:
    """Real matrices ``generators[k]`` representing ``e_{k+1}`` of Cl_{p,q}."""

    sig: Signature
    algebra_class: AlgebraClass
    generators: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return self.generators[0].shape[0] if self.generators else 1

    def blade_images(self) -> list[np.ndarray]:
        out = []
        for bits in range(self.sig.dim):
            mat = np.eye(self.size)
            for k in range(self.sig.n):
                if bits >> k & 1:
                    mat = mat @ self.generators[k]
            out.append(mat)
        return out

    def relation_residual(self) -> float:
        eye = np.eye(self.size)
        worst = 0.0
        for i, gi in enumerate(self.generators):
            for j, gj in enumerate(self.generators):
                expected = 2 * self.sig.squares[i] * eye if i == j else 0 * eye
                worst = max(worst, float(np.max(np.abs(gi @ gj + gj @ gi - expected))))
        return worst

    def rank(self) -> int:
        return matrix_rank(np.array([m.ravel() for m in self.blade_images()]))


def faithful_matrix_rep(p: int, q: int) -> MatrixRep:
    """Real matrices for the generators of Cl_{p,q}, of the minimal size given by
    :func:`classify` (C-entries as 2x2 blocks, H-entries as 4x4 blocks, direct
    sums block-diagonal).
    """
    if p + q > 8:
        raise CapExceeded("faithful representations are built for p+q <= 8")
    rep = _k_rep(p, q)
    klass = classify(p, q)
    if (rep.field, rep.size, len(rep.summands)) != (klass.field, klass.size, klass.summands):
        raise VerificationFailed(f"representation of Cl({p},{q}) disagrees with {klass}")
    n = p + q
    gens = tuple(
        _block_diag([_realize(rep.field, summand[k]) for summand in rep.summands])
        for k in range(n)
    )
    return MatrixRep(Signature(p, q), klass, gens)


def clifford_class_table(n_max: int = 8) -> dict[str, list[str]]:
    """The Cl_{0,n}, Cl_{n,0} and Cl(n, C) rows for n = 0..n_max."""
    return {
        "Cl_{0,n}": [str(classify(0, n)) for n in range(n_max + 1)],
        "Cl_{n,0}": [str(classify(n, 0)) for n in range(n_max + 1)],
        "Cl(n,C)": [str(classify_complex(n)) for n in range(n_max + 1)],
    }


assert MAX_GENERATORS >= ALGEBRA_CAP
