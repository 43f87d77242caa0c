"""Clifford group, Pin and Spin, and the twisted adjoint representation.

The twisted adjoint of an invertible ``x`` sends a vector ``v`` to
``alpha(x) v x^{-1}``.  Membership in the Clifford group means this lands in
grade 1 for every ``v``; Pin adds ``N(x) = +-1`` and Spin additionally asks
for ``x`` to be even.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Multivector,
    Signature,
    Tolerance,
    embed_vector,
    extract_vector,
    grade_involution,
    inverse,
    is_scalar,
    norm,
    odd_part,
    quadratic_form,
    reversal,
)
from .errors import (
    DegenerateSignature,
    IsotropicVector,
    NotAVector,
    NotInCliffordGroup,
    SignatureMismatch,
    Singular,
)


class GroupKind(enum.Enum):
    CLIFFORD = "clifford"
    PIN = "pin"
    SPIN = "spin"


@dataclass(frozen=True)
class GroupElement:
    value: Multivector
    kind: GroupKind
    norm_sign: int

    @property
    def sig(self) -> Signature:
        return self.value.sig


def _value(x) -> Multivector:
    return x.value if isinstance(x, GroupElement) else x


def _require_nondegenerate(sig: Signature):
    if sig.degenerate:
        raise DegenerateSignature(f"{sig} has null generators")


def twisted_action(x: Multivector, v, x_inv: Multivector | None = None) -> Multivector:
    """``alpha(x) v x^{-1}`` as a multivector, for any signature."""
    if x_inv is None:
        x_inv = inverse(x)
    return grade_involution(x) * embed_vector(x.sig, v) * x_inv


def twisted_adjoint(x, v, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    x = _value(x)
    _require_nondegenerate(x.sig)
    try:
        out = twisted_action(x, v, inverse(x, tol))
    except Singular as exc:
        raise NotInCliffordGroup(str(exc)) from exc
    try:
        return extract_vector(out, tol)
    except NotAVector as exc:
        raise NotInCliffordGroup(f"twisted action leaves grade 1: {out}") from exc


def rho_matrix(x, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Matrix of ``v -> alpha(x) v x^{-1}``; column ``i`` is the image of ``e_i``."""
    x = _value(x)
    _require_nondegenerate(x.sig)
    try:
        x_inv = inverse(x, tol)
    except Singular as exc:
        raise NotInCliffordGroup(str(exc)) from exc
    n = x.sig.n
    cols = []
    for i in range(n):
        image = twisted_action(x, np.eye(n)[i], x_inv)
        try:
            cols.append(extract_vector(image, tol))
        except NotAVector as exc:
            raise NotInCliffordGroup(f"image of e{i + 1} is {image}") from exc
    return np.column_stack(cols) if cols else np.zeros((0, 0))


def pin_action(x, v) -> np.ndarray:
    """Alternative form ``x v t(x) / N(x)`` of the twisted adjoint for ``N(x) != 0``."""
    x = _value(x)
    nx = norm(x).coeffs[0]
    out = x * embed_vector(x.sig, v) * reversal(x) / nx
    return extract_vector(out)


def _norm_scalar(x: Multivector, tol: Tolerance) -> float | None:
    nx = norm(x)
    if not is_scalar(nx, tol):
        return None
    return float(nx.coeffs[0])


def is_in_clifford_group(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> bool:
    x = _value(x)
    _require_nondegenerate(x.sig)
    try:
        rho_matrix(x, tol)
    except NotInCliffordGroup:
        return False
    return True


def is_pin(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> bool:
    x = _value(x)
    if not is_in_clifford_group(x, tol):
        return False
    nx = _norm_scalar(x, tol)
    return nx is not None and abs(abs(nx) - 1.0) <= tol.eps * (1.0 + x.max_abs() ** 2)


def is_spin(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> bool:
    x = _value(x)
    return is_pin(x, tol) and tol.small(odd_part(x).coeffs, x.max_abs())


def group_element(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> GroupElement:
    """Classify ``x`` into the smallest of Spin, Pin, Clifford group containing it."""
    if not is_in_clifford_group(x, tol):
        raise NotInCliffordGroup(f"{x} is not in the Clifford group")
    nx = _norm_scalar(x, tol)
    if nx is None or nx == 0.0:
        raise NotInCliffordGroup(f"N({x}) is not a nonzero scalar")
    sign = 1 if nx > 0 else -1
    if is_spin(x, tol):
        kind = GroupKind.SPIN
    elif is_pin(x, tol):
        kind = GroupKind.PIN
    else:
        kind = GroupKind.CLIFFORD
    return GroupElement(x, kind, sign)


def reflection_matrix(sig: Signature, w, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Reflection ``u -> u - 2 phi(u, w) / Phi(w) w`` in the hyperplane orthogonal to ``w``."""
    _require_nondegenerate(sig)
    w = np.asarray(w, dtype=float)
    q = quadratic_form(sig, w)
    if abs(q) <= tol.eps * max(1.0, float(np.dot(w, w))):
        raise IsotropicVector(f"Phi({w.tolist()}) = {q}")
    jw = np.array(sig.squares, dtype=float) * w
    return np.eye(sig.n) - 2.0 * np.outer(w, jw) / q


# ---------------------------------------------------------------------------
# low-dimensional identifications


def _require_sig(x: Multivector, sig: Signature):
    if x.sig != sig:
        raise SignatureMismatch(f"expected {sig}, got {x.sig}")


def spin2_angle(x, tol: Tolerance = DEFAULT_TOL) -> float:
    """Angle theta in [0, 2 pi) with ``x = cos(theta) + sin(theta) e1e2``.

    The twisted adjoint of ``x`` is then the rotation by ``2 theta``.
    """
    x = _value(x)
    _require_sig(x, Signature(0, 2))
    if not is_spin(x, tol):
        raise NotInCliffordGroup(f"{x} is not in Spin(2)")
    theta = math.atan2(x.coeffs[0b11], x.coeffs[0])
    return theta % (2 * math.pi)


# blade bitmasks in Cl_{0,3}
_E23, _E13, _E12 = 0b110, 0b101, 0b011


def spin3_to_quaternion(x, tol: Tolerance = DEFAULT_TOL) -> tuple[float, float, float, float]:
    """Unit quaternion under i -> e2e3, j -> e3e1, k -> e1e2."""
    x = _value(x)
    _require_sig(x, Signature(0, 3))
    if not is_spin(x, tol):
        raise NotInCliffordGroup(f"{x} is not in Spin(3)")
    c = x.coeffs
    # e3e1 = -e1e3
    return (float(c[0]), float(c[_E23]), float(-c[_E13]), float(c[_E12]))


def quaternion_to_spin3(q) -> Multivector:
    a, b, c, d = (float(t) for t in q)
    coeffs = np.zeros(8)
    coeffs[0], coeffs[_E23], coeffs[_E13], coeffs[_E12] = a, b, -c, d
    return Multivector(Signature(0, 3), coeffs)


def _spin4_parts(x: Multivector) -> tuple[np.ndarray, np.ndarray]:
    """Quaternion coordinates of ``u`` and ``v`` in ``x = u + I v``.

    Basis: i = e1e2, j = e2e3, k = e3e1 and I = e1e2e3e4, whose products are
    I i = e4e3, I j = e4e1, I k = e4e2.
    """
    c = x.coeffs
    u = np.array([c[0b0000], c[0b0011], c[0b0110], -c[0b0101]])
    v = np.array([c[0b1111], -c[0b1100], -c[0b1001], -c[0b1010]])
    return u, v


def _spin4_quaternion_element(q: np.ndarray) -> Multivector:
    coeffs = np.zeros(16)
    coeffs[0b0000], coeffs[0b0011], coeffs[0b0110], coeffs[0b0101] = q[0], q[1], q[2], -q[3]
    return Multivector(Signature(0, 4), coeffs)


def spin4_split(x, tol: Tolerance = DEFAULT_TOL) -> tuple[Multivector, Multivector]:
    """Map ``u + I v`` in Spin(4) to the pair ``(u + v, u - v)`` of unit quaternions.

    Both outputs live in span{1, e1e2, e2e3, e3e1} of Cl_{0,4}.
    """
    x = _value(x)
    _require_sig(x, Signature(0, 4))
    if not is_spin(x, tol):
        raise NotInCliffordGroup(f"{x} is not in Spin(4)")
    u, v = _spin4_parts(x)
    return _spin4_quaternion_element(u + v), _spin4_quaternion_element(u - v)


def spin4_quaternions(x, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """:func:`spin4_split` expressed as two ``(a, b, c, d)`` quaternion arrays."""
    left, right = spin4_split(x, tol)
    return _spin4_parts(left)[0], _spin4_parts(right)[0]


def degenerate_kernel_witness(n: int = 2) -> Multivector:
    """``1 + e1e2`` in the null signature (0, 0, n).

    It acts trivially on every vector although it is not a scalar, so the
    kernel of the twisted adjoint is larger than the scalars when the form
    is degenerate.
    """
    if n < 2:
        raise ValueError("need at least two generators")
    sig = Signature(0, 0, n)
    return Multivector.scalar(sig) + Multivector.blade(sig, 0b11)


def six_dim_counterexample() -> Multivector:
    """``(1 + e1e2e3e4e5e6) / sqrt(2)`` in Cl_{0,6}: even, N = 1, yet not in Spin."""
    sig = Signature(0, 6)
    return (Multivector.scalar(sig) + Multivector.blade(sig, 0b111111)) / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# sampling


def random_unit_vector(sig: Signature, rng: np.random.Generator, min_abs: float = 0.1,
                       min_ratio: float = 0.25) -> np.ndarray:
    """Gaussian vector scaled to ``|Phi| = 1``.

    Samples are rejected until ``|Phi(v)| > min_abs`` and
    ``|Phi(v)| >= min_ratio * |v|^2``.  The second bound keeps the Euclidean
    length of the result below ``1 / sqrt(min_ratio)``, so long products stay
    well conditioned in indefinite signatures.
    """
    _require_nondegenerate(sig)
    if sig.n == 0:
        raise ValueError("no vectors in a zero-dimensional space")
    while True:
        v = rng.standard_normal(sig.n)
        q = quadratic_form(sig, v)
        if abs(q) > min_abs and abs(q) >= min_ratio * float(np.dot(v, v)):
            return v / math.sqrt(abs(q))


def random_pin(sig: Signature, rng: np.random.Generator, k: int | None = None,
               parity: int | None = None) -> Multivector:
    """Product of ``k`` random unit vectors (an element of Pin by construction).

    ``parity`` (0 or 1) forces an even or odd number of factors.
    """
    if k is None:
        k = int(rng.integers(0, 2 * sig.n + 1))
        if parity is not None and k % 2 != parity:
            k = k + 1 if k < 2 * sig.n else k - 1
    out = Multivector.scalar(sig)
    for _ in range(k):
        out = out * embed_vector(sig, random_unit_vector(sig, rng))
    return out


def random_spin(sig: Signature, rng: np.random.Generator, k: int | None = None) -> Multivector:
    if k is not None and k % 2:
        raise ValueError("Spin elements need an even number of factors")
    return random_pin(sig, rng, k, parity=0)


def admissible_pair(sig: Signature) -> tuple[int, int] | None:
    """First pair of distinct generators with equal nonzero squares (1-based)."""
    squares = sig.squares
    for i in range(sig.n):
        for j in range(i + 1, sig.n):
            if squares[i] == squares[j] != 0:
                return i + 1, j + 1
    return None

