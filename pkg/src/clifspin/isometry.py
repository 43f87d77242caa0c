"""Reflection factorisation, rotor lifting, the Spin path, and polar structure of O(p,q)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Multivector,
    Signature,
    cos_sin,
    embed_vector,
    norm,
    quadratic_form,
)
from .errors import (
    DegenerateSignature,
    FactorizationFailed,
    NotOrthogonal,
    NumericalFailure,
)
from .groups import GroupElement, GroupKind, reflection_matrix

ORTHOGONALITY_TOL = 1e-8
# |Phi(w)| <= ISOTROPY_RATIO * |w|^2 counts as near-isotropic
ISOTROPY_RATIO = 1e-6
# columns closer than this to their target basis vector are left alone
_FIXED_TOL = 1e-10


def j_residual(sig: Signature, m: np.ndarray) -> float:
    """``max |M^T J M - J|``."""
    j = sig.metric()
    return float(np.max(np.abs(m.T @ j @ m - j), initial=0.0))


@dataclass(frozen=True)
class PseudoOrthogonalMatrix:
    sig: Signature
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.sig.degenerate:
            raise DegenerateSignature(f"{self.sig} has null generators")
        m = np.array(self.entries, dtype=float)
        n = self.sig.n
        if m.shape != (n, n):
            raise NotOrthogonal(f"expected a {n}x{n} matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NotOrthogonal("matrix has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(m), initial=0.0)) ** 2)
        residual = j_residual(self.sig, m)
        if residual > ORTHOGONALITY_TOL * scale:
            raise NotOrthogonal(f"|M^T J M - J| = {residual:.3g} for signature {self.sig}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.entries)) if self.sig.n else 1.0


def _as_pseudo_orthogonal(m, sig: Signature | None) -> PseudoOrthogonalMatrix:
    if isinstance(m, PseudoOrthogonalMatrix):
        return m
    arr = np.asarray(m, dtype=float)
    if sig is None:
        # Euclidean default, with vectors squaring to -|v|^2
        sig = Signature(0, arr.shape[0]) if arr.ndim == 2 else Signature(0)
    return PseudoOrthogonalMatrix(sig, arr)


@dataclass(frozen=True)
class ReflectionFactorization:
    """Vectors ``w_1..w_k`` with ``|Phi(w_j)| = 1`` and ``M = s_{w_1} ... s_{w_k}``."""

    sig: Signature
    vectors: tuple[np.ndarray, ...]

    def __len__(self):
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        out = np.eye(self.sig.n)
        for w in self.vectors:
            out = out @ reflection_matrix(self.sig, w)
        return out

    def versor(self) -> Multivector:
        out = Multivector.scalar(self.sig)
        for w in self.vectors:
            out = out * embed_vector(self.sig, w)
        return out


def _reflect(sig: Signature, w: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Apply the reflection through ``w`` to the columns of ``a``."""
    jw = np.array(sig.squares, dtype=float) * w
    return a - np.outer(w, jw @ a) * (2.0 / quadratic_form(sig, w))


def _admissible(sig: Signature, w: np.ndarray) -> bool:
    return abs(quadratic_form(sig, w)) > ISOTROPY_RATIO * float(np.dot(w, w))


def factor_into_reflections(m, sig: Signature | None = None) -> ReflectionFactorization:
    """Write a pseudo-orthogonal ``M`` as a product of hyperplane reflections.

    Column by column, the reflection through ``w = M e_i - e_i`` sends the
    current ``M e_i`` back to ``e_i`` without moving the ``e_j`` already fixed.
    In Euclidean signatures that never fails and needs at most ``n``
    reflections.  In indefinite signatures ``w`` can be (nearly) isotropic;
    then ``w = M e_i + e_i`` followed by the reflection through ``e_i`` is used,
    so up to ``2n`` reflections may be returned.  If both pivots are
    near-isotropic, :class:`FactorizationFailed` is raised.
    """
    pm = _as_pseudo_orthogonal(m, sig)
    sig = pm.sig
    n = sig.n
    current = pm.entries.copy()
    found: list[np.ndarray] = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        a = current[:, i].copy()
        # the components along already-fixed axes vanish in exact arithmetic
        a[:i] = 0.0
        w = a - e
        if float(np.max(np.abs(w))) <= _FIXED_TOL:
            continue
        if _admissible(sig, w):
            pivots = [w]
        else:
            w_alt = a + e
            if not _admissible(sig, w_alt):
                raise FactorizationFailed(
                    f"both pivots for column {i + 1} are near-isotropic in signature {sig}"
                )
            pivots = [w_alt, e]
        for piv in pivots:
            current = _reflect(sig, piv, current)
            found.append(piv / math.sqrt(abs(quadratic_form(sig, piv))))
    residual = float(np.max(np.abs(current - np.eye(n)), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(pm.entries), initial=0.0)))
    if residual > ORTHOGONALITY_TOL * scale:
        raise FactorizationFailed(f"reflections leave a residual of {residual:.3g}")
    # current = s_k ... s_1 M = I, hence M = s_1 ... s_k
    return ReflectionFactorization(sig, tuple(found))


def lift_to_pin(m, sig: Signature | None = None) -> GroupElement:
    """A Pin element whose twisted adjoint is ``M``; its negative is the other preimage."""
    fac = factor_into_reflections(m, sig)
    x = fac.versor()
    kind = GroupKind.SPIN if len(fac) % 2 == 0 else GroupKind.PIN
    sign = 1 if norm(x).coeffs[0] > 0 else -1
    return GroupElement(x, kind, sign)


def spin_path(sig: Signature, i: int, j: int, t: float) -> Multivector:
    """``cos(2t) + sin(2t) e_i e_j``: a loop in Spin(p,q) from 1 (t=0) through -1 (t=pi/2).

    ``e_i`` and ``e_j`` (1-based) must be distinct generators with the same
    nonzero square.
    """
    if sig.degenerate:
        raise DegenerateSignature(f"{sig} has null generators")
    if not (1 <= i <= sig.n and 1 <= j <= sig.n) or i == j:
        raise ValueError(f"invalid generator pair ({i}, {j}) for {sig}")
    squares = sig.squares
    if squares[i - 1] != squares[j - 1]:
        raise ValueError(f"e{i} and e{j} have different squares in {sig}")
    c, s = cos_sin(2.0 * t)
    return Multivector.scalar(sig, c) + s * Multivector.monomial(sig, i, j)


# ---------------------------------------------------------------------------
# polar decomposition


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring of the Taylor series."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    nrm = float(np.max(np.sum(np.abs(a), axis=1), initial=0.0))
    squarings = max(0, int(math.ceil(math.log2(nrm))) + 1) if nrm > 0.5 else 0
    scaled = a / (2.0 ** squarings)
    out = np.eye(n)
    term = np.eye(n)
    for k in range(1, 60):
        term = term @ scaled / k
        out = out + term
        if float(np.max(np.abs(term), initial=0.0)) <= 1e-17 * float(np.max(np.abs(out), initial=0.0)):
            break
    for _ in range(squarings):
        out = out @ out
    return out


def _orthogonal_factor(a: np.ndarray) -> np.ndarray:
    if a.size == 0:
        return a.copy()
    w, _, vt = np.linalg.svd(a)
    return w @ vt


def polar_decompose(m, sig: Signature | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``M = U expm(H)`` with ``U`` in O(p) x O(q) and ``H = [[0, X], [X^T, 0]]``.

    Writing ``M = [[A, B], [C, D]]``, the diagonal blocks are ``A = U1 cosh(..)``
    and ``D = U2 cosh(..)`` with symmetric factors whose singular values are
    at least 1, so ``U1`` and ``U2`` are the (well-conditioned) orthogonal polar
    factors of ``A`` and ``D``.  The off-diagonal block of ``U^T M`` equals
    ``P sinh(S) Q^T`` when ``X = P S Q^T``, which gives ``X`` through ``asinh``.
    """
    pm = _as_pseudo_orthogonal(m, sig)
    sig = pm.sig
    a = pm.entries
    p = sig.p
    try:
        u = np.zeros_like(a)
        u[:p, :p] = _orthogonal_factor(a[:p, :p])
        u[p:, p:] = _orthogonal_factor(a[p:, p:])
        e = u.T @ a
        top_right = 0.5 * (e[:p, p:] + e[p:, :p].T)
        x = np.zeros_like(top_right)
        if top_right.size:
            left, sinh_s, right_t = np.linalg.svd(top_right, full_matrices=False)
            x = (left * np.arcsinh(sinh_s)) @ right_t
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD failed to converge: {exc}") from exc
    h = np.zeros_like(a)
    h[:p, p:] = x
    h[p:, :p] = x.T
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    residual = float(np.max(np.abs(u @ expm(h) - a), initial=0.0))
    if residual > 1e-6 * scale:
        raise NumericalFailure(f"polar reconstruction residual {residual:.3g}")
    return u, h


def component_of(m, sig: Signature | None = None) -> tuple[int, int]:
    """``(det U1, det U2)`` of the O(p) and O(q) blocks of the polar factor."""
    pm = _as_pseudo_orthogonal(m, sig)
    u, _ = polar_decompose(pm)
    p = pm.sig.p
    d1 = float(np.linalg.det(u[:p, :p])) if p else 1.0
    d2 = float(np.linalg.det(u[p:, p:])) if pm.sig.q else 1.0
    return (1 if d1 > 0 else -1, 1 if d2 > 0 else -1)


def format_component(component: tuple[int, int]) -> str:
    return "(" + ",".join("+" if c > 0 else "-" for c in component) + ")"


def random_orthogonal(n: int, rng: np.random.Generator, det: int | None = None) -> np.ndarray:
    """Haar-distributed element of O(n), optionally with a prescribed determinant."""
    if n == 0:
        return np.zeros((0, 0))
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if det is not None and np.linalg.det(q) * det < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_pseudo_orthogonal(sig: Signature, seed: int, component: tuple[int, int] | None = None,
                             boost_scale: float = 0.5) -> PseudoOrthogonalMatrix:
    """Sample ``U expm(H)`` with Haar blocks and Gaussian ``H``, deterministically in ``seed``."""
    rng = np.random.default_rng(seed)
    p, q = sig.p, sig.q
    d1, d2 = component if component is not None else (None, None)
    u = np.zeros((sig.n, sig.n))
    u[:p, :p] = random_orthogonal(p, rng, d1)
    u[p:, p:] = random_orthogonal(q, rng, d2)
    h = np.zeros((sig.n, sig.n))
    b = boost_scale * rng.standard_normal((p, q))
    h[:p, p:] = b
    h[p:, :p] = b.T
    return PseudoOrthogonalMatrix(sig, u @ expm(h))
