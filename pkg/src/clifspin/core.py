"""Dense multivector arithmetic for real Clifford algebras Cl_{p,q,r}.

Basis blades are bitmasks: bit ``i`` set means generator ``e_{i+1}`` is a
factor, and factors are always kept in ascending order.  Generators are laid
out as ``p`` squaring to +1, then ``q`` squaring to -1, then ``r`` squaring
to 0.  Structure constants are exact small integers; only the coefficients
are floats.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import (
    CapExceeded,
    GradeOutOfRange,
    NotAVector,
    ParseError,
    SignatureMismatch,
    Singular,
)

MAX_GENERATORS = 12
# Full sign tables are cached up to this many generators (4**10 int8 = 1 MiB).
_TABLE_LIMIT = 10


@dataclass(frozen=True)
class Signature:
    """Quadratic-form descriptor: ``p`` plus, ``q`` minus, ``r`` null generators."""

    p: int
    q: int = 0
    r: int = 0

    def __post_init__(self):
        for name in ("p", "q", "r"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.n > MAX_GENERATORS:
            raise CapExceeded(f"p+q+r = {self.n} exceeds the cap of {MAX_GENERATORS}")

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def degenerate(self) -> bool:
        return self.r > 0

    @property
    def squares(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q + (0,) * self.r

    def metric(self) -> np.ndarray:
        """Diagonal Gram matrix ``J`` of the form (``diag(I_p, -I_q, 0_r)``)."""
        return np.diag(np.array(self.squares, dtype=float))

    @classmethod
    def parse(cls, text: str) -> "Signature":
        parts = [s for s in re.split(r"[,\s]+", text.strip()) if s]
        if not 1 <= len(parts) <= 3:
            raise ValueError(f"expected 'p,q[,r]', got {text!r}")
        try:
            counts = [int(s) for s in parts]
        except ValueError as exc:
            raise ValueError(f"expected 'p,q[,r]', got {text!r}") from exc
        return cls(*counts)

    def __str__(self) -> str:
        return f"({self.p},{self.q})" if self.r == 0 else f"({self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class Tolerance:
    eps: float = 1e-9

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError("eps must be nonnegative")

    def small(self, values, scale: float = 0.0) -> bool:
        """True if every entry of ``values`` is within ``eps * (1 + scale)``."""
        values = np.asarray(values)
        if values.size == 0:
            return True
        return float(np.max(np.abs(values))) <= self.eps * (1.0 + scale)


DEFAULT_TOL = Tolerance()


# ---------------------------------------------------------------------------
# blade kernel


def grade_of(bits: int) -> int:
    return int(bits).bit_count()


def blade_product(sig: Signature, a: int, b: int) -> tuple[int, int]:
    """Multiply two canonical blades; return ``(a ^ b, sign)``.

    The sign collects one factor of -1 per transposition needed to merge the
    ascending factor lists, times the square of every shared generator.
    """
    if not (0 <= a < sig.dim and 0 <= b < sig.dim):
        raise ValueError(f"blade index out of range for {sig}")
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += (rest & b).bit_count()
        rest >>= 1
    sign = -1 if swaps & 1 else 1
    common = a & b
    squares = sig.squares
    k = 0
    while common:
        if common & 1:
            sign *= squares[k]
            if sign == 0:
                break
        common >>= 1
        k += 1
    return a ^ b, sign


def _sign_block(sig: Signature, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorised ``blade_product`` signs for broadcastable bitmask arrays."""
    a = a.astype(np.int64)
    b = b.astype(np.int64)
    parity = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    sign = np.ones_like(parity, dtype=np.int8)
    for k, square in enumerate(sig.squares):
        below = np.bitwise_count(b & ((1 << k) - 1)).astype(np.int64)
        parity += ((a >> k) & 1) * below
        if square != 1:
            shared = ((a & b) >> k) & 1
            sign = np.where(shared == 1, sign * square, sign).astype(np.int8)
    return np.where(parity & 1, -sign, sign).astype(np.int8)


@lru_cache(maxsize=64)
def cayley_table(sig: Signature) -> np.ndarray:
    """``table[a, b]`` is the sign of ``e_a e_b = table[a, b] * e_{a ^ b}``."""
    if sig.n > _TABLE_LIMIT:
        raise CapExceeded(f"full sign table not cached beyond n = {_TABLE_LIMIT}")
    idx = np.arange(sig.dim)
    table = _sign_block(sig, idx[:, None], idx[None, :])
    table.flags.writeable = False
    return table


def _sign_row(sig: Signature, a: int) -> np.ndarray:
    if sig.n <= _TABLE_LIMIT:
        return cayley_table(sig)[a]
    return _sign_block(sig, np.array(a), np.arange(sig.dim))


@lru_cache(maxsize=64)
def _grades(sig: Signature) -> np.ndarray:
    g = np.bitwise_count(np.arange(sig.dim)).astype(np.int64)
    g.flags.writeable = False
    return g


@lru_cache(maxsize=64)
def _involution_signs(sig: Signature) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = _grades(sig)
    alpha = np.where(k % 2 == 1, -1.0, 1.0)
    rev = np.where((k * (k - 1) // 2) % 2 == 1, -1.0, 1.0)
    conj = alpha * rev
    for arr in (alpha, rev, conj):
        arr.flags.writeable = False
    return alpha, rev, conj


# ---------------------------------------------------------------------------
# multivectors


class Multivector:
    """Immutable element of Cl_{p,q,r} with ``2**n`` dense float coefficients.

    ``*`` is the geometric product (or scaling by a number), ``+``/``-`` act
    componentwise.  Two multivectors interoperate only when their signatures
    are equal.
    """

    __slots__ = ("sig", "coeffs")
    __array_priority__ = 100  # make ``np.float64 * mv`` defer to __rmul__

    def __init__(self, sig: Signature, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (sig.dim,):
            raise ValueError(f"expected {sig.dim} coefficients, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, np.zeros(sig.dim))

    @classmethod
    def scalar(cls, sig: Signature, value: float = 1.0) -> "Multivector":
        c = np.zeros(sig.dim)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def blade(cls, sig: Signature, bits: int, value: float = 1.0) -> "Multivector":
        if not 0 <= bits < sig.dim:
            raise ValueError(f"blade {bits} out of range for {sig}")
        c = np.zeros(sig.dim)
        c[bits] = value
        return cls(sig, c)

    @classmethod
    def generator(cls, sig: Signature, i: int) -> "Multivector":
        """The generator ``e_i`` (1-based)."""
        if not 1 <= i <= sig.n:
            raise ValueError(f"generator e{i} out of range for {sig}")
        return cls.blade(sig, 1 << (i - 1))

    @classmethod
    def monomial(cls, sig: Signature, *indices: int) -> "Multivector":
        """Ordered product ``e_{i1} e_{i2} ...`` of generators (any order)."""
        out = cls.scalar(sig)
        for i in indices:
            out = out * cls.generator(sig, i)
        return out

    # arithmetic -------------------------------------------------------
    def _check(self, other: "Multivector"):
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.sig, self.coeffs + other.coeffs)
        if isinstance(other, (int, float, np.number)):
            return self + Multivector.scalar(self.sig, float(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (Multivector, int, float, np.number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, float, np.number)):
            return Multivector(self.sig, self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.number)):
            return Multivector(self.sig, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.number)):
            return Multivector(self.sig, self.coeffs / float(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.sig, self.coeffs.tobytes()))

    def allclose(self, other: "Multivector", atol: float = 1e-9) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= atol)

    # unary operations -------------------------------------------------
    def grade(self, k: int) -> "Multivector":
        return grade_projection(self, k)

    def even(self) -> "Multivector":
        return even_part(self)

    def odd(self) -> "Multivector":
        return odd_part(self)

    def involute(self) -> "Multivector":
        return grade_involution(self)

    def reverse(self) -> "Multivector":
        return reversal(self)

    def conjugate(self) -> "Multivector":
        return conjugation(self)

    def norm(self) -> "Multivector":
        return norm(self)

    def inverse(self, tol: Tolerance = DEFAULT_TOL) -> "Multivector":
        return inverse(self, tol)

    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def is_scalar(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return is_scalar(self, tol)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.coeffs)]

    def __repr__(self):
        return f"Multivector({self.sig}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _sign_rows(sig: Signature, rows: np.ndarray) -> np.ndarray:
    if sig.n <= _TABLE_LIMIT:
        return cayley_table(sig)[rows]
    return _sign_block(sig, rows[:, None], np.arange(sig.dim)[None, :])


# rows of x handled per vectorised block in the product
_PRODUCT_CHUNK = 256


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    """Bilinear extension of :func:`blade_product`."""
    x._check(y)
    sig = x.sig
    idx = np.arange(sig.dim)
    out = np.zeros(sig.dim)
    xc, yc = x.coeffs, y.coeffs
    rows = np.flatnonzero(xc)
    if len(rows) <= 8:
        for a in rows:
            # a ^ idx is a permutation, so fancy-index accumulation is safe
            out[a ^ idx] += xc[a] * _sign_row(sig, int(a)) * yc
        return Multivector(sig, out)
    for start in range(0, len(rows), _PRODUCT_CHUNK):
        chunk = rows[start:start + _PRODUCT_CHUNK]
        weights = xc[chunk, None] * _sign_rows(sig, chunk) * yc[None, :]
        out += np.bincount((chunk[:, None] ^ idx[None, :]).ravel(), weights.ravel(), sig.dim)
    return Multivector(sig, out)


def left_matrix(x: Multivector) -> np.ndarray:
    """Matrix ``L`` with ``L @ y.coeffs == (x * y).coeffs``."""
    sig = x.sig
    idx = np.arange(sig.dim)
    mat = np.zeros((sig.dim, sig.dim))
    for a in np.flatnonzero(x.coeffs):
        mat[a ^ idx, idx] += x.coeffs[a] * _sign_row(sig, int(a))
    return mat


def grade_involution(x: Multivector) -> Multivector:
    return Multivector(x.sig, x.coeffs * _involution_signs(x.sig)[0])


def reversal(x: Multivector) -> Multivector:
    return Multivector(x.sig, x.coeffs * _involution_signs(x.sig)[1])


def conjugation(x: Multivector) -> Multivector:
    return Multivector(x.sig, x.coeffs * _involution_signs(x.sig)[2])


def grade_projection(x: Multivector, k: int) -> Multivector:
    if not 0 <= k <= x.sig.n:
        raise GradeOutOfRange(f"grade {k} outside 0..{x.sig.n}")
    return Multivector(x.sig, np.where(_grades(x.sig) == k, x.coeffs, 0.0))


def even_part(x: Multivector) -> Multivector:
    return Multivector(x.sig, np.where(_grades(x.sig) % 2 == 0, x.coeffs, 0.0))


def odd_part(x: Multivector) -> Multivector:
    return Multivector(x.sig, np.where(_grades(x.sig) % 2 == 1, x.coeffs, 0.0))


def norm(x: Multivector) -> Multivector:
    """``x * conj(x)``; a scalar only for Clifford-group elements."""
    return x * conjugation(x)


def scalar_part(x: Multivector) -> float:
    return float(x.coeffs[0])


def is_scalar(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> bool:
    return tol.small(x.coeffs[1:], x.max_abs())


def inverse(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> Multivector:
    """Two-sided inverse, raising :class:`Singular` when none exists."""
    sig = x.sig
    one = Multivector.scalar(sig)
    scale = x.max_abs()
    if scale == 0.0:
        raise Singular("zero has no inverse")

    def verified(y: Multivector) -> bool:
        if not np.all(np.isfinite(y.coeffs)):
            return False
        bound = max(tol.eps, 1e-12) * (1.0 + float(np.sum(np.abs(x.coeffs))) * float(np.sum(np.abs(y.coeffs))))
        return (
            float(np.max(np.abs((x * y - one).coeffs))) <= bound
            and float(np.max(np.abs((y * x - one).coeffs))) <= bound
        )

    # fast path: when x * conj(x) is a nonzero scalar the inverse is conj(x)/N
    nx = norm(x)
    if is_scalar(nx, tol) and abs(nx.coeffs[0]) > tol.eps * (1.0 + nx.max_abs()):
        y = conjugation(x) / nx.coeffs[0]
        if verified(y):
            return y
    try:
        sol = np.linalg.solve(left_matrix(x), one.coeffs)
    except np.linalg.LinAlgError as exc:
        raise Singular(f"{to_text(x)} is not invertible") from exc
    y = Multivector(sig, sol)
    if not verified(y):
        raise Singular(f"{to_text(x)} is not invertible")
    return y


# ---------------------------------------------------------------------------
# vectors


def _as_vector(sig: Signature, v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (sig.n,):
        raise ValueError(f"expected a vector of length {sig.n}, got shape {arr.shape}")
    return arr


def bilinear_form(sig: Signature, u, v) -> float:
    """Polar form ``phi(u, v) = sum_i square_i * u_i * v_i``."""
    u = _as_vector(sig, u)
    v = _as_vector(sig, v)
    return float(np.dot(np.array(sig.squares, dtype=float) * u, v))


def quadratic_form(sig: Signature, v) -> float:
    return bilinear_form(sig, v, v)


def embed_vector(sig: Signature, v) -> Multivector:
    v = _as_vector(sig, v)
    c = np.zeros(sig.dim)
    c[1 << np.arange(sig.n)] = v
    return Multivector(sig, c)


def extract_vector(x: Multivector, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    mask = _grades(x.sig) == 1
    if not tol.small(x.coeffs[~mask], x.max_abs()):
        raise NotAVector(f"{to_text(x)} has components outside grade 1")
    return x.coeffs[1 << np.arange(x.sig.n)].copy()


# ---------------------------------------------------------------------------
# text and JSON forms


def blade_indices(bits: int) -> tuple[int, ...]:
    return tuple(k + 1 for k in range(bits.bit_length()) if bits >> k & 1)


def blade_name(bits: int, sep: str = "^") -> str:
    if bits == 0:
        return "1"
    return sep.join(f"e{i}" for i in blade_indices(bits))


def _display_order(sig: Signature) -> list[int]:
    return sorted(range(sig.dim), key=blade_indices)


def _format_number(c: float) -> str:
    if c.is_integer() and abs(c) < 1e15:
        return str(int(c))
    return repr(c)


def to_text(x: Multivector) -> str:
    """Canonical text such as ``"3 + 2*e1^e3 - e2"``."""
    parts: list[str] = []
    for bits in _display_order(x.sig):
        c = float(x.coeffs[bits])
        if c == 0.0:
            continue
        mag = abs(c)
        if bits == 0:
            body = _format_number(mag)
        elif mag == 1.0:
            body = blade_name(bits)
        else:
            body = f"{_format_number(mag)}*{blade_name(bits)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_BLADE = r"e\d+(?:\s*\^?\s*e\d+)*"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<num>{_NUMBER})(?:\s*\*\s*(?P<b1>{_BLADE}))?|(?P<b2>{_BLADE}))\s*"
)


def parse_blade(sig: Signature, name: str) -> int:
    """Bitmask for a blade name like ``"e1^e3"``, ``"e1e3"`` or ``"1"``."""
    name = name.strip()
    if name == "1":
        return 0
    if not re.fullmatch(_BLADE, name):
        raise ParseError(f"malformed blade name {name!r}")
    indices = [int(s) for s in re.findall(r"e(\d+)", name)]
    bits = 0
    last = 0
    for i in indices:
        if i < 1 or i > sig.n:
            raise ParseError(f"generator e{i} out of range for {sig}")
        if i <= last:
            raise ParseError(f"blade {name!r} is not in ascending canonical order")
        bits |= 1 << (i - 1)
        last = i
    return bits


def from_text(sig: Signature, text: str) -> Multivector:
    coeffs = np.zeros(sig.dim)
    seen: set[int] = set()
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and m.group("sign") is None):
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        first = False
        pos = m.end()
        value = float(m.group("num")) if m.group("num") else 1.0
        if m.group("sign") == "-":
            value = -value
        blade_text = m.group("b1") or m.group("b2")
        bits = parse_blade(sig, blade_text) if blade_text else 0
        if bits in seen:
            raise ParseError(f"blade {blade_name(bits)} appears twice")
        seen.add(bits)
        coeffs[bits] = value
    return Multivector(sig, coeffs)


def to_json_obj(x: Multivector) -> dict:
    coeffs = {}
    for bits in _display_order(x.sig):
        c = float(x.coeffs[bits])
        if c != 0.0:
            coeffs[blade_name(bits, sep="")] = c
    sig = x.sig
    return {"sig": {"p": sig.p, "q": sig.q, "r": sig.r}, "coeffs": coeffs}


def to_json(x: Multivector) -> str:
    return json.dumps(to_json_obj(x))


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise ParseError(f"duplicate key {key!r}")
        out[key] = value
    return out


def from_json_obj(obj: dict, sig: Signature | None = None) -> Multivector:
    try:
        s = obj["sig"]
        doc_sig = Signature(int(s["p"]), int(s.get("q", 0)), int(s.get("r", 0)))
        raw = obj["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed multivector document: {exc}") from exc
    if sig is not None and sig != doc_sig:
        raise SignatureMismatch(f"document has {doc_sig}, expected {sig}")
    if not isinstance(raw, dict):
        raise ParseError("'coeffs' must be an object")
    coeffs = np.zeros(doc_sig.dim)
    seen: set[int] = set()
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"coefficient of {key!r} is not a number")
        bits = parse_blade(doc_sig, key)
        if bits in seen:
            raise ParseError(f"duplicate blade {key!r}")
        seen.add(bits)
        coeffs[bits] = float(value)
    return Multivector(doc_sig, coeffs)


def from_json(text: str, sig: Signature | None = None) -> Multivector:
    try:
        obj = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return from_json_obj(obj, sig)


def basis(sig: Signature) -> list[Multivector]:
    """All ``2**n`` basis blades, indexed by bitmask."""
    return [Multivector.blade(sig, b) for b in range(sig.dim)]


def product(factors: Iterable[Multivector], sig: Signature) -> Multivector:
    out = Multivector.scalar(sig)
    for f in factors:
        out = out * f
    return out


def cos_sin(angle: float) -> tuple[float, float]:
    """``(cos, sin)`` that is exact at integer multiples of pi/2."""
    quarter = angle / (math.pi / 2)
    k = round(quarter)
    if abs(quarter - k) <= 4 * np.finfo(float).eps * max(1.0, abs(quarter)):
        return [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][k % 4]
    return math.cos(angle), math.sin(angle)
