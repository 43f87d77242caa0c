"""Seeded invariant suites behind ``clifspin check``.

Each check draws from its own generator, seeded by the root seed and the
check's name, so a report is reproducible check by check.  ``trials`` sets the
number of random samples per signature.
"""
from __future__ import annotations

import math
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    DEFAULT_TOL,
    Multivector,
    Signature,
    Tolerance,
    basis,
    conjugation,
    embed_vector,
    extract_vector,
    grade_involution,
    inverse,
    is_scalar,
    left_matrix,
    norm,
    reversal,
)
from .errors import CliffordError, FactorizationFailed
from .groups import (
    admissible_pair,
    degenerate_kernel_witness,
    is_in_clifford_group,
    is_spin,
    pin_action,
    quaternion_to_spin3,
    random_pin,
    random_spin,
    random_unit_vector,
    reflection_matrix,
    rho_matrix,
    six_dim_counterexample,
    spin3_to_quaternion,
    spin4_split,
    twisted_action,
)
from .isometry import (
    component_of,
    expm,
    factor_into_reflections,
    j_residual,
    lift_to_pin,
    polar_decompose,
    random_orthogonal,
    random_pseudo_orthogonal,
    spin_path,
)
from .structure import (
    classify,
    classify_complex,
    clifford_class_table,
    direct_sum_iso,
    even_subalgebra_morphism,
    faithful_matrix_rep,
    matiso_morphism,
    periodicity_morphism,
    quat_mul,
    rescaling_morphism,
)

SUITES = ("core", "groups", "isometry", "structure")

# reference rows of the classification
CLASS_ROWS = {
    "Cl_{0,n}": ["R", "C", "H", "H+H", "H(2)", "C(4)", "R(8)", "R(8)+R(8)", "R(16)"],
    "Cl_{n,0}": ["R", "R+R", "R(2)", "C(2)", "H(2)", "H(2)+H(2)", "H(4)", "C(8)", "R(16)"],
    "Cl(n,C)": ["C", "2C", "C(2)", "2C(2)", "C(4)", "2C(4)", "C(8)", "2C(8)", "C(16)"],
}


@dataclass(frozen=True)
class SuiteConfig:
    trials: int = 200
    seed: int = 0
    tol: Tolerance = DEFAULT_TOL


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float = field(default=0.0, compare=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}.{self.name}: {self.detail}"


def check_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def signatures(max_n: int, min_n: int = 0, degenerate: bool = False) -> list[Signature]:
    out = []
    for n in range(min_n, max_n + 1):
        for r in range(n + 1 if degenerate else 1):
            for p in range(n - r + 1):
                out.append(Signature(p, n - r - p, r))
    return out


def _max(values) -> float:
    return float(np.max(np.abs(np.asarray(values)), initial=0.0))


def random_multivector(sig: Signature, rng: np.random.Generator, integer: bool = False) -> Multivector:
    if integer:
        return Multivector(sig, rng.integers(-3, 4, sig.dim))
    return Multivector(sig, rng.standard_normal(sig.dim))


def random_gamma(sig: Signature, rng: np.random.Generator, k: int) -> Multivector:
    """Product of ``k`` random non-isotropic vectors of random length."""
    out = Multivector.scalar(sig)
    for _ in range(k):
        v = random_unit_vector(sig, rng) * rng.uniform(0.5, 2.0)
        out = out * embed_vector(sig, v)
    return out


# ---------------------------------------------------------------------------
# core


def quaternion_table_mismatches() -> int:
    """Products of 1, e1, e2, e1e2 in Cl_{0,2} against the table of 1, i, j, k."""
    sig = Signature(0, 2)
    units = np.eye(4)
    mismatches = 0
    for a in range(4):
        for b in range(4):
            got = (Multivector.blade(sig, a) * Multivector.blade(sig, b)).coeffs
            if not np.array_equal(got, quat_mul(units[a], units[b])):
                mismatches += 1
    return mismatches


def check_associativity(sigs, trials, rng) -> tuple[bool, str]:
    worst = 0.0
    for sig in sigs:
        for _ in range(trials):
            x, y, z = (random_multivector(sig, rng, integer=True) for _ in range(3))
            if (x * y) * z != x * (y * z):
                return False, f"integer triple fails in {sig}"
            x, y, z = (random_multivector(sig, rng) for _ in range(3))
            lhs, rhs = (x * y) * z, x * (y * z)
            scale = x.max_abs() * y.max_abs() * z.max_abs() * sig.dim ** 2
            worst = max(worst, _max(lhs.coeffs - rhs.coeffs) / scale)
    return worst <= 1e-12, f"worst relative error {worst:.2e} over {len(sigs)} signatures"


def check_anticommutation(sigs) -> tuple[bool, str]:
    for sig in sigs:
        gens = [Multivector.generator(sig, i) for i in range(1, sig.n + 1)]
        for i, gi in enumerate(gens):
            for j, gj in enumerate(gens):
                expected = Multivector.scalar(sig, 2 * sig.squares[i] if i == j else 0)
                if gi * gj + gj * gi != expected:
                    return False, f"e{i + 1}, e{j + 1} in {sig}"
    return True, f"{len(sigs)} signatures exact"


def involution_failures_on_basis(sig: Signature) -> int:
    blades = basis(sig)
    alpha = [grade_involution(b) for b in blades]
    rev = [reversal(b) for b in blades]
    failures = 0
    for i, b in enumerate(blades):
        if grade_involution(alpha[i]) != b or reversal(rev[i]) != b:
            failures += 1
        if conjugation(b) != reversal(alpha[i]) or conjugation(b) != grade_involution(rev[i]):
            failures += 1
        for j, c in enumerate(blades):
            bc = b * c
            if grade_involution(bc) != alpha[i] * alpha[j]:
                failures += 1
            if reversal(bc) != rev[j] * rev[i]:
                failures += 1
    return failures


def involution_error_random(sig: Signature, trials: int, rng) -> float:
    worst = 0.0
    for _ in range(trials):
        x, y = random_multivector(sig, rng), random_multivector(sig, rng)
        xy = x * y
        scale = max(1.0, x.max_abs() * y.max_abs() * sig.dim)
        diffs = [
            grade_involution(xy) - grade_involution(x) * grade_involution(y),
            reversal(xy) - reversal(y) * reversal(x),
            grade_involution(grade_involution(x)) - x,
            reversal(reversal(x)) - x,
            conjugation(x) - reversal(grade_involution(x)),
            conjugation(x) - grade_involution(reversal(x)),
        ]
        worst = max(worst, max(d.max_abs() for d in diffs) / scale)
    return worst


def monomial_norm_failures(sig: Signature) -> int:
    failures = 0
    for bits, blade in enumerate(basis(sig)):
        k = bin(bits).count("1")
        expected = (-1) ** k
        for i in range(sig.n):
            if bits >> i & 1:
                expected *= sig.squares[i]
        if norm(blade) != Multivector.scalar(sig, expected):
            failures += 1
    return failures


def check_matrix_oracle(sigs, trials, rng) -> tuple[bool, str]:
    worst = 0.0
    for sig in sigs:
        stacked = np.array([left_matrix(b).ravel() for b in basis(sig)])
        if np.linalg.matrix_rank(stacked) != sig.dim:
            return False, f"left matrices not independent in {sig}"
        for _ in range(trials):
            x, y = random_multivector(sig, rng), random_multivector(sig, rng)
            diff = left_matrix(x * y) - left_matrix(x) @ left_matrix(y)
            worst = max(worst, _max(diff) / (x.max_abs() * y.max_abs() * sig.dim ** 2))
    return worst <= 1e-12, f"worst relative error {worst:.2e}"


def _core_checks(cfg: SuiteConfig):
    t = cfg.trials

    def associativity(rng):
        sigs = [Signature(0, 3), Signature(2, 1), Signature(2, 2), Signature(1, 4),
                Signature(3, 3), Signature(1, 1, 1), Signature(2, 2, 2)]
        return check_associativity(sigs, max(1, t // 4), rng)

    def anticommutation(rng):
        return check_anticommutation(signatures(6, degenerate=True))

    def involutions_exact(rng):
        sigs = signatures(4) + [Signature(0, 6), Signature(6, 0), Signature(3, 3), Signature(2, 2, 1)]
        bad = sum(involution_failures_on_basis(s) for s in sigs)
        return bad == 0, f"{bad} failures on basis pairs of {len(sigs)} signatures"

    def involutions_random(rng):
        sigs = [Signature(0, 3), Signature(3, 0), Signature(1, 2), Signature(2, 2)]
        worst = max(involution_error_random(s, t, rng) for s in sigs)
        return worst <= 1e-12, f"worst relative error {worst:.2e}"

    def monomial_norm(rng):
        sigs = signatures(6, degenerate=True) + [Signature(0, 8), Signature(8, 0), Signature(4, 4)]
        bad = sum(monomial_norm_failures(s) for s in sigs)
        return bad == 0, f"{bad} failures over {len(sigs)} signatures"

    def quaternion_oracle(rng):
        bad = quaternion_table_mismatches()
        return bad == 0, f"{16 - bad}/16 products match"

    def matrix_oracle(rng):
        sigs = [Signature(0, 2), Signature(1, 2), Signature(2, 2), Signature(1, 1, 1)]
        return check_matrix_oracle(sigs, max(1, t // 10), rng)

    return [associativity, anticommutation, involutions_exact, involutions_random,
            monomial_norm, quaternion_oracle, matrix_oracle]


# ---------------------------------------------------------------------------
# groups


def reflection_error(sig: Signature, trials: int, rng) -> float:
    worst = 0.0
    for _ in range(trials):
        v = random_unit_vector(sig, rng)
        worst = max(worst, _max(rho_matrix(embed_vector(sig, v)) - reflection_matrix(sig, v)))
    return worst


def kernel_violations(sig: Signature, trials: int, rng) -> tuple[int, int, int]:
    """Return (violations, near-identity count, rho(x) != rho(-x) count)."""
    violations = hits = odd = 0
    one = Multivector.scalar(sig)
    samples = [random_pin(sig, rng) for _ in range(trials)]
    # products that are +-1 by construction, e.g. v v / Phi(v)
    for _ in range(max(1, trials // 10)):
        u = embed_vector(sig, random_unit_vector(sig, rng))
        w = embed_vector(sig, random_unit_vector(sig, rng))
        samples.append(u * w * inverse(w) * inverse(u))
        samples.append(u * u)
    for x in samples:
        r = rho_matrix(x)
        if _max(r - rho_matrix(-x)) > 1e-9:
            odd += 1
        if _max(r - np.eye(sig.n)) < 1e-9:
            hits += 1
            if not (x.allclose(one, 1e-9) or x.allclose(-one, 1e-9)):
                violations += 1
    return violations, hits, odd


def _groups_checks(cfg: SuiteConfig):
    t = cfg.trials
    small = [s for s in signatures(5, min_n=1)]

    def reflection_law(rng):
        worst = max(reflection_error(s, max(1, t // 4), rng) for s in signatures(6, min_n=1))
        return worst < 1e-10, f"worst entry error {worst:.2e}"

    def kernel(rng):
        per = max(1, t // len(small) + 1)
        totals = np.zeros(3, dtype=int)
        for s in small:
            totals += kernel_violations(s, per, rng)
        bad, hits, odd = totals
        return bad == 0 and odd == 0, f"{hits} near-identity samples, {bad} not +-1, {odd} rho(x) != rho(-x)"

    def norm_scalar(rng):
        for s in small:
            for _ in range(max(1, t // 10)):
                x = random_gamma(s, rng, int(rng.integers(0, 7)))
                nx = norm(x)
                if not is_scalar(nx, cfg.tol) or nx.coeffs[0] == 0:
                    return False, f"N(x) = {nx} in {s}"
        return True, "N(x) is a nonzero scalar on every sample"

    def norm_homomorphism(rng):
        for s in signatures(4, degenerate=True):
            blades = basis(s)
            for a in blades:
                for b in blades:
                    if norm(a * b) != norm(a) * norm(b):
                        return False, f"blade pair in {s}"
        worst = 0.0
        for s in small:
            for _ in range(max(1, t // 10)):
                x = random_gamma(s, rng, int(rng.integers(0, 5)))
                y = random_gamma(s, rng, int(rng.integers(0, 5)))
                scale = 1.0 + norm(x).max_abs() * norm(y).max_abs()
                worst = max(worst, (norm(x * y) - norm(x) * norm(y)).max_abs() / scale,
                            (norm(grade_involution(x)) - norm(x)).max_abs() / scale)
        return worst <= 1e-9, f"exact on blades, worst relative error {worst:.2e}"

    def rho_homomorphism(rng):
        worst = 0.0
        for s in small:
            for _ in range(max(1, t // 10)):
                x, y = random_pin(s, rng), random_pin(s, rng)
                a, b = rho_matrix(x), rho_matrix(y)
                worst = max(worst, _max(rho_matrix(x * y) - a @ b) / (_max(a) * _max(b)))
        return worst <= 1e-9, f"worst relative error {worst:.2e}"

    def double_cover(rng):
        for s in small:
            for _ in range(max(1, t // 20)):
                x = random_pin(s, rng)
                try:
                    y = lift_to_pin(rho_matrix(x), s).value
                except FactorizationFailed:
                    continue
                atol = 1e-9 * max(1.0, x.max_abs())
                if not (x.allclose(y, atol) or x.allclose(-y, atol)):
                    return False, f"{x} and {y} share rho but differ in {s}"
        return True, "preimages agree up to sign"

    def parity(rng):
        for s in small:
            for _ in range(max(1, t // 10)):
                k = int(rng.integers(0, 2 * s.n + 1))
                x = random_pin(s, rng, k)
                d = np.linalg.det(rho_matrix(x))
                if (d < 0) != (k % 2 == 1):
                    return False, f"det {d:.3g} for {k} factors in {s}"
        return True, "det sign matches factor parity"

    def pin_formula(rng):
        worst = 0.0
        for s in small:
            for _ in range(max(1, t // 10)):
                x = random_pin(s, rng)
                v = rng.standard_normal(s.n)
                a = extract_vector(twisted_action(x, v))
                worst = max(worst, _max(a - pin_action(x, v)) / (1 + _max(v)))
        return worst <= 1e-10, f"worst error {worst:.2e}"

    def six_dim(rng):
        x = six_dim_counterexample()
        image = x * Multivector.generator(x.sig, 1) * inverse(x)
        grade5 = abs(image.coeffs[0b111110])
        ok = (abs(norm(x).coeffs[0] - 1) < 1e-15 and is_scalar(norm(x))
              and abs(grade5 - 1) < 1e-12 and not is_in_clifford_group(x))
        return ok, f"|grade-5 part of X e1 X^-1| = {grade5:.15f}"

    def degenerate_witness(rng):
        x = degenerate_kernel_witness()
        fixed = all(twisted_action(x, v) == embed_vector(x.sig, v) for v in np.eye(2))
        return fixed and x.coeffs[0b11] != 0, "1 + e1e2 fixes e1 and e2"

    def low_dimensional(rng):
        worst = 0.0
        s2, s3, s4 = Signature(0, 2), Signature(0, 3), Signature(0, 4)
        for theta in rng.uniform(0, 2 * np.pi, max(1, t // 2)):
            x = Multivector(s2, [math.cos(theta), 0, 0, math.sin(theta)])
            c, s = math.cos(2 * theta), math.sin(2 * theta)
            worst = max(worst, _max(rho_matrix(x) - np.array([[c, -s], [s, c]])))
        for _ in range(max(1, t // 2)):
            x, y = random_spin(s3, rng), random_spin(s3, rng)
            q = quat_mul(spin3_to_quaternion(x), spin3_to_quaternion(y))
            worst = max(worst, _max(np.array(spin3_to_quaternion(x * y)) - q))
            worst = max(worst, (quaternion_to_spin3(spin3_to_quaternion(x)) - x).max_abs())
            x, y = random_spin(s4, rng), random_spin(s4, rng)
            (a1, b1), (a2, b2), (a3, b3) = spin4_split(x), spin4_split(y), spin4_split(x * y)
            worst = max(worst, (a1 * a2 - a3).max_abs(), (b1 * b2 - b3).max_abs(),
                        (norm(a3) - 1).max_abs(), (norm(b3) - 1).max_abs())
        return worst <= 1e-10, f"worst error {worst:.2e}"

    return [reflection_law, kernel, norm_scalar, norm_homomorphism, rho_homomorphism,
            double_cover, parity, pin_formula, six_dim, degenerate_witness, low_dimensional]


# ---------------------------------------------------------------------------
# isometry


def lift_round_trip(n: int, trials: int, rng) -> tuple[float, int, int]:
    """Return (worst residual, max reflections, parity mismatches) on random O(n)."""
    sig = Signature(0, n)
    worst, longest, mismatched = 0.0, 0, 0
    for _ in range(trials):
        m = random_orthogonal(n, rng)
        fac = factor_into_reflections(m, sig)
        x = lift_to_pin(m, sig)
        worst = max(worst, _max(rho_matrix(x) - m))
        longest = max(longest, len(fac))
        if (np.linalg.det(m) < 0) != (len(fac) % 2 == 1):
            mismatched += 1
    return worst, longest, mismatched


def polar_stats(sig: Signature, trials: int, seed: int) -> tuple[float, float, bool, set]:
    """Return (worst reconstruction residual, worst U orthogonality error, shape ok, components)."""
    worst_rec = worst_u = 0.0
    shape_ok = True
    comps = set()
    p = sig.p
    for k in range(trials):
        m = random_pseudo_orthogonal(sig, seed + k).entries
        u, h = polar_decompose(m, sig)
        worst_rec = max(worst_rec, _max(u @ expm(h) - m))
        worst_u = max(worst_u, _max(u.T @ u - np.eye(sig.n)))
        shape_ok &= bool(np.all(h[:p, :p] == 0) and np.all(h[p:, p:] == 0)
                         and np.array_equal(h[:p, p:], h[p:, :p].T))
        comps.add(component_of(m, sig))
    return worst_rec, worst_u, shape_ok, comps


def _isometry_checks(cfg: SuiteConfig):
    t = cfg.trials

    def lift_euclidean(rng):
        worst, bad = 0.0, 0
        for n in range(2, 9):
            w, longest, mismatched = lift_round_trip(n, max(1, t // 7), rng)
            worst = max(worst, w)
            bad += mismatched + (longest > n)
        return worst < 1e-8 and bad == 0, f"worst residual {worst:.2e}, {bad} count/parity failures"

    def lift_indefinite(rng):
        worst, failed, total = 0.0, 0, 0
        for s in signatures(5, min_n=2):
            if s.p == 0 or s.q == 0:
                continue
            for _ in range(max(1, t // 20)):
                m = random_pseudo_orthogonal(s, int(rng.integers(2 ** 31))).entries
                total += 1
                try:
                    x = lift_to_pin(m, s)
                except FactorizationFailed:
                    failed += 1
                    continue
                worst = max(worst, _max(rho_matrix(x) - m) / max(1.0, _max(m)))
        return worst < 1e-8, f"{total - failed}/{total} lifted, worst relative residual {worst:.2e}"

    def polar(rng):
        worst_rec = worst_u = 0.0
        for s in signatures(6, min_n=1):
            rec, u, shape_ok, comps = polar_stats(s, max(1, t // 10), int(rng.integers(2 ** 31)))
            if not shape_ok:
                return False, f"H has the wrong block shape in {s}"
            worst_rec, worst_u = max(worst_rec, rec), max(worst_u, u)
        ok = worst_rec < 1e-8 and worst_u < 1e-10
        return ok, f"reconstruction {worst_rec:.2e}, U orthogonality {worst_u:.2e}"

    def components(rng):
        for s in [Signature(1, 1), Signature(2, 1), Signature(2, 2), Signature(1, 3)]:
            seen = set()
            for k in range(max(8, t // 10)):
                # cycle through the four prescribed components
                comp = (1 - 2 * (k & 1), 1 - 2 * (k >> 1 & 1))
                a = random_pseudo_orthogonal(s, int(rng.integers(2 ** 31)), comp).entries
                b = random_pseudo_orthogonal(s, int(rng.integers(2 ** 31))).entries
                ca, cb = component_of(a, s), component_of(b, s)
                if ca != comp:
                    return False, f"sampled component {comp} read back as {ca} in {s}"
                cab = component_of(a @ b, s)
                if cab != (ca[0] * cb[0], ca[1] * cb[1]):
                    return False, f"component of a product in {s}"
                seen.add(ca)
            if len(seen) != 4:
                return False, f"only {len(seen)} components seen in {s}"
        return True, "component_of is a homomorphism onto four classes"

    def path(rng):
        count = 0
        for s in signatures(5, min_n=2):
            pair = admissible_pair(s)
            if pair is None or (s.p, s.q) == (1, 1):
                continue
            one = Multivector.scalar(s)
            if spin_path(s, *pair, 0.0) != one or spin_path(s, *pair, math.pi / 2) != -one:
                return False, f"endpoints wrong in {s}"
            for tt in rng.uniform(0, math.pi, max(1, t // 2)):
                if not is_spin(spin_path(s, *pair, tt)):
                    return False, f"gamma({tt}) not in Spin{s}"
            count += 1
        return True, f"{count} signatures"

    def sampler(rng):
        worst = 0.0
        for s in signatures(6, min_n=1):
            for _ in range(max(1, t // 20)):
                m = random_pseudo_orthogonal(s, int(rng.integers(2 ** 31))).entries
                worst = max(worst, j_residual(s, m))
        return worst < 1e-10, f"worst J-residual {worst:.2e}"

    return [lift_euclidean, lift_indefinite, polar, components, path, sampler]


# ---------------------------------------------------------------------------
# structure


def morphism_specs(max_total: int = 8, max_even: int = 6) -> list[tuple]:
    """Arguments of every explicit isomorphism up to ``2**max_total`` dimensions."""
    specs = []
    for na in range(max_total + 1):
        for nb in range(max_total + 1 - na):
            for pa in range(na + 1):
                for pb in range(nb + 1):
                    if na + nb <= min(max_total, 4):
                        specs.append(("direct_sum", Signature(pa, na - pa), Signature(pb, nb - pb)))
    for n in range(max_total - 1):
        specs += [("periodicity", "A", n), ("periodicity", "B", n)]
    for p in range(max_total - 1):
        for q in range(max_total - 1 - p):
            specs.append(("periodicity", "C", p, q))
    specs += [("matiso", k) for k in ("CC", "CH", "HH")]
    for p in range(max_even + 1):
        for q in range(max_even + 1 - p):
            specs.append(("even", p, q))
    return specs


def build_morphism(spec: tuple):
    kind, *args = spec
    if kind == "direct_sum":
        return direct_sum_iso(*args)
    if kind == "periodicity":
        return periodicity_morphism(*args)
    if kind == "matiso":
        return matiso_morphism(*args)
    if kind == "even":
        return even_subalgebra_morphism(*args)
    raise ValueError(kind)


def _structure_checks(cfg: SuiteConfig):

    def tables(rng):
        got = clifford_class_table()
        bad = sum(a != b for key in CLASS_ROWS for a, b in zip(got[key], CLASS_ROWS[key]))
        return bad == 0, f"{27 - bad}/27 entries match"

    def periodicity(rng):
        for n in range(9):
            for base, shifted in [(classify(0, n), classify(0, n + 8)), (classify(n, 0), classify(n + 8, 0))]:
                if (base.field, base.summands, base.size * 16) != (shifted.field, shifted.summands, shifted.size):
                    return False, f"n = {n}"
        return True, "period 8 with size x16"

    def dimensions(rng):
        for n in range(17):
            for p in range(n + 1):
                if classify(p, n - p).dimension != 2 ** n:
                    return False, f"({p},{n - p})"
        for n in range(17):
            if classify_complex(n).dimension != 2 ** n:
                return False, f"complex {n}"
        return True, "p+q <= 16"

    def symmetries(rng):
        for n in range(17):
            for p in range(n + 1):
                q = n - p
                if (p - q) % 4 == 0 and classify(p, q) != classify(q, p):
                    return False, f"({p},{q}) vs ({q},{p})"
        for n in range(11):
            for p in range(n + 1):
                q = n - p
                if classify(p + 1, q) != classify(q + 1, p):
                    return False, f"({p + 1},{q}) vs ({q + 1},{p})"
        return True, "swap and shift identities hold"

    def morphisms(rng):
        specs = morphism_specs(max_total=8 if cfg.trials >= 100 else 6)
        failed = []
        for spec in specs:
            try:
                build_morphism(spec)
            except CliffordError as exc:
                failed.append(f"{spec}: {exc}")
        return not failed, f"{len(specs) - len(failed)}/{len(specs)} verified" + (
            f"; first failure {failed[0]}" if failed else "")

    def complexification(rng):
        count = 0
        for n in range(6):
            for p in range(n + 1):
                for pp in range(n + 1):
                    rescaling_morphism(Signature(p, n - p), Signature(pp, n - pp))
                    count += 1
        return True, f"{count} rescaling maps verified"

    def representations(rng):
        for n in range(9):
            for p in range(n + 1):
                rep = faithful_matrix_rep(p, n - p)
                if rep.relation_residual() != 0 or rep.rank() != 2 ** n:
                    return False, f"Cl({p},{n - p})"
        return True, "relations exact and rank 2^n for p+q <= 8"

    return [tables, periodicity, dimensions, symmetries, morphisms, complexification,
            representations]


_BUILDERS: dict[str, Callable] = {
    "core": _core_checks,
    "groups": _groups_checks,
    "isometry": _isometry_checks,
    "structure": _structure_checks,
}


def run_suite(suite: str = "all", config: SuiteConfig | None = None) -> list[CheckResult]:
    config = config or SuiteConfig()
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        if name not in _BUILDERS:
            raise ValueError(f"unknown suite {name!r}; expected all or one of {', '.join(SUITES)}")
        for check in _BUILDERS[name](config):
            start = time.perf_counter()
            try:
                passed, detail = check(check_rng(config.seed, f"{name}.{check.__name__}"))
            except CliffordError as exc:
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, check.__name__, bool(passed), detail,
                                       time.perf_counter() - start))
    return results
