"""Numeric evaluation of monotangents, multitangents and Hurwitz-type sums,
plus the analytic cross-checks (trifactorization, Fourier data, growth
bounds, exponential flatness).

Monotangents are evaluated through exact cotangent polynomials.  Bilateral
multitangent sums are evaluated by splitting the summation range into a
positive part, the n = 0 pivot and a negative part; each one-sided piece is
an absolutely convergent shifted nested sum handled by
:mod:`multitangent.zetasum` with a certified error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .errors import PoleProximityError
from .mzv import DEFAULT_CONTEXT, NumericContext, mzv_numeric
from .reduction import reduce, z_coeff
from .words import Composition, is_multitangent_convergent
from .zetasum import shifted_nested_sum


def check_point(z, guard: float = DEFAULT_CONTEXT.pole_guard):
    """Reject evaluation points within ``guard`` of an integer pole."""
    z = mp.mpc(z)
    nearest = mp.mpc(mp.nint(mp.re(z)), 0)
    if abs(z - nearest) < guard:
        raise PoleProximityError(f"{z} is within {guard} of an integer")
    return z


_COT_POLY_CACHE: dict[int, dict[int, Fraction]] = {}


def cot_poly(k: int) -> dict[int, Fraction]:
    """Te^k / pi^k as an exact polynomial in c = cot(pi z): degree -> rational.

    Te^1 = pi c, and Te^(k+1) = -(1/k) d/dz Te^k with c' = -pi (1 + c^2),
    so the recurrence stays polynomial and every Te^k carries pi^k overall.
    """
    if k < 1:
        raise ValueError("monotangent order must be >= 1")
    if k in _COT_POLY_CACHE:
        return _COT_POLY_CACHE[k]
    # Te^k carries an overall pi^k; the cache stores the rational polynomial
    # in c and the caller multiplies pi^k back in.
    rat: dict[int, Fraction] = {1: Fraction(1)}
    order = 1
    _COT_POLY_CACHE[1] = dict(rat)
    while order < k:
        nxt: dict[int, Fraction] = {}
        for j, a in rat.items():
            for jj in (j - 1, j + 1):
                nxt[jj] = nxt.get(jj, Fraction(0)) + a * j
        rat = {j: a / order for j, a in nxt.items() if a}
        order += 1
        _COT_POLY_CACHE[order] = dict(rat)
    return _COT_POLY_CACHE[k]


def monotangent_eval(k: int, z, ctx: NumericContext = DEFAULT_CONTEXT):
    """Te^k(z) through the exact cotangent polynomial, so the derivative
    relation Te^(k+1) = -(1/k) d/dz Te^k holds by construction."""
    z = check_point(z, ctx.pole_guard)
    with ctx.workprec():
        c = mp.cot(mp.pi * z)
        total = mp.mpc(0)
        for j, coef in cot_poly(k).items():
            total += mp.mpf(coef.numerator) / coef.denominator * c**j
        return mp.pi**k * total


def _splits(s: Composition):
    """Deconcatenations s1 . s2 . s3 with the middle of length <= 1."""
    r = s.length
    for a in range(r + 1):
        yield s.parts[:a], (), s.parts[a:]
    for a in range(r):
        yield s.parts[:a], (s.parts[a],), s.parts[a + 1 :]


def multitangent_eval_direct(
    s: Composition, z, ctx: NumericContext = DEFAULT_CONTEXT
):
    """Bilateral nested sum for a convergent sequence, via the three-way
    split into positive-index, zero-pivot and negative-index chains.

    Piece errors are propagated through the products a posteriori; the piece
    targets shrink and the evaluation repeats (cheap, thanks to the sum
    cache) until the certified total meets the context target.
    """
    if not is_multitangent_convergent(s):
        raise ValueError(f"{s} is not a convergent multitangent index")
    z = check_point(z, ctx.pole_guard)
    with ctx.workprec():
        pieces = list(_splits(s))
        budget = ctx.target_abs_error / (8 * len(pieces))
        while True:
            total = mp.mpc(0)
            total_err = mp.mpf(0)
            for left, mid, right in pieces:
                parts = []  # (value, error-bound) per factor
                if left:
                    parts.append(
                        shifted_nested_sum(left, z, target=budget, cap=ctx.truncation_cap)
                    )
                if mid:
                    parts.append((mp.power(z, -mid[0]), mp.mpf(0)))
                if right:
                    rev = tuple(reversed(right))
                    v, e = shifted_nested_sum(rev, -z, target=budget, cap=ctx.truncation_cap)
                    parts.append((v * (-1) ** sum(right), e))
                term = mp.mpc(1)
                for v, _ in parts:
                    term *= v
                term_err = mp.mpf(0)
                for i, (_, e_i) in enumerate(parts):
                    others = mp.mpf(1)
                    for j, (v_j, e_j) in enumerate(parts):
                        if j != i:
                            others *= abs(v_j) + e_j
                    term_err += e_i * others
                total += term
                total_err += term_err
            if total_err <= ctx.target_abs_error:
                return total
            budget *= float(ctx.target_abs_error / (4 * total_err))


def multitangent_eval_reduced(
    s: Composition, z, ctx: NumericContext = DEFAULT_CONTEXT
):
    """Evaluate Te[s](z) from its reduction into monotangents.

    Monotangent values can be large near the real axis, so each zeta
    coefficient's error budget is scaled by the monotangent magnitude it
    multiplies.
    """
    if not s:
        raise ValueError("empty sequence")
    z = check_point(z, ctx.pole_guard)
    red = reduce(s)
    with ctx.workprec():
        total = mp.mpc(red.constant.to_mpf())
        mono = {k: monotangent_eval(k, z, ctx) for k in red.coeffs}
        n_terms = max(1, len(red.coeffs))
        for k, expr in sorted(red.coeffs.items()):
            sub = NumericContext(
                target_abs_error=float(
                    ctx.target_abs_error / (2 * n_terms * (abs(mono[k]) + 1))
                ),
                working_precision=ctx.working_precision,
                truncation_cap=ctx.truncation_cap,
                pole_guard=ctx.pole_guard,
            )
            total += mzv_numeric(expr, sub) * mono[k]
        return total


def hurwitz_eval(side: str, s: Composition, z, ctx: NumericContext = DEFAULT_CONTEXT):
    """One-sided Hurwitz nested sum He_+ / He_- at z.

    side "+": sum over 0 < n_r < ... < n_1, convergent for first part >= 2;
    side "-": sum over n_r < ... < n_1 < 0, convergent for last part >= 2.
    The length-one sequence (1) uses the subtracted series
    sum (1/(n+z) - 1/n), i.e. a digamma value.
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    # poles sit at z = -1, -2, ... for the + side and 1, 2, ... for the - side
    z = mp.mpc(z)
    pole_dir = -1 if side == "+" else 1
    nearest = mp.nint(mp.re(z))
    if pole_dir * nearest >= 1 and abs(z - mp.mpc(nearest, 0)) < ctx.pole_guard:
        raise PoleProximityError(f"{z} is within {ctx.pole_guard} of a pole")
    with ctx.workprec():
        if not s:
            return mp.mpc(1)
        if s.parts == (1,):
            if side == "+":
                return -mp.digamma(1 + z) - mp.euler
            return mp.digamma(1 - z) + mp.euler
        if side == "+":
            if s.parts[0] < 2:
                raise ValueError(f"He_+[{s}] diverges")
            v, _ = shifted_nested_sum(
                s.parts, z, target=ctx.target_abs_error, cap=ctx.truncation_cap
            )
            return v
        if s.parts[-1] < 2:
            raise ValueError(f"He_-[{s}] diverges")
        rev = tuple(reversed(s.parts))
        v, _ = shifted_nested_sum(
            rev, -z, target=ctx.target_abs_error, cap=ctx.truncation_cap
        )
        return v * (-1) ** s.weight


def trifactorization_residual(
    s: Composition, z, ctx: NumericContext = DEFAULT_CONTEXT
) -> float:
    """|Te[s](z) - sum over splits He_+ * Ce * He_-|.

    The left side is evaluated through the reduction (zeta values times
    cotangent polynomials), the right side through one-sided Hurwitz sums,
    so the two sides share no code path.
    """
    if not is_multitangent_convergent(s):
        raise ValueError(f"{s} is not convergent")
    z = check_point(z, ctx.pole_guard)
    with ctx.workprec():
        lhs = multitangent_eval_reduced(s, z, ctx)
        rhs = mp.mpc(0)
        for left, mid, right in _splits(s):
            term = mp.mpc(1)
            if left:
                term *= hurwitz_eval("+", Composition(left), z, ctx)
            if mid:
                term *= mp.power(z, -mid[0])
            if right:
                term *= hurwitz_eval("-", Composition(right), z, ctx)
            rhs += term
        return float(abs(lhs - rhs))


def fourier_coefficient(
    s: Composition, n: int, ctx: NumericContext = DEFAULT_CONTEXT
):
    """Coefficient T_hat_n of the expansion Te[s](z) = -sum_{n>0} T_hat_n q^n
    (Im z > 0, q = e^(2 pi i z)), from the reduction coefficients:

        T_hat_n = 2 i pi * sum_j sum_{k=2}^{s_j} (-2 i n pi)^(k-1)/(k-1)!
                  * Z(j, s_j - k; s).
    """
    if not is_multitangent_convergent(s):
        raise ValueError(f"{s} is not convergent")
    if n == 0:
        raise ValueError("n must be nonzero")
    with ctx.workprec():
        total = mp.mpc(0)
        for j in range(1, s.length + 1):
            s_j = s.parts[j - 1]
            for k in range(2, s_j + 1):
                expr = z_coeff(j, s_j - k, s)
                if not expr:
                    continue
                zval = mzv_numeric(expr, ctx)
                total += (-2j * n * mp.pi) ** (k - 1) / mp.factorial(k - 1) * zval
        return 2j * mp.pi * total


def fourier_partial_sum(
    s: Composition, z, n_terms: int, ctx: NumericContext = DEFAULT_CONTEXT
):
    """-sum_{n=1}^{N} T_hat_n q^n, valid for Im z > 0."""
    z = mp.mpc(z)
    if mp.im(z) <= 0:
        raise ValueError("partial Fourier sums require Im z > 0")
    with ctx.workprec():
        q = mp.exp(2j * mp.pi * z)
        total = mp.mpc(0)
        for n in range(1, n_terms + 1):
            total -= fourier_coefficient(s, n, ctx) * q**n
        return total


def fourier_tail_envelope(s: Composition, n_terms: int, y: float,
                          ctx: NumericContext = DEFAULT_CONTEXT) -> float:
    """Upper bound C with |Te[s](z) - partial sum| <= C * e^(-2 pi (N+1) y).

    Uses |T_hat_n| <= A * n^(M-1) with M = max part and A read off the
    coefficient formula, then sums the dominated geometric tail.
    """
    with ctx.workprec():
        big_m = max(s.parts)
        amp = mp.mpf(0)
        for j in range(1, s.length + 1):
            s_j = s.parts[j - 1]
            for k in range(2, s_j + 1):
                expr = z_coeff(j, s_j - k, s)
                if not expr:
                    continue
                zval = abs(mzv_numeric(expr, ctx)) + ctx.target_abs_error
                amp += 2 * mp.pi * (2 * mp.pi) ** (k - 1) / mp.factorial(k - 1) * zval
        x = mp.exp(-2 * mp.pi * y)
        # sum_{n > N} n^(M-1) x^n <= x^(N+1) * sum_{m>=0} (N+1+m)^(M-1) x^m
        tail = mp.mpf(0)
        m = 0
        while True:
            term = mp.mpf(n_terms + 1 + m) ** (big_m - 1) * x**m
            tail += term
            ratio = x * ((n_terms + 2 + m) / (n_terms + 1 + m)) ** (big_m - 1)
            if ratio < 0.5 and term < tail * mp.mpf("1e-30"):
                tail += term * ratio / (1 - ratio)
                break
            m += 1
            if m > 10_000:
                raise RuntimeError("tail envelope failed to converge")
        return float(amp * tail)


@dataclass
class BoundsReport:
    """Outcome of the growth-bound and flatness checks on a sample set."""

    sequence: Composition
    samples: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def flatness_and_bounds_check(
    s: Composition, z_samples, ctx: NumericContext = DEFAULT_CONTEXT
) -> BoundsReport:
    """Verify the two growth bounds and the exponential-flatness envelope.

    For every sample z off the real axis:
      * |Te[s](z)| <= 4 l / |Im z|^(w - l - 1);
      * if every part is >= 2 and |z| >= 1, additionally
        |Te[s](z)| <= (1/l!) (2/sqrt(|Im z|))^w;
      * for Im z >= 1, |Te[s](z)| e^(2 pi Im z) <= 4 l e^(2 pi)
        (Schwarz-lemma envelope anchored on the Im z = 1 line).
    """
    if not is_multitangent_convergent(s):
        raise ValueError(f"{s} is not convergent")
    report = BoundsReport(sequence=s)
    w, l = s.weight, s.length
    val2 = all(p >= 2 for p in s.parts)
    with ctx.workprec():
        for z in z_samples:
            z = mp.mpc(z)
            y = abs(mp.im(z))
            if y == 0:
                raise ValueError("samples must lie off the real axis")
            eval_ctx = NumericContext(
                target_abs_error=min(1e-8, float(mp.exp(-2 * mp.pi * y)) * 1e-4 + 1e-30),
                working_precision=max(ctx.working_precision, 160),
                truncation_cap=ctx.truncation_cap,
                pole_guard=ctx.pole_guard,
            )
            value = abs(multitangent_eval_direct(s, z, eval_ctx))
            entry = {"z": complex(z), "abs_value": float(value)}
            bound1 = 4 * l / y ** (w - l - 1)
            entry["bound_generic"] = float(bound1)
            if value > bound1 * (1 + 1e-9):
                report.violations.append(("generic_bound", complex(z), float(value)))
            if val2 and abs(z) >= 1:
                bound2 = (2 / mp.sqrt(y)) ** w / math.factorial(l)
                entry["bound_val2"] = float(bound2)
                if value > bound2 * (1 + 1e-9):
                    report.violations.append(("val2_bound", complex(z), float(value)))
            if y >= 1:
                envelope = 4 * l * mp.exp(2 * mp.pi) * mp.exp(-2 * mp.pi * y)
                entry["flatness_envelope"] = float(envelope)
                if value > envelope * (1 + 1e-9):
                    report.violations.append(("flatness", complex(z), float(value)))
            report.samples.append(entry)
    return report
