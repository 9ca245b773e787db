"""Multiple zeta symbols: stuffle products, the symmetrel extension to
sequences with leading ones (normalized by Ze[1] = 0), the reflected values
Ze_-, and the high-precision numeric oracle.

A zeta symbol Ze[s] stands for the nested sum over 0 < n_r < ... < n_1 of
prod n_i^(-s_i); it converges iff the first part is at least 2.  Symbols with
leading ones are resolved by the unique stuffle-compatible extension fixing
Ze[1] = 0, which the recursion of :func:`symmetrel_extend` computes.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import PrecisionUnreachableError
from .exact import CoeffExpr, MzvMonomial, PiRational
from .words import Composition, WordPoly, stuffle
from . import zetasum


@dataclass(frozen=True)
class NumericContext:
    """Settings for every numeric routine in the package.

    target_abs_error: requested absolute error for a single evaluation.
    working_precision: mpmath precision in bits.
    truncation_cap: largest summation cutoff the nested-sum engine may use.
    pole_guard: minimum allowed distance from an evaluation point to the
        integers.
    """

    target_abs_error: float = 1e-10
    working_precision: int = 128
    truncation_cap: int = 200_000
    pole_guard: float = 1e-3

    def __post_init__(self) -> None:
        if self.target_abs_error <= 0:
            raise ValueError("target_abs_error must be positive")
        if self.truncation_cap < 10:
            raise ValueError("truncation_cap must be at least 10")

    def workprec(self):
        return mp.workprec(self.working_precision)


DEFAULT_CONTEXT = NumericContext()


def mzv_product(a: Composition, b: Composition) -> CoeffExpr:
    """Stuffle linearization of Ze[a]*Ze[b] as a sum of single symbols."""
    out = CoeffExpr.zero()
    for word, mult in stuffle(a, b).items():
        out = out + CoeffExpr.symbol(word, mult)
    return out


@functools.lru_cache(maxsize=None)
def symmetrel_extend(s: Composition) -> CoeffExpr:
    """Value of Ze[s] in the unique stuffle-compatible extension with Ze[1]=0.

    For a convergent s this is the symbol itself.  A leading one is removed
    through

        m * Ze[1^m . t] = Ze[1] * Ze[1^(m-1) . t] - (other stuffle terms),

    whose right side only involves sequences with fewer leading ones, so the
    recursion grounds out in convergent symbols.  The result is an exact
    rational combination of convergent symbols.
    """
    if not s:
        return CoeffExpr.scalar(1)
    if s.parts[0] >= 2:
        return CoeffExpr.symbol(s)
    tail = Composition(s.parts[1:])
    expansion = stuffle(Composition((1,)), tail)
    mult_s = expansion[s]
    acc = CoeffExpr.zero()
    for word, mult in expansion.items():
        if word == s:
            continue
        acc = acc + symmetrel_extend(word).scale(mult)
    # Ze[1] * Ze[tail] = 0 under the chosen normalization
    return acc.scale(Fraction(-1, mult_s))


def ze_minus(s: Composition) -> CoeffExpr:
    """Reflected value Ze_-[s] = (-1)^weight * Ze[reverse(s)].

    Defined directly for s with last part >= 2; a trailing one reverses into
    a leading one and is resolved by the symmetrel extension.
    """
    return symmetrel_extend(s.reverse()).scale(Fraction((-1) ** s.weight))


def linearize(expr: CoeffExpr) -> CoeffExpr:
    """Rewrite every product of zeta symbols as a sum of single symbols."""
    out = CoeffExpr.zero()
    for mono, coef in expr.items():
        term = CoeffExpr.scalar(coef)
        for factor in mono.factors:
            linered = CoeffExpr.zero()
            for m2, c2 in term.items():
                if m2.degree == 0:
                    linered = linered + CoeffExpr.symbol(factor, c2)
                else:
                    (prev,) = m2.factors
                    for word, mult in stuffle(prev, factor).items():
                        linered = linered + CoeffExpr.symbol(word, c2 * mult)
            term = linered
        out = out + term
    return out


@functools.lru_cache(maxsize=None)
def bernoulli_fraction(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2)."""
    if n == 0:
        return Fraction(1)
    row = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
    return row[0]


def even_zeta(n: int) -> PiRational:
    """zeta(2n) as an exact rational multiple of pi^(2n)."""
    if n < 1:
        raise ValueError("need n >= 1")
    b = bernoulli_fraction(2 * n)
    coef = Fraction((-1) ** (n + 1)) * b * Fraction(2 ** (2 * n - 1), math.factorial(2 * n))
    return PiRational({2 * n: coef})


def _numeric_symbol(s: Composition, target: float, ctx: NumericContext):
    value, err = zetasum.shifted_nested_sum(
        s.parts, 0, target=target, cap=ctx.truncation_cap
    )
    return value, err


def mzv_numeric(expr: CoeffExpr | Composition, ctx: NumericContext = DEFAULT_CONTEXT):
    """Numeric value of an exact expression, certified to ctx.target_abs_error.

    Divergent symbols are resolved through the symmetrel extension first.
    Raises PrecisionUnreachableError if a factor cannot be certified within
    the truncation cap.
    """
    if isinstance(expr, Composition):
        expr = symmetrel_extend(expr)
    with ctx.workprec():
        resolved = CoeffExpr.zero()
        for mono, coef in expr.items():
            term = CoeffExpr({MzvMonomial.one(): coef})
            for factor in mono.factors:
                term = term * symmetrel_extend(factor)
            resolved = resolved + term

        terms = list(resolved.items())
        if not terms:
            return mp.mpf(0)
        budget = ctx.target_abs_error / len(terms)
        total = mp.mpf(0)
        err_total = mp.mpf(0)
        for mono, coef in terms:
            c = coef.to_mpf()
            factors = []
            # convergent factor values sit below zeta(2) < 2, so dividing the
            # term budget by 4*degree*(|c|+1) keeps the product error inside it
            share = budget / (4 * max(1, mono.degree) * (abs(c) + 1))
            for s in mono.factors:
                fv, fe = _numeric_symbol(s, min(1e-6, float(share)), ctx)
                factors.append((fv, fe))
            prod = mp.mpf(1)
            for fv, _ in factors:
                prod *= fv
            prod_err = mp.mpf(0)
            for i, (fv, fe) in enumerate(factors):
                others = mp.mpf(1)
                for j, (gv, ge) in enumerate(factors):
                    if j != i:
                        others *= abs(gv) + ge
                prod_err += fe * others
            total += c * prod
            err_total += abs(c) * prod_err
        if err_total > ctx.target_abs_error:
            raise PrecisionUnreachableError(
                f"certified only {float(err_total):.3e}", achieved=float(err_total)
            )
        return mp.re(total)  # zeta expressions are real


def newton_relation_check(omega: int, p: int) -> bool:
    """Check the power-sum recursion for repeated letters at the word level:

        stuffle(w^p, w) = (p+1) w^(p+1) + sum_k (w^k, 2w, w^(p-k-1)).

    Pure word combinatorics; holds for every symmetrel mould by linearity.
    """
    if omega < 1 or p < 0:
        raise ValueError("need omega >= 1 and p >= 0")
    left = stuffle(Composition((omega,) * p), Composition((omega,)))
    expected: dict[Composition, int] = {}
    top = Composition((omega,) * (p + 1))
    expected[top] = expected.get(top, 0) + (p + 1)
    for k in range(p):
        word = Composition((omega,) * k + (2 * omega,) + (omega,) * (p - k - 1))
        expected[word] = expected.get(word, 0) + 1
    return left == WordPoly(expected)
