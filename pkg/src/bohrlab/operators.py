"""Integral operators on the unit ball: series images, certified
absolute-series (majorant) values, closed-form sup bounds, and adaptive
quadrature of the defining integrals.

Supported operators, acting on f(z) = sum a_n z^n analytic on the disk:

* ``CesaroBeta(beta)``  T_b[f](z) = integral_0^1 f(tz) (1-tz)**(-b) dt,
  with series coefficients ``(1/(n+1)) sum_{k<=n} c_{n-k}(b) a_k``.
* ``CBeta(beta)``       the variant for functions vanishing at 0, equal to
  ``z * T_b[h](z)`` for the Schwarz factor h(z) = f(z)/z.
* ``Bernardi(gamma, m)``  L_g[f](z) = integral_0^1 f(zt) t**(gamma-1) dt
  = sum_{n>=m} a_n/(n+gamma) z^n, for f with an m-fold zero and gamma > -m.
* ``Libera`` = Bernardi(1, 0), ``Alexander`` = Bernardi(0, 1), and
  ``PrimitiveI`` (the antiderivative integral_0^z f), which is the Libera
  image shifted up one index.

Majorant values carry certified truncation error: the partial sum differs
from the full absolute series by at most ``eps``, using the running-sum
identity ``sum_{k<=n} c_k(b) = c_n(b+1)`` and a geometric envelope for the
Cesaro family, and the plain geometric bound for the Bernardi family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .corpus import BoundedFunction, evaluate, multiply_by_z, schwarz_shift, taylor_coeffs
from .errors import (
    ParameterDomainError,
    PreconditionError,
    QuadratureError,
    TruncationError,
)
from .series import CoefficientSequence, CompensatedSum, binomial_coeffs, kahan_sum

__all__ = [
    "CesaroBeta",
    "CBeta",
    "Bernardi",
    "Libera",
    "Alexander",
    "PrimitiveI",
    "OperatorKind",
    "kernel_integral",
    "cesaro_series_order",
    "bernardi_series_order",
    "operator_coeffs",
    "majorant_value",
    "bohr_majorant",
    "quadrature_value",
    "sup_bound",
    "sup_bound_check",
    "cbeta_relation_residual",
    "adaptive_simpson",
    "MAX_SERIES_TERMS",
]

# Order cap for adaptive series truncation.
MAX_SERIES_TERMS = 10**6


@dataclass(frozen=True)
class CesaroBeta:
    beta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", float(self.beta))
        if self.beta <= 0.0:
            raise ParameterDomainError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class CBeta:
    beta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", float(self.beta))
        if self.beta <= 0.0:
            raise ParameterDomainError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class Bernardi:
    gamma: float
    m: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "m", int(self.m))
        if self.m < 0:
            raise ParameterDomainError(f"m must be nonnegative, got {self.m}")
        if self.gamma <= -self.m:
            raise ParameterDomainError(
                f"gamma must exceed -m, got gamma={self.gamma}, m={self.m}"
            )


@dataclass(frozen=True)
class Libera:
    """Bernardi with gamma = 1, m = 0."""


@dataclass(frozen=True)
class Alexander:
    """Bernardi with gamma = 0, m = 1."""


@dataclass(frozen=True)
class PrimitiveI:
    """The antiderivative operator: the Libera image shifted up one index."""


OperatorKind = Union[CesaroBeta, CBeta, Bernardi, Libera, Alexander, PrimitiveI]


def _bernardi_form(kind: OperatorKind) -> Bernardi:
    if isinstance(kind, Bernardi):
        return kind
    if isinstance(kind, (Libera, PrimitiveI)):
        return Bernardi(1.0, 0)
    if isinstance(kind, Alexander):
        return Bernardi(0.0, 1)
    raise TypeError(f"not a Bernardi-family kind: {kind!r}")


def required_origin_zeros(kind: OperatorKind) -> int:
    """How many leading zero coefficients the operand must carry."""
    if isinstance(kind, (CesaroBeta, Libera, PrimitiveI)):
        return 0
    if isinstance(kind, CBeta):
        return 1
    return _bernardi_form(kind).m


def kernel_integral(beta: float, r: float) -> float:
    """``integral_0^r (1-t)**(-beta) dt``, evaluated stably.

    Uses ``-expm1((1-beta) log1p(-r)) / (1-beta)`` away from beta = 1 and
    the exact logarithmic limit when ``|1 - beta| < 1e-8``.
    """
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    if beta <= 0.0:
        raise ParameterDomainError(f"beta must be positive, got {beta}")
    log_base = math.log1p(-r)
    if abs(1.0 - beta) < 1e-8:
        return -log_base
    return -math.expm1((1.0 - beta) * log_base) / (1.0 - beta)


def cesaro_series_order(beta: float, r: float, eps: float) -> int:
    """Smallest order N whose certified Cesaro-majorant tail is at most eps.

    Terms with unit-ball coefficients are dominated by
    ``t_n = c_n(beta+1) r**n / (n+1)``; past N the ratio of consecutive
    dominating terms never exceeds ``q = r * max(1, (N+1+beta)/(N+2))``, so
    the tail is at most ``t_{N+1} / (1 - q)``.
    """
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    if eps <= 0.0:
        raise ParameterDomainError("eps must be positive")
    c_next = 1.0  # c_0(beta + 1)
    r_pow = r  # r**(n+1) while scanning n
    for n in range(MAX_SERIES_TERMS):
        c_np1 = c_next * (n + beta + 1.0) / (n + 1.0)
        t_next = c_np1 * r_pow / (n + 2.0)
        q = r * max(1.0, (n + 1.0 + beta) / (n + 2.0))
        if q < 1.0 and t_next / (1.0 - q) <= eps:
            return n
        c_next = c_np1
        r_pow *= r
    raise TruncationError(
        f"Cesaro majorant tail will not reach eps={eps} within {MAX_SERIES_TERMS} terms"
    )


def bernardi_series_order(gamma: float, r: float, eps: float, start: int = 0) -> int:
    """Smallest N >= start with ``r**(N+1) / ((N+1+gamma)(1-r)) <= eps``."""
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    if eps <= 0.0:
        raise ParameterDomainError("eps must be positive")
    for n in range(start, MAX_SERIES_TERMS):
        if r ** (n + 1) / ((n + 1 + gamma) * (1.0 - r)) <= eps:
            return n
    raise TruncationError(
        f"Bernardi majorant tail will not reach eps={eps} within {MAX_SERIES_TERMS} terms"
    )


def _require_leading_zeros(f: CoefficientSequence, m: int, what: str) -> None:
    if m == 0:
        return
    lead = f.entries[: min(m, len(f))]
    if np.max(np.abs(lead)) > 1e-12:
        raise PreconditionError(
            f"{what} requires the first {m} coefficients to vanish, got {lead}"
        )


def operator_coeffs(
    kind: OperatorKind, f: CoefficientSequence, n_max: int
) -> CoefficientSequence:
    """Taylor coefficients of the operator image, truncated at ``n_max``."""
    if n_max < 0:
        raise ParameterDomainError(f"n_max must be nonnegative, got {n_max}")
    if f.order < n_max:
        raise TruncationError(f"input order {f.order} is below the requested {n_max}")

    if isinstance(kind, CesaroBeta):
        c = binomial_coeffs(kind.beta, n_max).weights
        conv = np.convolve(c, f.entries[: n_max + 1])[: n_max + 1]
        return CoefficientSequence(conv / np.arange(1, n_max + 2))

    if isinstance(kind, CBeta):
        _require_leading_zeros(f, 1, "the vanishing-at-origin Cesaro variant")
        out = np.zeros(n_max + 1, dtype=np.complex128)
        if n_max >= 1:
            inner = operator_coeffs(
                CesaroBeta(kind.beta), CoefficientSequence(f.entries[1:]), n_max - 1
            )
            out[1:] = inner.entries
        return CoefficientSequence(out)

    if isinstance(kind, PrimitiveI):
        out = np.zeros(n_max + 1, dtype=np.complex128)
        if n_max >= 1:
            n = np.arange(n_max, dtype=np.float64)
            out[1:] = f.entries[:n_max] / (n + 1.0)
        return CoefficientSequence(out)

    bern = _bernardi_form(kind)
    _require_leading_zeros(f, bern.m, "the Bernardi operator")
    out = np.zeros(n_max + 1, dtype=np.complex128)
    if n_max >= bern.m:
        n = np.arange(bern.m, n_max + 1, dtype=np.float64)
        out[bern.m :] = f.entries[bern.m : n_max + 1] / (n + bern.gamma)
    return CoefficientSequence(out)


def _check_unit_coeffs(f: CoefficientSequence) -> np.ndarray:
    absf = f.abs_entries()
    if absf.max() > 1.0 + 1e-9:
        raise ParameterDomainError(
            "majorant tail bounds assume unit-ball coefficients; "
            f"max |a_k| = {absf.max()}"
        )
    return absf


def _cesaro_abs_series(beta: float, absf: np.ndarray, r: float, eps: float) -> float:
    n_stop = cesaro_series_order(beta, r, eps)
    c = binomial_coeffs(beta, n_stop).weights
    conv = np.convolve(c, absf[: n_stop + 1])[: n_stop + 1]
    terms = conv * r ** np.arange(n_stop + 1) / np.arange(1, n_stop + 2)
    return kahan_sum(terms)


def _bernardi_abs_series(
    gamma: float, m: int, absf: np.ndarray, r: float, eps: float
) -> float:
    acc = CompensatedSum()
    for n in range(m, absf.size):
        if r**n / ((n + gamma) * (1.0 - r)) <= eps:
            break
        acc.add(absf[n] / (n + gamma) * r**n)
    return acc.value


def majorant_value(
    kind: OperatorKind, f: CoefficientSequence, r: float, eps: float = 1e-12
) -> float:
    """Absolute series of the operator image at radius ``r``, within ``eps``.

    The input must represent a unit-ball member (``|a_k| <= 1``), which the
    tail bounds rely on.  Truncation is adaptive; exceeding the order cap
    raises ``TruncationError``.
    """
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    if eps <= 0.0:
        raise ParameterDomainError("eps must be positive")
    absf = _check_unit_coeffs(f)

    if isinstance(kind, CesaroBeta):
        return _cesaro_abs_series(kind.beta, absf, r, eps)
    if isinstance(kind, CBeta):
        _require_leading_zeros(f, 1, "the vanishing-at-origin Cesaro variant")
        shifted = absf[1:] if f.order >= 1 else np.zeros(1)
        return r * _cesaro_abs_series(kind.beta, shifted, r, eps)
    if isinstance(kind, PrimitiveI):
        return r * _bernardi_abs_series(1.0, 0, absf, r, eps)
    bern = _bernardi_form(kind)
    _require_leading_zeros(f, bern.m, "the Bernardi operator")
    return _bernardi_abs_series(bern.gamma, bern.m, absf, r, eps)


def bohr_majorant(f: CoefficientSequence, r: float) -> float:
    """Plain absolute series ``sum |a_n| r**n`` of the coefficients themselves."""
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    absf = f.abs_entries()
    return kahan_sum(absf * r ** np.arange(absf.size))


def adaptive_simpson(
    fn: Callable[[float], complex],
    a: float,
    b: float,
    tol: float,
    max_depth: int = 60,
) -> complex:
    """Adaptive Simpson quadrature with Richardson extrapolation.

    Works on complex-valued integrands of a real variable; the error
    estimate uses the modulus of the panel defect.  Raises
    ``QuadratureError`` when the subdivision budget runs out.
    """
    if tol <= 0.0:
        raise ParameterDomainError("tol must be positive")
    if a == b:
        return 0.0 + 0.0j

    def simpson(fa: complex, fm: complex, fb: complex, h: float) -> complex:
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(
        lo: float,
        hi: float,
        flo: complex,
        fmid: complex,
        fhi: complex,
        whole: complex,
        budget: float,
        depth: int,
    ) -> complex:
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = fn(lm)
        frm = fn(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        defect = left + right - whole
        if abs(defect) <= 15.0 * budget:
            return left + right + defect / 15.0
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive quadrature stalled on [{lo}, {hi}] at depth {depth}"
            )
        return recurse(lo, mid, flo, flm, fmid, left, budget / 2.0, depth + 1) + recurse(
            mid, hi, fmid, frm, fhi, right, budget / 2.0, depth + 1
        )

    fa_, fb_ = fn(a), fn(b)
    mid = 0.5 * (a + b)
    fm_ = fn(mid)
    whole = simpson(fa_, fm_, fb_, b - a)
    return recurse(a, b, fa_, fm_, fb_, whole, tol, 0)


def quadrature_value(
    kind: OperatorKind, f: BoundedFunction, z: complex, tol: float = 1e-10
) -> complex:
    """The defining integral of the operator at ``z``, to absolute ``tol``.

    Endpoint singularities of the Bernardi kernel (gamma < 1) are removed by
    splitting off the m-fold zero of the operand and substituting
    ``u = t**(m + gamma)`` when the combined exponent stays below 1.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise ParameterDomainError(f"|z| must be < 1, got {abs(z)}")

    if isinstance(kind, CesaroBeta):
        beta = kind.beta
        return adaptive_simpson(
            lambda t: evaluate(f, t * z) * (1.0 - t * z) ** (-beta), 0.0, 1.0, tol
        )

    if isinstance(kind, CBeta):
        beta = kind.beta
        h = schwarz_shift(f, 1)
        return z * adaptive_simpson(
            lambda t: evaluate(h, t * z) * (1.0 - t * z) ** (-beta), 0.0, 1.0, tol
        )

    if isinstance(kind, PrimitiveI):
        return z * adaptive_simpson(lambda t: evaluate(f, t * z), 0.0, 1.0, tol)

    bern = _bernardi_form(kind)
    gamma, m = bern.gamma, bern.m
    if gamma >= 1.0:
        return adaptive_simpson(
            lambda t: evaluate(f, t * z) * t ** (gamma - 1.0), 0.0, 1.0, tol
        )
    h = schwarz_shift(f, m)
    s = m + gamma
    zm = z**m
    if s >= 1.0:
        return zm * adaptive_simpson(
            lambda t: evaluate(h, t * z) * t ** (s - 1.0), 0.0, 1.0, tol
        )
    # 0 < s < 1: substitute u = t**s, which flattens the endpoint.
    inv_s = 1.0 / s
    return (
        zm
        / s
        * adaptive_simpson(lambda u: evaluate(h, u**inv_s * z), 0.0, 1.0, tol * s)
    )


def sup_bound(kind: OperatorKind, r: float) -> float:
    """Sharp closed-form bound on the operator image modulus over the class.

    Over the unit ball (with the required origin zeros) and ``|z| = r``:
    the Cesaro family is bounded by ``kernel_integral(beta, r) / r``, its
    vanishing-at-origin variant by ``kernel_integral(beta, r)``, and the
    Bernardi family by ``r**m / (m + gamma)``.
    """
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    if isinstance(kind, CesaroBeta):
        return kernel_integral(kind.beta, r) / r
    if isinstance(kind, CBeta):
        return kernel_integral(kind.beta, r)
    if isinstance(kind, PrimitiveI):
        return r
    bern = _bernardi_form(kind)
    return r**bern.m / (bern.m + bern.gamma)


def sup_bound_check(
    kind: OperatorKind,
    f: BoundedFunction,
    r: float,
    samples: int,
    tol: float = 1e-10,
) -> float:
    """Sampled excess of the integral modulus over the closed-form bound.

    Returns ``max_j |K[f](r e^{i theta_j})| - sup_bound(kind, r)`` over
    equispaced angles (theta = 0 included, where the bound is attained by
    the constant 1).  Nonpositive within 1e-9 certifies the sample check.
    """
    if not 0.0 < r < 1.0:
        raise ParameterDomainError(f"r must lie in (0, 1), got {r}")
    if samples < 8:
        raise ParameterDomainError(f"samples must be >= 8, got {samples}")
    bound = sup_bound(kind, r)
    worst = -math.inf
    for j in range(samples):
        zj = r * complex(math.cos(2 * math.pi * j / samples), math.sin(2 * math.pi * j / samples))
        worst = max(worst, abs(quadrature_value(kind, f, zj, tol)) - bound)
    return worst


def cbeta_relation_residual(
    h: BoundedFunction, beta: float, r: float, eps: float = 1e-12
) -> float:
    """Defect of the index-shift relation between the two Cesaro forms.

    For g(z) = z h(z), the absolute series of the vanishing-at-origin
    variant applied to g must equal ``r`` times the absolute series of the
    plain operator applied to h; returns the difference, which is at most
    ``2 * eps``.
    """
    n_inner = cesaro_series_order(beta, r, eps)
    g = multiply_by_z(h)
    lhs = majorant_value(CBeta(beta), taylor_coeffs(g, n_inner + 1), r, eps)
    rhs = r * majorant_value(CesaroBeta(beta), taylor_coeffs(h, n_inner), r, eps)
    return abs(lhs - rhs)
