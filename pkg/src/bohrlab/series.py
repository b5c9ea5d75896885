"""Truncated power-series arithmetic and the binomial weight engine.

Coefficient sequences are dense complex vectors ``a_0 .. a_N`` with an
explicit truncation order; nothing in this module resizes implicitly.  The
weights ``c_n(beta)``, the Taylor coefficients of ``(1 - x)**(-beta)``,
drive every integral operator in the package.  They are generated by the
multiplicative recurrence ``c_n = c_{n-1} * (n - 1 + beta) / n`` rather
than by Gamma-function quotients: the weights grow only like
``n**(beta - 1)``, so the recurrence stays finite and accurate for orders
in the thousands where naive Gamma evaluation would overflow.

All arithmetic is IEEE-754 binary64.  Long real sums are accumulated with
compensated (Kahan) summation so that absolute-series values retain about
1e-12 absolute accuracy near the radii of interest.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterDomainError, TruncationError

__all__ = [
    "CompensatedSum",
    "kahan_sum",
    "CoefficientSequence",
    "BinomialWeights",
    "binomial_coeffs",
    "cauchy_product",
    "geometric_coeffs",
    "cumulative_identity_residual",
    "horner",
]


class CompensatedSum:
    """Kahan-compensated running sum of binary64 terms."""

    __slots__ = ("_total", "_carry")

    def __init__(self) -> None:
        self._total = 0.0
        self._carry = 0.0

    def add(self, term: float) -> None:
        y = term - self._carry
        t = self._total + y
        self._carry = (t - self._total) - y
        self._total = t

    @property
    def value(self) -> float:
        return self._total


def kahan_sum(terms: Iterable[float]) -> float:
    """Sum an iterable of floats with Kahan compensation."""
    acc = CompensatedSum()
    for term in terms:
        acc.add(float(term))
    return acc.value


class CoefficientSequence:
    """Taylor coefficients ``a_0 .. a_N`` of an analytic function.

    The truncation order ``N`` equals ``len(entries) - 1``.  Entries are
    stored as an immutable complex vector and validated to be finite.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Sequence[complex] | np.ndarray) -> None:
        arr = np.array(entries, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterDomainError(
                "a coefficient sequence needs at least the constant term"
            )
        if not np.all(np.isfinite(arr)):
            raise ParameterDomainError("coefficient entries must be finite")
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def order(self) -> int:
        return self._entries.size - 1

    def __len__(self) -> int:
        return self._entries.size

    def __getitem__(self, n: int) -> complex:
        return complex(self._entries[n])

    def abs_entries(self) -> np.ndarray:
        return np.abs(self._entries)

    def __repr__(self) -> str:
        head = np.array2string(self._entries[:4], precision=6, separator=", ")
        return f"CoefficientSequence(order={self.order}, entries={head}...)"


class BinomialWeights:
    """Weights ``c_0 .. c_N`` of ``(1 - x)**(-beta)`` for fixed ``beta > 0``."""

    __slots__ = ("_beta", "_weights")

    def __init__(self, beta: float, weights: np.ndarray) -> None:
        if beta <= 0.0:
            raise ParameterDomainError(f"beta must be positive, got {beta}")
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ParameterDomainError("weights must be a nonempty vector")
        if w[0] != 1.0:
            raise ParameterDomainError("the zeroth weight must be exactly 1")
        if not np.all(w > 0.0) or not np.all(np.isfinite(w)):
            raise ParameterDomainError("weights must be finite and strictly positive")
        w.setflags(write=False)
        self._beta = float(beta)
        self._weights = w

    @property
    def beta(self) -> float:
        return self._beta

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def __len__(self) -> int:
        return self._weights.size

    def __getitem__(self, n: int) -> float:
        return float(self._weights[n])

    def __repr__(self) -> str:
        return f"BinomialWeights(beta={self._beta}, order={len(self) - 1})"


def binomial_coeffs(beta: float, n_max: int) -> BinomialWeights:
    """Weights ``c_n = Gamma(n+beta) / (Gamma(n+1) Gamma(beta))`` for ``n <= n_max``.

    Built by the multiplicative recurrence ``c_n = c_{n-1} (n-1+beta)/n``,
    never by Gamma evaluation.
    """
    if beta <= 0.0:
        raise ParameterDomainError(f"beta must be positive, got {beta}")
    if n_max < 0:
        raise ParameterDomainError(f"n_max must be nonnegative, got {n_max}")
    w = np.empty(n_max + 1, dtype=np.float64)
    w[0] = 1.0
    if n_max > 0:
        n = np.arange(1, n_max + 1, dtype=np.float64)
        w[1:] = np.cumprod((n - 1.0 + beta) / n)
    return BinomialWeights(beta, w)


def cauchy_product(
    u: CoefficientSequence, v: CoefficientSequence, n_max: int
) -> CoefficientSequence:
    """Coefficients of the product series, truncated at order ``n_max``.

    Both inputs must carry at least ``n_max + 1`` coefficients; product
    coefficients up to ``n_max`` depend on nothing beyond that.
    """
    if n_max < 0:
        raise ParameterDomainError(f"n_max must be nonnegative, got {n_max}")
    if u.order < n_max or v.order < n_max:
        raise TruncationError(
            f"inputs of order {u.order} and {v.order} cannot produce order {n_max}"
        )
    conv = np.convolve(u.entries[: n_max + 1], v.entries[: n_max + 1])
    return CoefficientSequence(conv[: n_max + 1])


def geometric_coeffs(alpha: complex, n_max: int) -> CoefficientSequence:
    """Coefficients ``alpha**n`` of ``1 / (1 - alpha z)`` for ``|alpha| < 1``."""
    if n_max < 0:
        raise ParameterDomainError(f"n_max must be nonnegative, got {n_max}")
    alpha = complex(alpha)
    if abs(alpha) >= 1.0:
        raise ParameterDomainError(f"|alpha| must be < 1, got {abs(alpha)}")
    return CoefficientSequence(alpha ** np.arange(n_max + 1))


def cumulative_identity_residual(beta: float, n_max: int) -> float:
    """Worst relative defect of the running-sum identity for the weights.

    The partial sums of ``c_n(beta)`` coincide with ``c_n(beta + 1)``;
    this returns ``max_n |sum_{k<=n} c_k(beta) - c_n(beta+1)| / c_n(beta+1)``
    over ``0 <= n <= n_max``, with the running sum Kahan-compensated.
    """
    base = binomial_coeffs(beta, n_max).weights
    bumped = binomial_coeffs(beta + 1.0, n_max).weights
    running = CompensatedSum()
    worst = 0.0
    for n in range(n_max + 1):
        running.add(base[n])
        rel = abs(running.value - bumped[n]) / bumped[n]
        if rel > worst:
            worst = rel
    return float(worst)


def horner(seq: CoefficientSequence, z: complex) -> complex:
    """Evaluate the truncated series at ``z`` by Horner's rule."""
    z = complex(z)
    acc = 0.0 + 0.0j
    for c in seq.entries[::-1]:
        acc = acc * z + c
    return acc
