"""Special-function and combinatorial kernels for the outage closed forms.

Three ingredients recur in every formula of this package: the regularized
lower incomplete gamma function (the CDF of an integer-shape Gamma law),
weak integer compositions with their multinomial weights (the expansion of
a K-fold CDF product), and alternating sums whose terms span many orders of
magnitude.  The convention throughout the package is that per-term products
are assembled in log space and exponentiated once per term, while top-level
alternating sums run in linear space through ``compensated_sum``, which
reports enough information for callers to detect a loss of significance
instead of returning quiet noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy import special as _special

__all__ = [
    "DEFAULT_COMPOSITION_CAP",
    "SIGNIFICANCE_LOSS_RATIO",
    "CompositionCapError",
    "WeakComposition",
    "compensated_sum",
    "enumerate_weak_compositions",
    "log_gamma",
    "regularized_lower_gamma",
    "significance_lost",
]

DEFAULT_COMPOSITION_CAP = 10_000_000

# |sum| / max|term| below this ratio means the cancellation ate more than
# roughly 50 bits of the terms; callers surface that as a significance flag.
SIGNIFICANCE_LOSS_RATIO = 1e-10


class CompositionCapError(ValueError):
    """Requested composition enumeration is too large to run."""

    def __init__(self, k: int, num_parts: int, count: int, cap: int):
        self.k = k
        self.num_parts = num_parts
        self.count = count
        self.cap = cap
        super().__init__(
            f"enumerating weak compositions of k={k} into num_parts={num_parts} "
            f"parts would yield {count} terms, above the cap of {cap}"
        )


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function, x > 0 only."""
    if x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def regularized_lower_gamma(s, x):
    """Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).

    ``s`` must be positive; ``x`` may be a scalar or an array of
    non-negative values.  Scalar input returns a plain float.
    """
    if np.any(np.asarray(s) <= 0.0):
        raise ValueError(f"regularized_lower_gamma requires s > 0, got {s}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("regularized_lower_gamma requires x >= 0")
    out = _special.gammainc(s, x_arr)
    return float(out) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class WeakComposition:
    """One term of the multinomial expansion of (sum_{m<M} x^m / m!)^k.

    ``parts[m]`` counts how many of the k factors contributed the x^m / m!
    monomial.  ``beta1`` is the resulting power of x and ``beta2`` the number
    of factors (always k).
    """

    parts: tuple[int, ...]
    multinomial_coeff: int
    inv_factorial_product: float
    beta1: int
    beta2: int


def enumerate_weak_compositions(
    k: int, num_parts: int, cap: int = DEFAULT_COMPOSITION_CAP
) -> Iterator[WeakComposition]:
    """Yield all weak compositions of ``k`` into ``num_parts`` ordered parts.

    The order is deterministic: lexicographically decreasing, starting at
    (k, 0, ..., 0) and ending at (0, ..., 0, k).  The expected number of
    compositions C(k + num_parts - 1, num_parts - 1) is checked against
    ``cap`` before any term is produced.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if num_parts < 1:
        raise ValueError(f"num_parts must be >= 1, got {num_parts}")
    count = math.comb(k + num_parts - 1, num_parts - 1)
    if count > cap:
        raise CompositionCapError(k, num_parts, count, cap)
    return _generate_compositions(k, num_parts)


def _generate_compositions(k: int, num_parts: int) -> Iterator[WeakComposition]:
    k_factorial = math.factorial(k)
    parts = [0] * num_parts
    parts[0] = k
    while True:
        coeff = k_factorial
        inv_fact = 1.0
        beta1 = 0
        for m, p in enumerate(parts):
            if p:
                coeff //= math.factorial(p)
                inv_fact *= (1.0 / math.factorial(m)) ** p
                beta1 += m * p
        yield WeakComposition(
            parts=tuple(parts),
            multinomial_coeff=coeff,
            inv_factorial_product=inv_fact,
            beta1=beta1,
            beta2=k,
        )
        if parts[-1] == k:
            return
        # Move one unit right of the rightmost positive entry before the last
        # slot, folding whatever sits in the last slot back in with it.
        j = num_parts - 2
        while parts[j] == 0:
            j -= 1
        tail = parts[-1]
        parts[-1] = 0
        parts[j] -= 1
        parts[j + 1] = tail + 1


def compensated_sum(terms: Iterable[float]) -> tuple[float, float]:
    """Neumaier-compensated sum of a stream of floats.

    Returns ``(total, largest)`` where ``largest`` is the largest magnitude
    seen among the individual terms.  Callers combine the two through
    ``significance_lost`` to detect catastrophic cancellation.  NaN inputs
    propagate to the total.
    """
    total = 0.0
    comp = 0.0
    largest = 0.0
    for t in terms:
        t = float(t)
        mag = abs(t)
        if mag > largest:
            largest = mag
        s = total + t
        if abs(total) >= mag:
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
    return total + comp, largest


def significance_lost(total: float, largest: float) -> bool:
    """True when an alternating sum cancelled below the trust threshold."""
    return largest > 0.0 and abs(total) < SIGNIFICANCE_LOSS_RATIO * largest
