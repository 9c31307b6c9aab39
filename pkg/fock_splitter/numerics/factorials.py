"""Log-space factorials and binomial factors.

Factorials are never materialized as floats; every coefficient is assembled
as a sum of logarithms and exponentiated once by the caller.
"""

import math
import operator

import numpy as np
from scipy import special

from fock_splitter.exceptions import DomainError

# Exact cumulative table covers 0..TABLE_LIMIT; gammaln takes over above.
TABLE_LIMIT = 1024


def _build_table() -> np.ndarray:
    table = np.zeros(TABLE_LIMIT + 1)
    factorial = 1
    for k in range(2, TABLE_LIMIT + 1):
        factorial *= k
        table[k] = math.log(factorial)
    table.setflags(write=False)
    return table


_LOG_FACTORIALS = _build_table()


def _as_count(value, name: str) -> int:
    try:
        count = operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {value!r}") from None
    if count < 0:
        raise DomainError(f"{name} must be non-negative, got {count}")
    return count


def log_factorial(n: int) -> float:
    """Return ln(n!)."""
    n = _as_count(n, "n")
    if n <= TABLE_LIMIT:
        return float(_LOG_FACTORIALS[n])
    return float(special.gammaln(n + 1))


def log_factorial_array(ns) -> np.ndarray:
    """Vectorized ln(n!) over an integer array of non-negative counts."""
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size and ns.min() < 0:
        raise DomainError("factorial arguments must be non-negative")
    if ns.size == 0 or ns.max() <= TABLE_LIMIT:
        return _LOG_FACTORIALS[ns]
    small = np.minimum(ns, TABLE_LIMIT)
    return np.where(ns <= TABLE_LIMIT, _LOG_FACTORIALS[small], special.gammaln(ns + 1.0))


def log_binomial_array(n, m) -> np.ndarray:
    """Vectorized ln C(n, m) from the factorial table; callers guarantee 0 <= m <= n."""
    n = np.asarray(n, dtype=np.int64)
    m = np.asarray(m, dtype=np.int64)
    return log_factorial_array(n) - (log_factorial_array(m) + log_factorial_array(n - m))


def log_binomial(n: int, m: int) -> float:
    """Return ln C(n, m) as a compensated sum of ln((n-k+j)/j), k = min(m, n-m).

    Both (n, m) and (n, n-m) take the same arithmetic path, so the result is
    exactly symmetric.
    """
    n = _as_count(n, "n")
    m = _as_count(m, "m")
    if m > n:
        raise DomainError(f"m={m} exceeds n={n}")
    k = min(m, n - m)
    if k == 0:
        return 0.0
    j = np.arange(1, k + 1, dtype=np.float64)
    return math.fsum(np.log1p((n - k) / j))


def sqrt_binomial(n: int, m: int) -> float:
    """Return sqrt(C(n, m)) without forming C(n, m); inf when it exceeds float range."""
    try:
        return math.exp(0.5 * log_binomial(n, m))
    except OverflowError:
        return math.inf
