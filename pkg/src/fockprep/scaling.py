"""Gate-count bounds and scaling comparisons.

The worst-case total for an m-electron state on n qubits obeys

    N(n, m) = 2 N(n-1, m-1) + N(n-1, m) + 2

with N(p, 0) = 0, N(p, p) = p and N(p, 1) = 4p - 3, evaluated here with
exact integer arithmetic.  Closed forms exist for m <= 2.  Note that the
recurrence evaluates to 4n^2 - 8n + 2 at m = 2 while the quoted closed
form is 4n^2 - 10n + 6; both are recorded, and bound checks against
synthesized circuits take the maximum of the two so the check stays a
true upper bound.

Asymptotically the total scales as 2^(m+1) n^m / m! and the CNOT share as
2^m n^m / m!, polynomial in n for fixed m.  That beats preparing a dense
2^n vector whenever m log2 n < n, and beats the O(N^2 n^2) scaling of
reflection-chain preparation (N the support size, N = C(n, m) when full)
whenever n > 2m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .errors import InvalidArgs, Unsupported

N_MAX = 64


@lru_cache(maxsize=None)
def _rec(n: int, m: int) -> int:
    if m == 0:
        return 0
    if m == n:
        return n
    if m == 1:
        return 4 * n - 3
    return 2 * _rec(n - 1, m - 1) + _rec(n - 1, m) + 2


def bound_recurrence(n: int, m: int) -> int:
    """Exact worst-case gate total from the recurrence."""
    if not 0 <= m <= n <= N_MAX:
        raise InvalidArgs(f"need 0 <= m <= n <= {N_MAX}, got n={n} m={m}")
    return _rec(n, m)


def closed_forms(n: int, m: int) -> Tuple[int, int]:
    """(total, cnot) closed forms, defined for m in {1, 2} and n >= 2."""
    if m not in (1, 2):
        raise Unsupported(f"closed forms exist for m in {{1, 2}}, got m={m}")
    if n < 2:
        raise InvalidArgs(f"closed forms need n >= 2, got n={n}")
    if m == 1:
        return 4 * n - 3, 2 * n - 3
    return 4 * n * n - 10 * n + 6, 2 * n * n - 6 * n + 4


def asymptotic(n: int, m: int) -> Tuple[float, float]:
    """(total, cnot) leading-order estimates 2^(m+1) n^m / m! and 2^m n^m / m!."""
    if not 1 <= m <= n:
        raise InvalidArgs(f"need 1 <= m <= n, got n={n} m={m}")
    base = float(n) ** m / math.factorial(m)
    return 2.0 ** (m + 1) * base, 2.0 ** m * base


@dataclass(frozen=True)
class Crossovers:
    beats_full_hilbert: bool
    beats_ortiz: bool


def crossovers(n: int, m: int, support: Optional[int] = None) -> Crossovers:
    """Where this scaling wins.

    beats_full_hilbert: the m log2 n < n test against generic dense
    preparation, whose cost grows like 2^n.  beats_ortiz: against the
    N^2 n^2 reflection-chain cost; with no support given the full-space
    comparison reduces to n > 2m, otherwise the asymptotic CNOT count is
    compared with support^2 n^2 directly.
    """
    if not 1 <= m <= n:
        raise InvalidArgs(f"need 1 <= m <= n, got n={n} m={m}")
    full = m * math.log2(n) < n
    if support is None:
        ortiz = n > 2 * m
    else:
        if support < 1:
            raise InvalidArgs(f"support must be >= 1, got {support}")
        ortiz = asymptotic(n, m)[1] < float(support) ** 2 * float(n) ** 2
    return Crossovers(beats_full_hilbert=full, beats_ortiz=ortiz)


@dataclass(frozen=True)
class BoundReport:
    """Every bound this module can state for one (n, m), in one record."""

    n: int
    m: int
    recurrence_total: int
    closed_total: Optional[int]
    closed_cnot: Optional[int]
    asymptotic_total: float
    asymptotic_cnot: float
    full_hilbert: float


def bound_report(n: int, m: int) -> BoundReport:
    if not 1 <= m <= n <= N_MAX:
        raise InvalidArgs(f"need 1 <= m <= n <= {N_MAX}, got n={n} m={m}")
    closed_total = closed_cnot = None
    if m in (1, 2) and n >= 2:
        closed_total, closed_cnot = closed_forms(n, m)
    a_total, a_cnot = asymptotic(n, m)
    return BoundReport(
        n=n,
        m=m,
        recurrence_total=bound_recurrence(n, m),
        closed_total=closed_total,
        closed_cnot=closed_cnot,
        asymptotic_total=a_total,
        asymptotic_cnot=a_cnot,
        full_hilbert=2.0 ** n,
    )


def synthesis_bound(n: int, m: int) -> int:
    """Upper bound used to audit synthesized circuits: the recurrence, or
    the closed form where one exists, whichever is larger."""
    best = bound_recurrence(n, m)
    if m in (1, 2) and n >= 2:
        best = max(best, closed_forms(n, m)[0])
    return best
