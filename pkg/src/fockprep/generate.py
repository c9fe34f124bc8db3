"""Deterministic random state generators.

Reproducibility across platforms matters more than statistical finesse
here, so the generator is pinned by algorithm rather than by library:
SplitMix64 (the 64-bit mixing generator with increment 0x9E3779B97F4A7C15
and the 30/27/31-shift finalizer) drives uniforms via the top 53 bits,
and gaussians come from the Marsaglia polar method.  Support sets are
drawn as combination ranks and unranked through the combinatorial number
system, so the same seed yields the same state on any machine.
"""

from __future__ import annotations

import math
from typing import List, Optional

from .errors import InvalidArgs, SupportTooLarge
from .fock import Configuration, TargetState, validate_target

_MASK64 = (1 << 64) - 1

# Redraw gaussians below this magnitude so no amplitude lands under the
# validation threshold after normalization.
_GAUSS_FLOOR = 1e-8


class SplitMix64:
    """SplitMix64: x += 0x9E3779B97F4A7C15; three xor-multiply finalizer steps."""

    __slots__ = ("_x", "_spare")

    def __init__(self, seed: int):
        self._x = seed & _MASK64
        self._spare: Optional[float] = None

    def next_u64(self) -> int:
        self._x = (self._x + 0x9E3779B97F4A7C15) & _MASK64
        z = self._x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), rejection-debiased."""
        if bound <= 0:
            raise InvalidArgs(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def normal(self) -> float:
        """Standard normal via the Marsaglia polar method."""
        if self._spare is not None:
            g, self._spare = self._spare, None
            return g
        while True:
            a = 2.0 * self.uniform() - 1.0
            b = 2.0 * self.uniform() - 1.0
            s = a * a + b * b
            if 0.0 < s < 1.0:
                f = math.sqrt(-2.0 * math.log(s) / s)
                self._spare = b * f
                return a * f


def _unrank_combination(rank: int, n: int, m: int) -> int:
    """The rank-th weight-m occupation pattern, ordered lexicographically
    by qubit position set.  Returns the packed integer (qubit 0 = MSB)."""
    occ = 0
    remaining = m
    for pos in range(n):
        if remaining == 0:
            break
        with_pos = math.comb(n - pos - 1, remaining - 1)
        if rank < with_pos:
            occ |= 1 << (n - 1 - pos)
            remaining -= 1
        else:
            rank -= with_pos
    return occ


def _sample_ranks(rng: SplitMix64, total: int, k: int) -> List[int]:
    """k distinct ranks from [0, total), sorted; deterministic per rng state."""
    if total <= 1 << 20:
        # partial Fisher-Yates over the full range
        arr = list(range(total))
        for i in range(k):
            j = i + rng.below(total - i)
            arr[i], arr[j] = arr[j], arr[i]
        picked = arr[:k]
    else:
        # the range is huge, so collisions are rare and rejection is cheap
        seen = set()
        picked = []
        while len(picked) < k:
            r = rng.below(total)
            if r not in seen:
                seen.add(r)
                picked.append(r)
    picked.sort()
    return picked


def _random_amplitudes(rng: SplitMix64, k: int) -> List[float]:
    amps = []
    for _ in range(k):
        g = rng.normal()
        while abs(g) < _GAUSS_FLOOR:
            g = rng.normal()
        amps.append(g)
    return amps


def gen_random(n: int, m: int, support: Optional[int] = None, seed: int = 0) -> TargetState:
    """Random weight-m state: `support` distinct configurations chosen
    uniformly (all of them when None), i.i.d. normal amplitudes, normalized.
    """
    if not 1 <= m <= n:
        raise InvalidArgs(f"need 1 <= m <= n, got n={n} m={m}")
    total = math.comb(n, m)
    k = total if support is None else support
    if k < 1:
        raise InvalidArgs(f"support must be >= 1, got {k}")
    if k > total:
        raise SupportTooLarge(f"support {k} exceeds C({n},{m}) = {total}")
    rng = SplitMix64(seed)
    ranks = _sample_ranks(rng, total, k)
    amps = _random_amplitudes(rng, k)
    terms = [(Configuration(n, _unrank_combination(r, n, m)), a) for r, a in zip(ranks, amps)]
    return validate_target(terms, n, m, auto_normalize=True)


def gen_paired(n_spatial: int, n_pairs: int, support: int, seed: int = 0) -> TargetState:
    """Random doubly-occupied state on 2*n_spatial qubits.

    Each configuration fills both spin orbitals (qubits 2i and 2i+1) of
    n_pairs chosen spatial orbitals, the closed-shell pattern.
    """
    if not 1 <= n_pairs <= n_spatial:
        raise InvalidArgs(f"need 1 <= n_pairs <= n_spatial, got {n_spatial}, {n_pairs}")
    total = math.comb(n_spatial, n_pairs)
    if support < 1:
        raise InvalidArgs(f"support must be >= 1, got {support}")
    if support > total:
        raise SupportTooLarge(f"support {support} exceeds C({n_spatial},{n_pairs}) = {total}")
    n = 2 * n_spatial
    rng = SplitMix64(seed)
    ranks = _sample_ranks(rng, total, support)
    amps = _random_amplitudes(rng, support)
    terms = []
    for r, a in zip(ranks, amps):
        spatial = _unrank_combination(r, n_spatial, n_pairs)
        occ = 0
        for i in range(n_spatial):
            if spatial & (1 << (n_spatial - 1 - i)):
                occ |= 1 << (n - 1 - 2 * i)
                occ |= 1 << (n - 1 - (2 * i + 1))
        terms.append((Configuration(n, occ), a))
    return validate_target(terms, n, 2 * n_pairs, auto_normalize=True)
