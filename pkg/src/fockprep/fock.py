"""Occupation-number state model.

A Configuration is an n-bit occupation pattern (qubit 0 is the leftmost
character of the bitstring and the most significant bit of the packed
integer, so the packed value doubles as the index into a dense
statevector).  A TargetState is a normalized real-amplitude superposition
of configurations of a single Hamming weight m.  split_leading_qubit
factors a state over its first qubit, which is the decomposition the
synthesizer recursion consumes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

from .errors import (
    Duplicate,
    Empty,
    InvalidArgs,
    NotNormalized,
    WrongWeight,
)

log = logging.getLogger(__name__)

# Amplitudes below this are treated as exactly zero (branch pruning,
# term dropping).  Configurable per call; this is the package default.
ZERO_THRESHOLD = 1e-12

# |sum k^2 - 1| above this is rejected outright when auto_normalize is off.
NORM_GATE = 1e-6

# Rescaling is skipped below this, so re-validating output is a no-op.
NORM_EXACT = 1e-15


@dataclass(frozen=True, order=True)
class Configuration:
    """One electron configuration: n qubits, packed occupation bits.

    ``occ`` packs the bitstring with qubit 0 as the most significant bit,
    so ``Configuration.from_bits("110").occ == 0b110`` and the packed
    value equals the basis-state index of the dense statevector.
    """

    n: int
    occ: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 64:
            raise InvalidArgs(f"qubit count must be in 1..64, got {self.n}")
        if not 0 <= self.occ < (1 << self.n):
            raise InvalidArgs(f"occupation {self.occ:#x} out of range for n={self.n}")

    @classmethod
    def from_bits(cls, bits: str) -> "Configuration":
        if not bits or any(c not in "01" for c in bits):
            raise InvalidArgs(f"occupation string must be nonempty 0/1, got {bits!r}")
        return cls(len(bits), int(bits, 2))

    @property
    def bits(self) -> str:
        return format(self.occ, f"0{self.n}b")

    @property
    def weight(self) -> int:
        return self.occ.bit_count()

    def __str__(self) -> str:
        return self.bits


Term = Tuple[Configuration, float]
RawTerm = Tuple[Union[Configuration, str], float]


@dataclass(frozen=True)
class TargetState:
    """Normalized sparse superposition of weight-m configurations.

    Build through :func:`validate_target`; the constructor itself does not
    re-check invariants (internal callers construct pre-validated data).
    Terms are sorted by packed occupation value.
    """

    n: int
    m: int
    terms: Tuple[Term, ...]

    @property
    def support(self) -> int:
        return len(self.terms)

    def amplitude_map(self) -> dict:
        """Packed-occupation -> amplitude dict (a fresh copy)."""
        return {cfg.occ: amp for cfg, amp in self.terms}


def validate_target(
    terms: Iterable[RawTerm],
    n: int,
    m: int,
    auto_normalize: bool = False,
    zero_threshold: float = ZERO_THRESHOLD,
) -> TargetState:
    """Check and canonicalize raw (configuration, amplitude) pairs.

    Parameters
    ----------
    terms : iterable of (Configuration or bitstring, float)
    n, m : qubit count and electron count
    auto_normalize : rescale any nonzero norm to 1; when off, norms more
        than ``NORM_GATE`` away from 1 raise NotNormalized (smaller drift
        is silently corrected).
    zero_threshold : terms with |amplitude| below this are dropped and the
        remainder renormalized.

    Returns a TargetState sorted by occupation, or raises a subclass of
    ValidationError.  Validating the output again returns it unchanged.
    """
    if n < 1:
        raise InvalidArgs(f"n must be >= 1, got {n}")
    if not 0 <= m <= n:
        raise InvalidArgs(f"m must be in 0..{n}, got {m}")
    if not 0.0 < zero_threshold < 1e-6:
        raise InvalidArgs(f"zero_threshold must be in (0, 1e-6), got {zero_threshold}")

    pairs = []
    for cfg, amp in terms:
        if isinstance(cfg, str):
            cfg = Configuration.from_bits(cfg)
        if cfg.n != n:
            raise InvalidArgs(f"configuration {cfg} has {cfg.n} qubits, expected {n}")
        if cfg.weight != m:
            raise WrongWeight(f"configuration {cfg} has weight {cfg.weight}, expected {m}")
        pairs.append((cfg, float(amp)))
    if not pairs:
        raise Empty("state has no terms")

    seen = set()
    for cfg, _ in pairs:
        if cfg.occ in seen:
            raise Duplicate(f"configuration {cfg} appears more than once")
        seen.add(cfg.occ)

    norm2 = math.fsum(amp * amp for _, amp in pairs)
    if auto_normalize:
        if norm2 <= 0.0:
            raise Empty("state has zero norm")
    elif abs(norm2 - 1.0) > NORM_GATE:
        raise NotNormalized(f"sum of squared amplitudes is {norm2!r}, expected 1")
    if abs(norm2 - 1.0) > NORM_EXACT:
        scale = 1.0 / math.sqrt(norm2)
        pairs = [(cfg, amp * scale) for cfg, amp in pairs]

    kept = [(cfg, amp) for cfg, amp in pairs if abs(amp) >= zero_threshold]
    if not kept:
        raise Empty(f"all terms below zero threshold {zero_threshold}")
    if len(kept) < len(pairs):
        log.info("dropped %d sub-threshold terms", len(pairs) - len(kept))
        norm2 = math.fsum(amp * amp for _, amp in kept)
        if abs(norm2 - 1.0) > NORM_EXACT:
            scale = 1.0 / math.sqrt(norm2)
            kept = [(cfg, amp * scale) for cfg, amp in kept]

    kept.sort(key=lambda t: t[0].occ)
    return TargetState(n=n, m=m, terms=tuple(kept))


@dataclass(frozen=True)
class BranchSplit:
    """Factorization of a state over its leading qubit.

    parent = c0 * |0> (x) sub0  +  c1 * |1> (x) sub1, with c0, c1 >= 0 and
    the original signs carried by the sub-state amplitudes.  A branch with
    no support has coefficient 0.0 and sub-state None.
    """

    c0: float
    c1: float
    sub0: "TargetState | None"
    sub1: "TargetState | None"

    def reassemble(self) -> TargetState:
        """Rebuild the parent state (test oracle for the split)."""
        if self.sub0 is None and self.sub1 is None:
            raise Empty("both branches absent")
        sub = self.sub0 if self.sub0 is not None else self.sub1
        n = sub.n + 1
        m = self.sub0.m if self.sub0 is not None else self.sub1.m + 1
        top = 1 << (n - 1)
        terms = []
        if self.sub0 is not None:
            terms += [(Configuration(n, cfg.occ), self.c0 * amp) for cfg, amp in self.sub0.terms]
        if self.sub1 is not None:
            terms += [(Configuration(n, cfg.occ | top), self.c1 * amp) for cfg, amp in self.sub1.terms]
        terms.sort(key=lambda t: t[0].occ)
        return TargetState(n=n, m=m, terms=tuple(terms))


def split_leading_qubit(state: TargetState) -> BranchSplit:
    """Split a state over qubit 0.

    The 0-branch keeps m electrons on n-1 qubits, the 1-branch keeps m-1.
    Branch coefficients are the square roots of the branch probability
    masses; sub-state amplitudes are the originals divided by their
    branch coefficient, so each sub-state is normalized and signed.
    """
    if state.n < 2:
        raise InvalidArgs("cannot split a single-qubit state")
    top = 1 << (state.n - 1)
    lo = [(cfg, amp) for cfg, amp in state.terms if not cfg.occ & top]
    hi = [(cfg, amp) for cfg, amp in state.terms if cfg.occ & top]

    def sub(branch, m):
        if not branch:
            return 0.0, None
        c = math.sqrt(math.fsum(amp * amp for _, amp in branch))
        terms = tuple(
            (Configuration(state.n - 1, cfg.occ & (top - 1)), amp / c) for cfg, amp in branch
        )
        return c, TargetState(n=state.n - 1, m=m, terms=terms)

    c0, sub0 = sub(lo, state.m)
    c1, sub1 = sub(hi, state.m - 1)
    return BranchSplit(c0=c0, c1=c1, sub0=sub0, sub1=sub1)
