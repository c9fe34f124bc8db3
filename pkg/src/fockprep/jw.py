"""Fermionic ladder operators on occupation-number states.

Creation and annihilation act on sparse amplitude maps keyed by
Configuration, with the antisymmetry sign carried as an occupation count:
acting on orbital j picks up (-1)^(number of occupied orbitals below j).
Orbitals are 1-based; orbital j lives on qubit j-1.  Operator strings
apply right to left, so the string (a2+, a1+) means "a1+ first", and
a2+ a1+ |vac> = -|110...>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

from .errors import Empty, InvalidArgs, MixedWeight, OrbitalOutOfRange
from .fock import Configuration, TargetState, validate_target

AmplitudeMap = Dict[Configuration, float]


@dataclass(frozen=True)
class LadderOp:
    kind: str  # "create" or "annihilate"
    orbital: int  # 1-based

    def __post_init__(self) -> None:
        if self.kind not in ("create", "annihilate"):
            raise InvalidArgs(f"unknown ladder kind {self.kind!r}")
        if self.orbital < 1:
            raise OrbitalOutOfRange(f"orbital must be >= 1, got {self.orbital}")


def create(j: int) -> LadderOp:
    return LadderOp("create", j)


def annihilate(j: int) -> LadderOp:
    return LadderOp("annihilate", j)


@dataclass(frozen=True)
class OpString:
    """Product of ladder operators (applied right to left) times a scalar."""

    ops: Tuple[LadderOp, ...]
    coeff: float = 1.0


def vacuum(n: int) -> AmplitudeMap:
    return {Configuration(n, 0): 1.0}


def apply_ladder(op: LadderOp, state: Mapping[Configuration, float], n: int) -> AmplitudeMap:
    """Apply one ladder operator to a sparse amplitude map.

    Creation on an occupied orbital (or annihilation on an empty one)
    removes the term.  Exact zero amplitudes are dropped from the result.
    """
    if not 1 <= op.orbital <= n:
        raise OrbitalOutOfRange(f"orbital {op.orbital} outside 1..{n}")
    mask = 1 << (n - op.orbital)
    creating = op.kind == "create"
    out: AmplitudeMap = {}
    for cfg, amp in state.items():
        occupied = bool(cfg.occ & mask)
        if occupied == creating:
            continue
        # occupied orbitals with index < j sit above the mask bit
        sign = -1.0 if (cfg.occ >> (n - op.orbital + 1)).bit_count() & 1 else 1.0
        new = Configuration(n, cfg.occ ^ mask)
        val = out.get(new, 0.0) + sign * amp
        if val == 0.0:
            out.pop(new, None)
        else:
            out[new] = val
    return out


def apply_string(ops: OpString, state: Mapping[Configuration, float], n: int) -> AmplitudeMap:
    amps: AmplitudeMap = dict(state)
    for op in reversed(ops.ops):
        amps = apply_ladder(op, amps, n)
    if ops.coeff != 1.0:
        amps = {cfg: ops.coeff * amp for cfg, amp in amps.items()}
    return amps


def build_state(
    weighted_ops: Iterable[Tuple[float, OpString]],
    n: int,
    auto_normalize: bool = False,
) -> TargetState:
    """Sum weighted operator strings applied to the vacuum.

    Every string should be a product of creations (annihilations just kill
    the vacuum); repeated creations vanish on their own.  The summed terms
    must share a single Hamming weight, which becomes m.
    """
    total: AmplitudeMap = {}
    for weight, ops in weighted_ops:
        amps = apply_string(ops, vacuum(n), n)
        for cfg, amp in amps.items():
            val = total.get(cfg, 0.0) + weight * amp
            if val == 0.0:
                total.pop(cfg, None)
            else:
                total[cfg] = val
    if not total:
        raise Empty("all operator strings vanished on the vacuum")
    weights = {cfg.weight for cfg in total}
    if len(weights) > 1:
        raise MixedWeight(f"terms span Hamming weights {sorted(weights)}")
    m = weights.pop()
    return validate_target(total.items(), n, m, auto_normalize=auto_normalize)
