"""Circuit synthesis: greedy support peeling, then recursive transform-to-zero.

Synthesis runs in two stages, both operating on a live sparse copy of the
state being transformed.

Stage one peels the support: repeatedly dissolve one basis component into
a partner one or two bit flips away, using a CNOT to align the pair and a
controlled reflection to fold the dying component's amplitude into the
survivor.  Every candidate move is probed first against the live support,
and a move is normally taken only when no bystander component would be
smeared into life.  The dying order walks configurations grouped by their
second-highest occupied position, which keeps each fold's control sitting
on a position the bystander components do not share; on dense
two-electron supports the whole stage runs spawn-free end to end.

Two-electron states get a small strategy portfolio instead of a single
pass: the spawn-free peel and an unconditional sweep (which walks the
same dying order whether or not a move spills, relocating amplitude into
absent partners where it must) are each tried under the identity orbital
labelling and under a fixed set of seeded relabelings, and the cheapest
verified circuit wins.  A relabeling costs nothing at run time, since the
emitted gates are mapped back through the inverse permutation, but it
moves the support's holes relative to the dying order, which is often the
difference between a spawn-free sweep and a stalled one.  Denser
electron sectors keep the single spawn-free pass: their budgets are loose
enough that the portfolio would only spend synthesis time.

Stage two is a sector recursion over the remaining components.  At each
step it picks the qubit whose 0/1 split is most lopsided (ties to the
lowest index, which on dense supports reproduces the plain left-to-right
walk), collapses the 1-branch to a single basis state, flips it down,
collapses the other branch, and merges the two survivors with a
reflection (a bare U-X-U triple at the top level, a single CH gate
below).  Empty branches are skipped outright, which is where sparse
inputs win their gate counts.

Two details carry the correctness argument.  First, every gate is applied
to the live state exactly as the simulator would apply it, so gates whose
control sits on an inner qubit may scramble amplitudes in sectors that
are still waiting their turn; those sectors are read fresh when their
turn comes, so the scrambling is absorbed rather than tracked.  Second,
each reflection is solved against the live amplitudes at the moment it is
emitted, never against coefficients captured earlier.  Collapsed sectors
are never revisited: a finished sector holds amplitude only on its
all-zero-tail component, and every later gate is conditioned on some
later-visited qubit, where that component holds a 0.

The preparation circuit is the inverse of the emitted transform, and
every synthesis is verified by the independent simulator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import sim
from .circuit import CH, CNOT, Circuit, GateCounts, U, X, count, invert
from .errors import Diverged, InvalidArgs, ZeroVector
from .fock import ZERO_THRESHOLD, TargetState

# Residual amplitude below which a live-state entry is dropped as rounding
# noise.  Well under every pruning threshold the options allow.
_DUST = 1e-16

# The transform must leave |00...0> with amplitude within this of +1.
_RESIDUAL_TOL = 1e-9

# Verified syntheses must reach this fidelity.
FIDELITY_TOL = 1e-9

# Dense verification is cheaper than sparse up to this qubit count.
_DENSE_VERIFY_CAP = 20

# Extra seeded relabelings the two-electron portfolio may draw when its
# deterministic strategies all cost more than the dense-support closed form.
_PORTFOLIO_DEPTH = 64


@dataclass(frozen=True)
class Reflection:
    """Real symmetric involutory 2x2 unitary [[p, q], [q, -p]].

    Parameterized by (u, v) on the unit circle with p = 2uv, q = u^2 - v^2.
    Sandwiching X between U(u, v) and U(u, -v) realizes it, which is what
    both the uncontrolled triple and the CH lowering do.
    """

    u: float
    v: float
    p: float
    q: float


def solve_reflection(a: float, b: float) -> Reflection:
    """Reflection sending (a, b) to (r, 0) with r = +sqrt(a^2 + b^2).

    Entries are p = a/r, q = b/r.  The (u, v) split takes the numerically
    safe square root: u from (1+q)/2 when q >= 0, else v from (1-q)/2,
    with the other parameter recovered from p, which keeps u^2 + v^2 = 1
    and the matrix identities exact to rounding.
    """
    r = math.hypot(a, b)
    if r == 0.0:
        raise ZeroVector("cannot orient the zero vector")
    p = a / r
    q = b / r
    if q >= 0.0:
        u = math.sqrt((1.0 + q) / 2.0)
        v = p / (2.0 * u)
    else:
        v = math.sqrt((1.0 - q) / 2.0)
        u = p / (2.0 * v)
    return Reflection(u=u, v=v, p=p, q=q)


@dataclass(frozen=True)
class SynthOptions:
    """Knobs for one synthesis run.

    zero_threshold: branch masses at or below the square of this are
    treated as empty.  prune: turn that skipping off to measure worst-case
    gate counts (exactly empty branches are still skipped; there is
    nothing to merge).  verify: simulate the result and check fidelity.
    """

    zero_threshold: float = ZERO_THRESHOLD
    prune: bool = True
    verify: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.zero_threshold < 1e-6:
            raise InvalidArgs(f"zero_threshold must be in (0, 1e-6), got {self.zero_threshold}")


@dataclass(frozen=True)
class SynthReport:
    circuit: Circuit  # preparation direction: |00...0> -> target
    counts: GateCounts
    recursion_nodes: int
    pruned_branches: int
    fidelity: Optional[float]  # None when verification was off


def _top_run(n: int, k: int) -> int:
    """Length of the consecutive run of occupied positions ending at k's
    last occupied position (qubit order, so the run sits at the largest
    indices)."""
    r = 0
    mask = 1  # qubit n-1
    seen = False
    while mask <= k:
        if k & mask:
            r += 1
            seen = True
        elif seen:
            break
        mask <<= 1
    return r


class _Emitter:
    """Builds the transform-to-zero gate list while tracking the state it acts on."""

    def __init__(self, state: TargetState, opts: SynthOptions,
                 relabel: Optional[Sequence[int]] = None):
        self.n = state.n
        self.m = state.m
        amps = state.amplitude_map()
        if relabel is not None:
            amps = {_permute_key(self.n, k, relabel): a for k, a in amps.items()}
        self.amps = amps
        self.eps = opts.zero_threshold if opts.prune else 0.0
        # Working precision: amplitudes below this are bookkeeping noise.
        # Every drop forfeits squared mass <= drop^2, orders of magnitude
        # under the fidelity tolerance, and keeps reflection spill from
        # fragmenting into swarms of near-zero components that would each
        # cost real gates to sweep up later.
        self.drop = self.eps if self.eps > _DUST else _DUST
        self.gates: List = []
        self.recursion_nodes = 0
        self.pruned_branches = 0

    def _qmask(self, q: int) -> int:
        return 1 << (self.n - 1 - q)

    def _qubit_of(self, mask: int) -> int:
        return self.n - mask.bit_length()

    # -- gate emission, each applied to the live amplitudes --------------

    def _flip(self, ctrl: Optional[int], t: int) -> None:
        self.gates.append(X(t) if ctrl is None else CNOT(ctrl, t))
        cmask = 0 if ctrl is None else self._qmask(ctrl)
        tmask = self._qmask(t)
        out = {}
        for k, a in self.amps.items():
            out[k ^ tmask if k & cmask == cmask else k] = a
        self.amps = out

    def _mix(self, ctrl: Optional[int], t: int, m00, m01, m10, m11) -> None:
        cmask = 0 if ctrl is None else self._qmask(ctrl)
        tmask = self._qmask(t)
        amps = self.amps
        done = set()
        for k in list(amps.keys()):
            base = k & ~tmask
            if base in done:
                continue
            done.add(base)
            if base & cmask != cmask:
                continue
            a0 = amps.get(base, 0.0)
            a1 = amps.get(base | tmask, 0.0)
            for key, val in ((base, m00 * a0 + m01 * a1), (base | tmask, m10 * a0 + m11 * a1)):
                if abs(val) <= self.drop:
                    amps.pop(key, None)
                else:
                    amps[key] = val

    def _mix_growth(self, cmask: int, tmask: int, p: float, s: float) -> int:
        """Net change in live components if [[p,s],[s,-p]] hit the qubit
        pairs selected by cmask, without applying it."""
        amps = self.amps
        drop = self.drop
        done = set()
        delta = 0
        for k in amps:
            if k & cmask != cmask:
                continue
            base = k & ~tmask
            if base in done:
                continue
            done.add(base)
            a0 = amps.get(base, 0.0)
            a1 = amps.get(base | tmask, 0.0)
            delta += (abs(p * a0 + s * a1) > drop) - (base in amps)
            delta += (abs(s * a0 - p * a1) > drop) - ((base | tmask) in amps)
        return delta

    # -- stage one: support peeling ---------------------------------------
    #
    # A peel move dissolves component `kill` into component `into`.  When
    # they differ at two positions (x occupied in kill only, y in into
    # only) the move is CNOT(x,y) . CH(c,x) . CNOT(x,y), with the closing
    # CNOT dropped when nothing occupies x afterwards; at distance one it
    # is a single CH.  The probe counts how many bystander components the
    # fold would smear into life: the CH rotates every amplitude pair
    # whose keys agree outside qubit x and occupy c, and a pair with one
    # live member generically ends with two.

    def _probe_fold(self, support, cmask: int, xmask: int, solved: int) -> int:
        spawn = 0
        seen = set()
        for k in support:
            if k & cmask != cmask:
                continue
            base = k & ~xmask
            if base in seen:
                continue
            seen.add(base)
            if base == solved:
                continue
            if (base in support) != ((base | xmask) in support):
                spawn += 1
        return spawn

    def _peel_plans(self, support, kill: int, into: int):
        """Candidate moves dissolving kill into into, as (spawn, cnots, plan)."""
        n = self.n
        diff = kill ^ into
        out = []
        if diff.bit_count() == 1:
            t = self._qubit_of(diff)
            hi, lo = (kill, into) if kill & diff else (into, kill)
            common = kill & into
            mask = common
            while mask:
                cmask = mask & -mask
                mask ^= cmask
                sp = self._probe_fold(support, cmask, diff, lo)
                out.append((sp, 1, ("fold", self._qubit_of(cmask), t, lo, hi)))
            return out
        if diff.bit_count() != 2:
            return out
        lo_bit = diff & -diff
        hi_bit = diff ^ lo_bit
        for xmask in (lo_bit, hi_bit):
            if not kill & xmask:
                continue
            ymask = diff ^ xmask
            if not into & ymask:
                continue
            x = self._qubit_of(xmask)
            y = self._qubit_of(ymask)
            aligned = {k ^ ymask if k & xmask else k for k in support}
            lone = not any(k & xmask for k in aligned if k != (into | xmask))
            cnots = 2 if lone else 3
            cands = [ymask]
            mask = kill & into
            while mask:
                cmask = mask & -mask
                mask ^= cmask
                cands.append(cmask)
            for cmask in cands:
                sp = self._probe_fold(aligned, cmask, xmask, into)
                out.append((sp, cnots, ("move", x, y, self._qubit_of(cmask), kill, into)))
        return out

    def _fold(self, c: int, t: int, a0: float, a1: float) -> None:
        ref = solve_reflection(a0, a1)
        if ref.u == 1.0 and ref.v == 0.0:
            # The survivor slot is empty, so the reflection is a bare swap:
            # relocate with a CNOT instead of spending a CH.
            self._flip(c, t)
            return
        self.gates.append(CH(c, t, ref.u, ref.v))
        self._mix(c, t, ref.p, ref.q, ref.q, -ref.p)

    def _apply_peel(self, plan) -> None:
        if plan[0] == "fold":
            _, c, t, lo, hi = plan
            self._fold(c, t, self.amps.get(lo, 0.0), self.amps.get(hi, 0.0))
            return
        _, x, y, c, kill, into = plan
        self._flip(x, y)
        self._fold(c, x, self.amps.get(into, 0.0),
                   self.amps.get(into | self._qmask(x), 0.0))
        if any(k & self._qmask(x) for k in self.amps):
            self._flip(x, y)

    def _peel_rank(self, k: int) -> Tuple:
        """Dying order: by second-highest occupied position, then the
        positions below it, then the highest position descending."""
        n = self.n
        pos = [q for q in range(n) if k & self._qmask(q)]
        if len(pos) == 1:
            return (pos[0], (), 0)
        return (pos[-2], tuple(pos[:-2]), -pos[-1])

    def _peel_absorber(self, k: int) -> Optional[int]:
        """Canonical partner: free the highest occupied position downward,
        or shift a blocked top run up by one."""
        n = self.n
        pos = [q for q in range(n) if k & self._qmask(q)]
        t = pos[-1]
        if len(pos) == 1:
            return k ^ self._qmask(t) ^ self._qmask(t - 1) if t else None
        if not k & self._qmask(t - 1):
            return k ^ self._qmask(t) ^ self._qmask(t - 1)
        run = _top_run(n, k)
        lo = t - run + 1
        if t + 1 >= n:
            return None
        return k ^ self._qmask(lo) ^ self._qmask(t + 1)

    def _finish_pair(self) -> bool:
        """Fold the last two components with an uncontrolled reflection.
        Handles distance one or two; anything farther goes to stage two."""
        into, kill = sorted(self.amps)
        diff = kill ^ into
        d = diff.bit_count()
        if d > 2:
            return False
        if d == 2:
            xmask = next(b for b in (diff & -diff, diff ^ (diff & -diff)) if kill & b)
            ymask = diff ^ xmask
            if not into & ymask:
                return False
            self._flip(self._qubit_of(xmask), self._qubit_of(ymask))
            kill ^= ymask
        else:
            xmask = diff
            if not kill & xmask:
                into, kill = kill, into
        t = self._qubit_of(xmask)
        a0 = self.amps.get(into, 0.0)
        a1 = self.amps.get(kill, 0.0)
        ref = solve_reflection(a0, a1)
        self.gates.append(U(t, ref.u, ref.v))
        self.gates.append(X(t))
        self.gates.append(U(t, ref.u, -ref.v))
        self._mix(None, t, ref.p, ref.q, ref.q, -ref.p)
        return True

    def _peel(self, sweep: bool) -> None:
        # Single-electron states collapse to plain chains in stage two, and
        # supports of three or fewer components merge in at most two sector
        # folds there; peeling would spend alignment flips for nothing.
        if self.m < 2 or len(self.amps) < 4:
            return
        # In sweep mode the canonical move is taken even when it spills or
        # its absorber is absent (the fold then degenerates to a relocation).
        # Spills land on partners the dying order has not reached yet, so
        # the walk still drains, but holes can make it circle; the budget
        # hands anything left to stage two, which is always correct.
        budget = 3 * math.comb(self.n, self.m) + 10 if sweep else None
        ops = 0
        while len(self.amps) > 1:
            if budget is not None and ops >= budget:
                break
            live = sorted(self.amps)
            if len(live) == 2:
                if self._finish_pair():
                    return
                break
            nonterminal = [k for k in live
                           if _top_run(self.n, k) == 1 or k.bit_count() == 1]
            pool = nonterminal if nonterminal else live
            kill = min(pool, key=self._peel_rank)
            into = self._peel_absorber(kill)
            applied = False
            if into is not None and (sweep or into in self.amps):
                support = set(live)
                support.add(into)
                plans = self._peel_plans(support, kill, into)
                best = min(plans) if plans else None
                if best is not None and (sweep or best[0] == 0):
                    self._apply_peel(best[2])
                    ops += 1
                    applied = True
            if not applied:
                support = set(live)
                best = None
                for i, a in enumerate(live):
                    for b in live[i + 1:]:
                        if (a ^ b).bit_count() > 2:
                            continue
                        plans = self._peel_plans(support, a, b) \
                            + self._peel_plans(support, b, a)
                        got = min(plans) if plans else None
                        if got is None:
                            continue
                        cand = (got[0], got[1], a, b, got[2])
                        if best is None or cand < best:
                            best = cand
                if best is None or best[0] > 0:
                    break
                self._apply_peel(best[4])
                ops += 1

    # -- stage two: the sector recursion -----------------------------------

    def _pick_control(self, ctrl: int, cands, tmask: int, ref: Reflection) -> int:
        """Control qubit for a merge: among the borrowable lineage qubits,
        pick the one whose mix grows the live amplitude set the least;
        ties keep the parent, whose mixes respect the sector structure the
        recursion is about to visit."""
        if not cands:
            return ctrl
        best = ctrl
        best_cost = self._mix_growth(self._qmask(ctrl), tmask, ref.p, ref.q)
        for b in cands:
            cost = self._mix_growth(self._qmask(b), tmask, ref.p, ref.q)
            if cost < best_cost:
                best = b
                best_cost = cost
        return best

    def _merge(self, ctrl: Optional[int], q: int, x: float, y: float,
               lineage: Tuple[int, ...], anchor: int) -> None:
        """Fold the (x, y) amplitude pair on qubit q into its 0-branch."""
        r = math.hypot(x, y)
        if r <= self.drop or abs(y) <= self.drop * r:
            return  # already aligned; any sign rides up to the parent
        if abs(x) <= self.drop * r:
            self._flip(ctrl, q)
            return
        ref = solve_reflection(x, y)
        if ctrl is None:
            self.gates.append(U(q, ref.u, ref.v))
            self.gates.append(X(q))
            self.gates.append(U(q, ref.u, -ref.v))
            self._mix(None, q, ref.p, ref.q, ref.q, -ref.p)
        else:
            cands = [b for b in lineage[anchor:] if b != ctrl and b != q]
            c = self._pick_control(ctrl, cands, self._qmask(q), ref)
            self.gates.append(CH(c, q, ref.u, ref.v))
            self._mix(c, q, ref.p, ref.q, ref.q, -ref.p)

    def _reduce(self, rem: Tuple[int, ...], ctrl: Optional[int], want: int,
                care: int, lineage: Tuple[int, ...], anchor: int) -> None:
        """Collapse every amplitude in the sector (key & care) == want onto
        the single component `want`, emitting the gates that do it.

        `rem` lists the qubits this sector has not yet split on.  `lineage`
        is the visit-ordered list of 1-branch qubits on the path here, and
        `anchor` indexes the shallowest of them this subtree's merges may
        borrow as a control: everything before it sits inside an ancestor
        whose first branch is already collapsed, and touching those
        survivors would corrupt them."""
        keys = sorted(k for k in self.amps if k & care == want)
        if not keys:
            return
        self.recursion_nodes += 1

        if len(keys) == 1:
            k = keys[0]
            # At the root lineage a lone negative component would survive all
            # the way to -|0...0>; fold its sign into the first flip, which
            # keeps the gate count at one per occupied position.
            fold_sign = ctrl is None and self.amps[k] < 0.0
            for t in rem:
                if k & self._qmask(t):
                    if fold_sign:
                        self.gates.append(U(t, 0.0, 1.0))
                        self._mix(None, t, 0.0, -1.0, 1.0, 0.0)
                        fold_sign = False
                    else:
                        self._flip(ctrl, t)
            return

        # Complemented chain: a full homogeneous sector of weight p-1 on p
        # qubits flips into a weight-1 sector, which collapses linearly.
        # Only worthwhile where the X gates are uncontrolled, and at p = 3
        # the flips cost more than the direct merge saves.
        p = len(rem)
        if ctrl is None and p >= 4 and len(keys) == p:
            tail = 0
            for t in rem:
                tail |= self._qmask(t)
            weights = {(k & tail).bit_count() for k in keys}
            if weights == {p - 1}:
                for t in rem:
                    self._flip(None, t)
                keys = sorted(k for k in self.amps if k & care == want)

        # Split on the qubit with the most lopsided 0/1 occupancy: merges
        # then happen in small sectors whose controls few bystanders share.
        # Ties fall to the lowest index, which on sectors where every
        # qubit looks alike (dense supports, single-electron states) makes
        # the walk identical to a plain left-to-right scan.
        best_q = rem[0]
        best_cost = None
        for t in rem:
            c1 = sum(1 for k in keys if k & self._qmask(t))
            cost = min(c1, len(keys) - c1)
            if best_cost is None or cost < best_cost:
                best_q, best_cost = t, cost
        q = best_q
        rem2 = tuple(t for t in rem if t != q)
        qbit = self._qmask(q)
        thr = self.eps * self.eps
        m1 = math.fsum(self.amps[k] ** 2 for k in keys if k & qbit)
        m0 = math.fsum(self.amps[k] ** 2 for k in keys if not k & qbit)

        if m1 <= thr:
            if m1 > 0.0:
                for k in keys:
                    if k & qbit:
                        del self.amps[k]
            self.pruned_branches += 1
            self._reduce(rem2, ctrl, want, care | qbit, lineage, anchor)
            return
        if m0 <= thr:
            if m0 > 0.0:
                for k in keys:
                    if not k & qbit:
                        del self.amps[k]
            self.pruned_branches += 1
            self._flip(ctrl, q)
            self._reduce(rem2, ctrl, want, care | qbit, lineage, anchor)
            return

        # Both branches live: collapse the 1-branch, swap it down, collapse
        # the other branch, then fold the two survivors together.  Nested
        # calls condition on this qubit, so no gate ever needs two controls.
        grown = lineage + (q,)
        self._reduce(rem2, q, want | qbit, care | qbit, grown, anchor)
        self._flip(ctrl, q)
        self._reduce(rem2, q, want | qbit, care | qbit, grown, len(grown) - 1)
        x = self.amps.get(want, 0.0)
        y = self.amps.get(want | qbit, 0.0)
        self._merge(ctrl, q, x, y, grown, anchor)

    def run(self, sweep: bool = False) -> None:
        self._peel(sweep)
        self._reduce(tuple(range(self.n)), None, 0, 0, (), 0)
        if self.amps.get(0, 0.0) < 0.0:
            # Pure flip paths preserve the input sign; normalize it away so
            # the transform always lands on +|00...0>.
            self.gates.append(U(0, -1.0, 0.0))
            self._mix(None, 0, -1.0, 0.0, 0.0, -1.0)

    def residual(self) -> float:
        """Max deviation from the ideal all-zeros outcome, own bookkeeping."""
        worst = abs(self.amps.get(0, 0.0) - 1.0)
        for k, a in self.amps.items():
            if k != 0:
                worst = max(worst, abs(a))
        return worst


def _verify_state(n: int, target: TargetState):
    if n <= _DENSE_VERIFY_CAP:
        return sim.DenseState.from_target(target)
    return sim.SparseState.from_target(target)


def _permute_key(n: int, k: int, perm: Sequence[int]) -> int:
    out = 0
    for q in range(n):
        if k >> (n - 1 - q) & 1:
            out |= 1 << (n - 1 - perm[q])
    return out


def _relabel_gates(gates: Sequence, perm: Sequence[int]) -> List:
    """Conjugate gates by the inverse orbital permutation.

    The emitter synthesized the relabeled state, so mapping each gate's
    qubits back through perm's inverse yields a circuit acting identically
    on the original labelling (the all-zeros state is permutation fixed)."""
    inv = [0] * len(perm)
    for q, j in enumerate(perm):
        inv[j] = q
    out = []
    for g in gates:
        if g.kind == "X":
            out.append(X(inv[g.qubits[0]]))
        elif g.kind == "CNOT":
            out.append(CNOT(inv[g.qubits[0]], inv[g.qubits[1]]))
        elif g.kind == "U":
            out.append(U(inv[g.qubits[0]], g.u, g.v))
        else:
            out.append(CH(inv[g.qubits[0]], inv[g.qubits[1]], g.u, g.v))
    return out


def _degree_relabelings(state: TargetState) -> List[List[int]]:
    """Orbital orderings by occupancy count, ascending and descending.

    A two-electron support is a graph on the orbitals, and the peel's dying
    order handles missing edges best when they cluster at the positions it
    reaches first or last; sorting vertices by degree puts them there."""
    n = state.n
    deg = [0] * n
    for cfg, _ in state.terms:
        for q in range(n):
            if cfg.occ >> (n - 1 - q) & 1:
                deg[q] += 1
    out = []
    for order in (sorted(range(n), key=lambda q: (deg[q], q)),
                  sorted(range(n), key=lambda q: (-deg[q], q))):
        perm = [0] * n
        for newpos, old in enumerate(order):
            perm[old] = newpos
        out.append(perm)
    return out


def _emit(state: TargetState, opts: SynthOptions) -> _Emitter:
    """Run the synthesis portfolio and return the emitter with the cheapest
    gate list, ties to the earliest strategy (identity labelling first)."""
    queue: List[Tuple[Optional[List[int]], bool]] = [(None, False)]
    goal = None
    if state.m == 2 and len(state.terms) >= 4:
        queue.append((None, True))
        for p in _degree_relabelings(state):
            queue.append((p, False))
            queue.append((p, True))
        # Internal yardstick: a two-electron synthesis should not cost more
        # than the dense-support construction on the same register.
        goal = 4 * state.n * state.n - 10 * state.n + 6
    best = None
    rng = random.Random(0x0F0C)
    drawn = 0
    while queue:
        relabel, sweep = queue.pop(0)
        em = _Emitter(state, opts, relabel=relabel)
        em.run(sweep)
        res = em.residual()
        if res > _RESIDUAL_TOL:
            raise Diverged(f"transform bookkeeping residual {res:.3e} exceeds {_RESIDUAL_TOL}")
        if relabel is not None:
            em.gates = _relabel_gates(em.gates, relabel)
        tally = count(Circuit(n=state.n, gates=tuple(em.gates)))
        score = (tally.grand_total, tally.cnot_total)
        if best is None or score < best[0]:
            best = (score, em)
        if not queue and goal is not None and best[0][0] > goal and drawn < _PORTFOLIO_DEPTH:
            p = list(range(state.n))
            rng.shuffle(p)
            queue.append((p, False))
            queue.append((p, True))
            drawn += 1
    return best[1]


def transform_to_zero(state: TargetState, opts: Optional[SynthOptions] = None) -> Circuit:
    """Emit the circuit that maps the target state to +|00...0>.

    The emitter's own bookkeeping must land on the all-zeros component
    within 1e-9 or Diverged is raised; with opts.verify the circuit is
    additionally replayed through the independent simulator and checked
    against the same tolerance.
    """
    opts = opts or SynthOptions()
    circ = Circuit(n=state.n, gates=tuple(_emit(state, opts).gates))
    if opts.verify:
        final = sim.run(circ, _verify_state(state.n, state))
        fid = abs(final.amplitude(0)) ** 2
        if fid < 1.0 - FIDELITY_TOL:
            raise Diverged(f"simulated transform reaches |00...0> with probability {fid!r}")
    return circ


def synthesize(state: TargetState, opts: Optional[SynthOptions] = None) -> SynthReport:
    """Build and (by default) verify the preparation circuit for a state.

    The returned circuit maps |00...0> to the target.  With verify on, the
    fidelity field holds |<target|circuit|00...0>|^2 as measured by the
    independent simulator, and anything below 1 - 1e-9 raises Diverged.
    """
    opts = opts or SynthOptions()
    em = _emit(state, opts)
    prep = invert(Circuit(n=state.n, gates=tuple(em.gates)))

    fid: Optional[float] = None
    if opts.verify:
        kind = sim.DenseState if state.n <= _DENSE_VERIFY_CAP else sim.SparseState
        prepared = sim.run(prep, kind.zero(state.n))
        fid = sim.fidelity(_verify_state(state.n, state), prepared)
        if fid < 1.0 - FIDELITY_TOL:
            raise Diverged(f"prepared state fidelity {fid!r} below {1.0 - FIDELITY_TOL}")

    return SynthReport(
        circuit=prep,
        counts=count(prep),
        recursion_nodes=em.recursion_nodes,
        pruned_branches=em.pruned_branches,
        fidelity=fid,
    )
