"""Command-line interface.

Subcommands: synth, verify, simulate, count, bound, gen, jw.  All output
goes to stdout as stable key=value lines.  Exit codes: 0 success, 1 a
verification that ran and failed, 2 invalid input or malformed file,
3 synthesis diverged.  FOCKPREP_SEED supplies the default --seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import generate, jw, scaling, serialize, sim
from .circuit import count
from .errors import Diverged, FockPrepError, InvalidArgs
from .fock import Configuration, TargetState, validate_target
from .synth import SynthOptions, synthesize

# Dense replay is faster up to here; larger circuits verify sparsely.
_DENSE_CAP = 20


def _fmt_value(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, float):
        if val == int(val) and abs(val) < 1e16:
            return str(int(val))
        return format(val, ".17g")
    return str(val)


def _emit(key: str, val) -> None:
    print(f"{key}={_fmt_value(val)}")


def _zero_state(n: int):
    return sim.DenseState.zero(n) if n <= _DENSE_CAP else sim.SparseState.zero(n)


def _counts_lines(counts) -> None:
    for key in (
        "x_count",
        "cnot_count",
        "one_qubit_count",
        "ch_count",
        "cnot_total",
        "single_qubit_total",
        "grand_total",
    ):
        _emit(key, getattr(counts, key))


def _cmd_synth(args) -> int:
    state = serialize.load_state(args.input)
    opts = SynthOptions(
        zero_threshold=args.tol,
        prune=not args.no_prune,
        verify=not args.no_verify,
    )
    report = synthesize(state, opts)
    serialize.save_circuit(report.circuit, args.output, fmt=args.format)
    _emit("n", state.n)
    _emit("m", state.m)
    _emit("support", state.support)
    _counts_lines(report.counts)
    _emit("recursion_nodes", report.recursion_nodes)
    _emit("pruned_branches", report.pruned_branches)
    if report.fidelity is not None:
        _emit("fidelity", report.fidelity)
    return 0


def _cmd_verify(args) -> int:
    state = serialize.load_state(args.state)
    circuit = serialize.load_circuit(args.circuit)
    prepared = sim.run(circuit, _zero_state(circuit.n))
    target = (
        sim.DenseState.from_target(state)
        if circuit.n <= _DENSE_CAP
        else sim.SparseState.from_target(state)
    )
    fid = sim.fidelity(target, prepared)
    _emit("fidelity", fid)
    ok = fid >= 1.0 - args.tol
    _emit("ok", ok)
    return 0 if ok else 1


def _cmd_simulate(args) -> int:
    circuit = serialize.load_circuit(args.circuit)
    if args.initial == "zero":
        initial = _zero_state(circuit.n)
    else:
        state = serialize.load_state(args.initial)
        initial = (
            sim.DenseState.from_target(state)
            if circuit.n <= _DENSE_CAP
            else sim.SparseState.from_target(state)
        )
    final = sim.run(circuit, initial)
    if isinstance(final, sim.DenseState):
        entries = {
            int(k): complex(a) for k, a in enumerate(final.vec) if abs(a) >= 1e-12
        }
    else:
        entries = {k: a for k, a in final.amps.items() if abs(a) >= 1e-12}
    if not entries:
        raise InvalidArgs("final state has no amplitude above 1e-12")
    if any(abs(a.imag) > 1e-9 for a in entries.values()):
        raise InvalidArgs("final state has complex amplitudes; state files are real")
    weights = {k.bit_count() for k in entries}
    if len(weights) > 1:
        raise InvalidArgs(
            f"final state mixes Hamming weights {sorted(weights)}; not a fixed-particle state"
        )
    m = weights.pop()
    terms = [(Configuration(circuit.n, k), a.real) for k, a in sorted(entries.items())]
    out = validate_target(terms, circuit.n, m, auto_normalize=True)
    serialize.save_state(out, args.output)
    _emit("n", out.n)
    _emit("m", out.m)
    _emit("support", out.support)
    return 0


def _cmd_count(args) -> int:
    circuit = serialize.load_circuit(args.circuit)
    _emit("n", circuit.n)
    _emit("gates", len(circuit.gates))
    _counts_lines(count(circuit))
    return 0


def _cmd_bound(args) -> int:
    report = scaling.bound_report(args.n, args.m)
    _emit("n", report.n)
    _emit("m", report.m)
    _emit("recurrence_total", report.recurrence_total)
    if report.closed_total is not None:
        _emit("closed_total", report.closed_total)
        _emit("closed_cnot", report.closed_cnot)
    _emit("asymptotic_total", report.asymptotic_total)
    _emit("asymptotic_cnot", report.asymptotic_cnot)
    _emit("full_hilbert", report.full_hilbert)
    cross = scaling.crossovers(args.n, args.m)
    _emit("beats_full_hilbert", cross.beats_full_hilbert)
    _emit("beats_ortiz", cross.beats_ortiz)
    return 0


def _cmd_gen(args) -> int:
    if args.paired is not None:
        if args.n % 2 or args.m % 2:
            raise InvalidArgs("--paired needs even --n and even --m")
        state = generate.gen_paired(args.n // 2, args.m // 2, args.paired, seed=args.seed)
    else:
        support = None if args.full else args.support
        state = generate.gen_random(args.n, args.m, support=support, seed=args.seed)
    serialize.save_state(state, args.output)
    _emit("n", state.n)
    _emit("m", state.m)
    _emit("support", state.support)
    _emit("seed", args.seed)
    return 0


def _parse_ops(text: str):
    tokens = text.split()
    ops = []
    i = 0
    while i < len(tokens):
        kind = tokens[i]
        if kind not in ("a+", "a"):
            raise InvalidArgs(f"ops token {i + 1}: expected 'a+' or 'a', got {kind!r}")
        if i + 1 >= len(tokens):
            raise InvalidArgs(f"ops token {i + 1}: {kind!r} needs an orbital index")
        try:
            j = int(tokens[i + 1])
        except ValueError:
            raise InvalidArgs(f"ops token {i + 2}: bad orbital index {tokens[i + 1]!r}") from None
        ops.append(jw.create(j) if kind == "a+" else jw.annihilate(j))
        i += 2
    if not ops:
        raise InvalidArgs("empty operator string")
    return jw.OpString(ops=tuple(ops))


def _cmd_jw(args) -> int:
    ops = _parse_ops(args.ops)
    state = jw.build_state([(1.0, ops)], args.n)
    serialize.save_state(state, args.output)
    _emit("n", state.n)
    _emit("m", state.m)
    _emit("support", state.support)
    return 0


def _default_seed() -> int:
    raw = os.environ.get("FOCKPREP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockprep",
        description="Synthesize, verify and analyze preparation circuits for "
        "fixed-particle-number sparse states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a preparation circuit for a state file")
    p.add_argument("--input", required=True, help="input state file (JSON)")
    p.add_argument("--output", required=True, help="output circuit file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--tol", type=float, default=1e-12, help="branch pruning threshold")
    p.add_argument("--no-prune", action="store_true", help="disable branch pruning")
    p.add_argument("--no-verify", action="store_true", help="skip simulation check")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("verify", help="check a circuit prepares a state from |00...0>")
    p.add_argument("--state", required=True)
    p.add_argument("--circuit", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="run a circuit and write the final state")
    p.add_argument("--circuit", required=True)
    p.add_argument("--initial", default="zero", help="'zero' or a state file")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("count", help="gate histogram of a circuit file")
    p.add_argument("--circuit", required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("bound", help="gate-count bounds for (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("gen", help="generate a random state file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--full", action="store_true", help="all C(n,m) configurations")
    grp.add_argument("--support", type=int, help="number of configurations")
    grp.add_argument("--paired", type=int, help="doubly-occupied configurations")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("jw", help="apply a ladder-operator string to the vacuum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ops", required=True, help="e.g. 'a+ 2 a+ 1' (applied right to left)")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_jw)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Diverged as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except FockPrepError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
