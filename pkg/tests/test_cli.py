"""CLI: subcommand flows, key=value output, exit codes."""

import math

import pytest

from fockprep import Diverged, load_circuit, load_state, save_state, validate_target
from fockprep.cli import main


def _kv(capsys):
    """Parse the captured stdout into a key -> value dict."""
    out = capsys.readouterr().out
    pairs = {}
    for line in out.splitlines():
        key, _, value = line.partition("=")
        pairs[key] = value
    return pairs


def _write_worked_example(path):
    st = validate_target(
        [
            ("001", 1.0 / math.sqrt(3.0)),
            ("010", 1.0 / math.sqrt(6.0)),
            ("100", 1.0 / math.sqrt(2.0)),
        ],
        3,
        1,
    )
    save_state(st, path)
    return st


class TestSynthVerifyFlow:
    def test_gen_synth_verify(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        assert main(["gen", "--n", "7", "--m", "2", "--support", "9",
                     "--seed", "3", "--output", str(state)]) == 0
        kv = _kv(capsys)
        assert kv["n"] == "7" and kv["m"] == "2" and kv["support"] == "9"

        assert main(["synth", "--input", str(state), "--output", str(circ)]) == 0
        kv = _kv(capsys)
        assert float(kv["fidelity"]) > 1.0 - 1e-9
        assert int(kv["cnot_total"]) == int(kv["cnot_count"]) + int(kv["ch_count"])

        assert main(["verify", "--state", str(state), "--circuit", str(circ)]) == 0
        kv = _kv(capsys)
        assert kv["ok"] == "true"
        assert float(kv["fidelity"]) > 1.0 - 1e-9

    def test_synth_worked_example_reports_three_cnots(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        _write_worked_example(state)
        assert main(["synth", "--input", str(state), "--output", str(circ)]) == 0
        kv = _kv(capsys)
        assert kv["cnot_total"] == "3"
        assert kv["grand_total"] == "9"

    def test_synth_text_format(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        circ = tmp_path / "circ.txt"
        _write_worked_example(state)
        assert main(["synth", "--input", str(state), "--output", str(circ),
                     "--format", "text"]) == 0
        assert circ.read_text().startswith("# n=3\n")
        assert len(load_circuit(circ).gates) == 7

    def test_verify_against_the_wrong_state_fails(self, tmp_path, capsys):
        right = tmp_path / "right.json"
        wrong = tmp_path / "wrong.json"
        circ = tmp_path / "circ.json"
        _write_worked_example(right)
        save_state(validate_target([("110", 1.0)], 3, 2), wrong)
        assert main(["synth", "--input", str(right), "--output", str(circ)]) == 0
        capsys.readouterr()
        assert main(["verify", "--state", str(wrong), "--circuit", str(circ)]) == 1
        assert _kv(capsys)["ok"] == "false"

    def test_no_verify_skips_the_fidelity_line(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        _write_worked_example(state)
        assert main(["synth", "--input", str(state), "--output", str(circ),
                     "--no-verify"]) == 0
        assert "fidelity" not in _kv(capsys)


class TestSimulate:
    def test_prep_circuit_reproduces_the_state(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        out = tmp_path / "out.json"
        original = _write_worked_example(state)
        main(["synth", "--input", str(state), "--output", str(circ)])
        capsys.readouterr()
        assert main(["simulate", "--circuit", str(circ), "--output", str(out)]) == 0
        kv = _kv(capsys)
        assert kv["support"] == "3"
        back = load_state(out)
        assert back.n == 3 and back.m == 1
        want = original.amplitude_map()
        got = back.amplitude_map()
        assert set(got) == set(want)
        assert all(abs(got[k] - want[k]) < 1e-9 for k in want)

    def test_initial_state_file_through_the_transform(self, tmp_path, capsys):
        from fockprep import save_circuit, transform_to_zero

        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        out = tmp_path / "out.json"
        original = _write_worked_example(state)
        save_circuit(transform_to_zero(original), circ)
        assert main(["simulate", "--circuit", str(circ), "--initial", str(state),
                     "--output", str(out)]) == 0
        back = load_state(out)
        assert back.n == 3 and back.m == 0
        assert back.terms[0][0].occ == 0

    def test_mixed_weight_output_rejected(self, tmp_path, capsys):
        from fockprep import Circuit, X, save_circuit

        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        out = tmp_path / "out.json"
        _write_worked_example(state)
        # X on qubit 0 scatters the three terms across weights 0, 1 and 2,
        # which is no longer a fixed-particle state file
        save_circuit(Circuit(n=3, gates=(X(0),)), circ)
        assert main(["simulate", "--circuit", str(circ), "--initial", str(state),
                     "--output", str(out)]) == 2

    def test_count(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        circ = tmp_path / "circ.json"
        _write_worked_example(state)
        main(["synth", "--input", str(state), "--output", str(circ)])
        capsys.readouterr()
        assert main(["count", "--circuit", str(circ)]) == 0
        kv = _kv(capsys)
        assert kv["gates"] == "7"
        assert kv["cnot_total"] == "3"


class TestBound:
    def test_pinned_lines(self, capsys):
        assert main(["bound", "--n", "20", "--m", "2"]) == 0
        kv = _kv(capsys)
        assert kv["asymptotic_cnot"] == "800"
        assert kv["closed_total"] == "1406"
        assert kv["closed_cnot"] == "684"
        assert kv["beats_full_hilbert"] == "true"
        assert kv["beats_ortiz"] == "true"

    def test_no_closed_forms_above_two_electrons(self, capsys):
        assert main(["bound", "--n", "14", "--m", "6"]) == 0
        kv = _kv(capsys)
        assert "closed_total" not in kv
        assert kv["recurrence_total"]
        assert kv["beats_full_hilbert"] == "false"


class TestGen:
    def test_paired(self, tmp_path, capsys):
        out = tmp_path / "p.json"
        assert main(["gen", "--n", "8", "--m", "4", "--paired", "3",
                     "--seed", "1", "--output", str(out)]) == 0
        st = load_state(out)
        assert st.n == 8 and st.m == 4 and st.support == 3
        for cfg, _ in st.terms:
            bits = cfg.bits
            assert all(bits[2 * i] == bits[2 * i + 1] for i in range(4))

    def test_paired_needs_even_counts(self, tmp_path, capsys):
        out = tmp_path / "p.json"
        assert main(["gen", "--n", "7", "--m", "2", "--paired", "3",
                     "--seed", "1", "--output", str(out)]) == 2

    def test_seed_env_default(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("FOCKPREP_SEED", "77")
        out = tmp_path / "s.json"
        assert main(["gen", "--n", "5", "--m", "2", "--full",
                     "--output", str(out)]) == 0
        assert _kv(capsys)["seed"] == "77"
        explicit = tmp_path / "e.json"
        assert main(["gen", "--n", "5", "--m", "2", "--full", "--seed", "77",
                     "--output", str(explicit)]) == 0
        assert out.read_text() == explicit.read_text()

    def test_bad_seed_env_falls_back_to_zero(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("FOCKPREP_SEED", "not-a-number")
        out = tmp_path / "s.json"
        assert main(["gen", "--n", "4", "--m", "1", "--full",
                     "--output", str(out)]) == 0
        assert _kv(capsys)["seed"] == "0"


class TestJW:
    def test_ladder_string(self, tmp_path, capsys):
        out = tmp_path / "jw.json"
        assert main(["jw", "--n", "3", "--ops", "a+ 2 a+ 1",
                     "--output", str(out)]) == 0
        st = load_state(out)
        assert st.terms[0][0].bits == "110"
        assert st.terms[0][1] == -1.0
        kv = _kv(capsys)
        assert kv["m"] == "2" and kv["support"] == "1"

    def test_bad_token(self, tmp_path, capsys):
        out = tmp_path / "jw.json"
        assert main(["jw", "--n", "3", "--ops", "b+ 1", "--output", str(out)]) == 2


class TestExitCodes:
    def test_malformed_file_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{ nope }")
        circ = tmp_path / "c.json"
        assert main(["synth", "--input", str(bad), "--output", str(circ)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_validation_error_exits_two(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        assert main(["gen", "--n", "4", "--m", "2", "--support", "99",
                     "--seed", "0", "--output", str(out)]) == 2

    def test_diverged_exits_three(self, tmp_path, capsys, monkeypatch):
        state = tmp_path / "state.json"
        circ = tmp_path / "c.json"
        _write_worked_example(state)

        def explode(*args, **kwargs):
            raise Diverged("synthetic failure for the exit-code path")

        monkeypatch.setattr("fockprep.cli.synthesize", explode)
        assert main(["synth", "--input", str(state), "--output", str(circ)]) == 3
        assert "error:" in capsys.readouterr().err
