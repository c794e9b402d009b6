import random
import subprocess
import sys

import numpy as np
import pytest

from nashbench import (
    ExperimentConfig,
    GameKind,
    GenSpec,
    epsilon,
    named_game,
    parse_nfg,
    render,
    run_suite,
    uniform_profile,
    write_nfg,
)
from nashbench.cli import main

MP_DOC = write_nfg(named_game("MATCHING_PENNIES_01"))
NAN_DOC = 'NFG 1 R "t" { "a" "b" } { 2 2 }\n1 0 0 NaN 0 1 1 0\n'


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    if capsys is None:
        return code, "", ""
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_writes_parseable_constant_sum_game(self, tmp_path, capsys):
        out = tmp_path / "g.nfg"
        code, _, _ = run_cli(
            "gen", "--players", "2", "--actions", "3", "--kind", "zs",
            "--seed", "7", "--out", str(out), capsys=capsys,
        )
        assert code == 0
        g = parse_nfg(out.read_text())
        assert np.all(g.payoffs[0] + g.payoffs[1] == 1.0)

    def test_idempotent_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a.nfg", tmp_path / "b.nfg"
        args = ["gen", "--players", "2", "--actions", "4", "--kind", "uniform",
                "--seed", "13"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_constant_sum_needs_two_players(self, tmp_path, capsys):
        code, _, err = run_cli(
            "gen", "--players", "3", "--actions", "3", "--kind", "zs",
            "--out", str(tmp_path / "x.nfg"), capsys=capsys,
        )
        assert code == 1
        assert "2 players" in err


class TestSolve:
    def test_single_iteration_equals_uniform_epsilon(self, tmp_path, capsys):
        path = tmp_path / "mp.nfg"
        path.write_text(MP_DOC)
        code, out, _ = run_cli(
            "solve", "--game", str(path), "--algo", "fp", "--iters", "1",
            capsys=capsys,
        )
        assert code == 0
        printed = float(out.strip().rsplit(" ", 1)[-1])
        g = named_game("MATCHING_PENNIES_01")
        assert printed == epsilon(g, uniform_profile(g))

    def test_cfr_converges_on_matching_pennies(self, tmp_path, capsys):
        path = tmp_path / "mp.nfg"
        path.write_text(MP_DOC)
        code, out, _ = run_cli(
            "solve", "--game", str(path), "--algo", "cfr", "--iters", "10000",
            capsys=capsys,
        )
        assert code == 0
        assert float(out.strip().rsplit(" ", 1)[-1]) < 0.02

    def test_trace_output(self, tmp_path, capsys):
        path = tmp_path / "mp.nfg"
        path.write_text(MP_DOC)
        code, out, _ = run_cli(
            "solve", "--game", str(path), "--algo", "cfr", "--iters", "100",
            "--trace", "10,100", capsys=capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "iteration,epsilon"
        assert lines[1].startswith("10,")
        assert lines[2].startswith("100,")
        assert lines[3].startswith("epsilon: ")

    def test_nan_file_is_a_data_error(self, tmp_path, capsys):
        path = tmp_path / "bad.nfg"
        path.write_text(NAN_DOC)
        code, _, err = run_cli(
            "solve", "--game", str(path), "--algo", "fp", "--iters", "5",
            capsys=capsys,
        )
        assert code == 2
        assert "non-finite payoff" in err

    def test_missing_file_is_a_data_error(self, tmp_path, capsys):
        code, _, _ = run_cli(
            "solve", "--game", str(tmp_path / "nope.nfg"), "--algo", "fp",
            capsys=capsys,
        )
        assert code == 2


class TestEval:
    def test_reports_both_algorithms(self, tmp_path, capsys):
        path = tmp_path / "mp.nfg"
        path.write_text(MP_DOC)
        code, out, _ = run_cli(
            "eval", "--game", str(path), "--iters", "50", capsys=capsys
        )
        assert code == 0
        header, values = out.strip().splitlines()
        assert header == "eps_cfr,eps_fp,diff"
        ec, ef, d = map(float, values.split(","))
        assert d == ec - ef


class TestBench:
    def test_csv_header_contract(self, capsys):
        code, out, _ = run_cli(
            "bench", "--players", "2", "--actions", "3", "--kind", "zs",
            "--games", "4", "--iters", "60", "--seed", "1",
            "--format", "csv", "--threads", "1", capsys=capsys,
        )
        assert code == 0
        assert out.splitlines()[0] == "label,m,games,iterations,cfr_eps,fp_eps,diff,ci95,winner"

    def test_matches_library_row(self, capsys):
        code, out, _ = run_cli(
            "bench", "--players", "2", "--actions", "3", "--kind", "uniform",
            "--games", "5", "--iters", "80", "--seed", "9",
            "--format", "csv", "--threads", "1", capsys=capsys,
        )
        assert code == 0
        config = ExperimentConfig(
            GenSpec(2, 3, GameKind.UNIFORM_RANDOM),
            iterations=80, stage1_games=5, stage2_games=5, master_seed=9,
        )
        assert out == render([run_suite(config, threads=1)], "csv")

    def test_single_game_is_usage_error(self, capsys):
        code, _, err = run_cli(
            "bench", "--players", "2", "--actions", "3", "--games", "1",
            capsys=capsys,
        )
        assert code == 1
        assert ">= 2" in err

    def test_per_game_out(self, tmp_path, capsys):
        dump = tmp_path / "per_game.csv"
        code, _, _ = run_cli(
            "bench", "--players", "2", "--actions", "2", "--games", "3",
            "--iters", "30", "--seed", "2", "--per-game-out", str(dump),
            "--threads", "1", capsys=capsys,
        )
        assert code == 0
        lines = dump.read_text().strip().splitlines()
        assert lines[0] == "game_index,eps_cfr,eps_fp,diff"
        assert len(lines) == 4


class TestConvert:
    def test_reports_nan_rejection(self, tmp_path, capsys):
        indir = tmp_path / "in"
        indir.mkdir()
        (indir / "bad.nfg").write_text(NAN_DOC)
        (indir / "ok.nfg").write_text(MP_DOC)
        code, out, _ = run_cli("convert", "--in-dir", str(indir), capsys=capsys)
        assert code == 0
        assert "accepted: 1" in out
        assert "rejected: 1" in out
        assert "non-finite payoff" in out

    def test_normalize_rewrites_payoffs(self, tmp_path, capsys):
        from nashbench import Game

        indir, outdir = tmp_path / "in", tmp_path / "out"
        indir.mkdir()
        (indir / "g.nfg").write_text(
            write_nfg(Game((3,), (np.array([2.0, 4.0, 6.0]),)))
        )
        code, _, _ = run_cli(
            "convert", "--in-dir", str(indir), "--normalize",
            "--out-dir", str(outdir), capsys=capsys,
        )
        assert code == 0
        g = parse_nfg((outdir / "g.nfg").read_text())
        np.testing.assert_array_equal(g.payoffs[0], [0.0, 0.5, 1.0])

    def test_empty_directory(self, tmp_path, capsys):
        code, out, _ = run_cli("convert", "--in-dir", str(tmp_path), capsys=capsys)
        assert code == 0
        assert "accepted: 0" in out

    def test_unreadable_directory(self, tmp_path, capsys):
        code, _, _ = run_cli(
            "convert", "--in-dir", str(tmp_path / "missing"), capsys=capsys
        )
        assert code == 2

    def test_report_file(self, tmp_path, capsys):
        indir = tmp_path / "in"
        indir.mkdir()
        (indir / "g.nfg").write_text(MP_DOC)
        report = tmp_path / "report.txt"
        code, out, _ = run_cli(
            "convert", "--in-dir", str(indir), "--report", str(report),
            capsys=capsys,
        )
        assert code == 0
        assert report.read_text() == out


class TestIdempotence:
    def test_solve_output_stable(self, tmp_path, capsys):
        path = tmp_path / "mp.nfg"
        path.write_text(MP_DOC)
        args = ["solve", "--game", str(path), "--algo", "cfr", "--iters", "50"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_convert_output_stable(self, tmp_path, capsys):
        indir = tmp_path / "in"
        indir.mkdir()
        (indir / "g.nfg").write_text(MP_DOC)
        args = ["convert", "--in-dir", str(indir)]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first


class TestUsageErrors:
    def test_unknown_flag_rejected(self, capsys):
        code, _, _ = run_cli(
            "gen", "--players", "2", "--actions", "2", "--out", "x.nfg",
            "--bogus", "1", capsys=capsys,
        )
        assert code == 1

    def test_unknown_subcommand(self, capsys):
        assert run_cli("frobnicate", capsys=capsys)[0] == 1

    def test_missing_required_flag(self, capsys):
        assert run_cli("gen", "--players", "2", capsys=capsys)[0] == 1

    def test_bad_flag_value(self, capsys):
        code, _, _ = run_cli(
            "bench", "--players", "x", "--actions", "3", "--games", "4",
            capsys=capsys,
        )
        assert code == 1

    @pytest.mark.parametrize("fmt", ["csv", "markdown"])
    def test_format_choices(self, fmt, capsys):
        code, out, _ = run_cli(
            "bench", "--players", "2", "--actions", "2", "--games", "2",
            "--iters", "10", "--format", fmt, "--threads", "1", capsys=capsys,
        )
        assert code == 0

    def test_fuzzed_flag_sets_respect_exit_contract(self, tmp_path, capsys):
        # Random flag soup must always resolve to 0/1/2, never a traceback.
        rng = random.Random(123)
        game_path = tmp_path / "g.nfg"
        game_path.write_text(MP_DOC)
        commands = ["gen", "solve", "eval", "bench", "convert", "oops"]
        flags = [
            "--players", "--actions", "--kind", "--seed", "--out",
            "--game", "--algo", "--iters", "--trace", "--games",
            "--escalate-games", "--format", "--threads", "--in-dir",
            "--normalize", "--bogus",
        ]
        values = [
            "2", "3", "0", "zs", "uniform", "fp", "cfr", "csv",
            str(game_path), str(tmp_path), str(tmp_path / "o.nfg"), "-1", "x",
        ]
        for _ in range(60):
            argv = [rng.choice(commands)]
            for _ in range(rng.randint(0, 6)):
                argv.append(rng.choice(flags))
                if rng.random() < 0.8:
                    argv.append(rng.choice(values))
            code = main(argv)
            capsys.readouterr()
            assert code in (0, 1, 2), argv


def test_module_entry_point(tmp_path):
    out = tmp_path / "g.nfg"
    proc = subprocess.run(
        [sys.executable, "-m", "nashbench", "gen", "--players", "2",
         "--actions", "2", "--seed", "3", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert out.exists()
