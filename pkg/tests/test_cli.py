"""Tests for the command-line interface."""
import json

import pytest

from tropgw.cli import main, parse_insertions


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParseInsertions:
    def test_plain(self):
        assert parse_insertions("T2") == [(2, 0)]

    def test_psi_and_multiplicity(self):
        assert parse_insertions("psi^1 T2, T2*3, T0") == \
            [(2, 1)] + [(2, 0)] * 3 + [(0, 0)]

    def test_caret_optional(self):
        assert parse_insertions("psi2 T1") == [(1, 2)]

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_insertions("S3")
        with pytest.raises(ValueError):
            parse_insertions("T7")


class TestInvariantCommand:
    def test_line_through_two_points(self, capsys):
        code, out, _ = run(capsys, "invariant", "--d", "1", "--r", "1",
                           "--m", "0", "--nu", "0", "--cls", "0")
        assert code == 0
        assert json.loads(out)["value"] == "1"

    def test_incompatible_key_is_zero(self, capsys):
        code, out, _ = run(capsys, "invariant", "--d", "1", "--r", "1,1",
                           "--m", "0", "--nu", "0", "--cls", "0")
        assert code == 0
        assert json.loads(out)["value"] == "0"

    def test_deterministic_bytes(self, capsys):
        args = ("invariant", "--d", "1", "--nu", "1")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2
        assert json.loads(out1)["value"] == "1"


class TestOracleCommand:
    def test_twelve_cubics(self, capsys):
        code, out, _ = run(capsys, "oracle", "--d", "3", "--ins", "T2*8")
        assert code == 0
        assert json.loads(out)["value"] == "12"

    def test_descendent(self, capsys):
        code, out, _ = run(capsys, "oracle", "--d", "2", "--ins",
                           "psi^4 T2")
        assert code == 0
        assert json.loads(out)["value"] == "1/8"

    def test_identities(self, capsys):
        code, out, _ = run(capsys, "oracle", "verify-identities",
                           "--nmax", "10")
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_missing_ins_is_usage_error(self, capsys):
        code, _, err = run(capsys, "oracle", "--d", "1")
        assert code == 2
        assert "ins" in err


class TestGenArrangement:
    def test_roundtrip(self, capsys, tmp_path):
        out = tmp_path / "arr.json"
        code, _, _ = run(capsys, "gen-arrangement", "--k", "2",
                         "--seed", "3", "--out", str(out))
        assert code == 0
        obj = json.loads(out.read_text())
        assert len(obj["P"]) == 2 and obj["seed"] == 3

    def test_outdir_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("TROPGW_OUTDIR", str(tmp_path))
        code, _, _ = run(capsys, "gen-arrangement", "--k", "2",
                         "--out", "a.json")
        assert code == 0
        assert (tmp_path / "a.json").exists()

    def test_seed_changes_points(self, capsys, tmp_path):
        texts = []
        for seed in ("1", "2"):
            out = tmp_path / f"s{seed}.json"
            run(capsys, "gen-arrangement", "--k", "2", "--seed", seed,
                "--out", str(out))
            texts.append(out.read_text())
        assert texts[0] != texts[1]


class TestScatterAndLines:
    def test_scatter_shape(self, capsys):
        code, out, _ = run(capsys, "scatter", "--k", "2", "--dmax", "1")
        assert code == 0
        obj = json.loads(out)
        assert obj["k"] == 2
        assert all({"base", "direction", "coeff", "xexp", "u"}
                   <= set(w) for w in obj["walls"])

    def test_broken_lines_k0_count(self, capsys, tmp_path):
        arr = tmp_path / "arr0.json"
        arr.write_text(json.dumps(
            {"Q": ["1/7", "2/9"], "P": [], "seed": 0, "general": True}))
        code, out, _ = run(capsys, "broken-lines", "--arr", str(arr),
                           "--dmax", "1")
        assert code == 0
        assert json.loads(out)["count"] == 3

    def test_potential_runs(self, capsys):
        code, out, _ = run(capsys, "potential", "--k", "2", "--dmax", "1",
                           "--mbar", "1")
        assert code == 0
        obj = json.loads(out)
        assert obj["W_k0"] and obj["W_kmbar"]


class TestTableAndVerify:
    def test_table_csv(self, capsys):
        code, out, _ = run(capsys, "table", "--kmax", "2", "--dmax", "0",
                           "--numax", "1", "--csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d,r,m,nu,cls,value"
        assert len(lines) > 1

    def test_bad_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_verify_quick(self, capsys):
        code, out, _ = run(capsys, "verify", "--tier", "quick")
        assert code == 0
        assert "overall: PASS" in out
