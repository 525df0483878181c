import json

import pytest

from reidemeister.cli import main
from reidemeister.modring import ModMatrix, canonical_key


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def body(out):
    """Report payload with the timestamped header line stripped."""
    lines = out.splitlines()
    if lines and lines[0].startswith("#"):
        lines = lines[1:]
    return "\n".join(lines)


class TestOrder:
    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "order", "--modulus", "5")
        assert code == 0
        payload = json.loads(body(out))
        assert payload["group_order"] == 120
        assert payload["order_formula"] == 120
        assert payload["format"] == 1

    def test_header_line(self, capsys):
        _, out, _ = run(capsys, "order", "--modulus", "5")
        assert out.splitlines()[0].startswith("# reidemeister order format=1 ")

    def test_capacity_exit(self, capsys):
        code, _, err = run(capsys, "order", "--modulus", "7", "--cap", "10")
        assert code == 3
        assert "capacity" in err


class TestClasses:
    def test_csv_sizes_sum(self, capsys):
        code, out, _ = run(capsys, "classes", "--modulus", "5",
                           "--output", "csv", "--no-header")
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "class_id,representative,size"
        assert sum(int(r.split(",")[2]) for r in rows[1:]) == 120

    def test_json_count(self, capsys):
        code, out, _ = run(capsys, "classes", "--modulus", "5", "--no-header")
        payload = json.loads(out)
        assert code == 0
        assert payload["class_count"] == len(payload["class_sizes"])
        assert sum(payload["class_sizes"]) == 120


class TestTwisted:
    def test_sign_flip_count(self, capsys):
        code, out, _ = run(capsys, "twisted", "--modulus", "5", "--no-header")
        assert code == 0
        assert json.loads(out)["class_count"] == 9

    def test_identity_matches_classes(self, capsys):
        _, out1, _ = run(capsys, "twisted", "--modulus", "7",
                         "--aut", "identity", "--no-header")
        _, out2, _ = run(capsys, "classes", "--modulus", "7", "--no-header")
        assert json.loads(out1)["class_count"] == json.loads(out2)["class_count"]

    def test_bad_descriptor(self, capsys):
        code, _, err = run(capsys, "twisted", "--modulus", "5",
                           "--aut", "frobenius")
        assert code == 2
        assert "error" in err

    def test_deterministic_bytes(self, capsys):
        args = ("twisted", "--modulus", "7", "--output", "csv", "--no-header")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestCharacterFile:
    def _write_charfile(self, tmp_path, values):
        from reidemeister import generate_group, standard_generators
        g = generate_group(standard_generators(1, 5))
        lines = ["# character values per generator"]
        seen = []
        for aug, src in enumerate(g.gen_source):
            if src not in seen:
                seen.append(src)
                key = canonical_key(ModMatrix(g.gen_matrices[aug], g.modulus)).hex()
                lines.append(f"{key}={values[src]}")
        path = tmp_path / "char.txt"
        path.write_text("\n".join(lines) + "\n")
        return str(path)

    def test_trivial_twist_runs(self, capsys, tmp_path):
        path = self._write_charfile(tmp_path, ["+1", "+1"])
        code, out, _ = run(capsys, "twisted", "--modulus", "5",
                           "--aut", f"twist:{path}", "--no-header")
        assert code == 0
        # trivial character: the twist of the identity is the identity, so
        # this is plain conjugacy
        _, out2, _ = run(capsys, "classes", "--modulus", "5", "--no-header")
        assert json.loads(out)["class_count"] == json.loads(out2)["class_count"]

    def test_inconsistent_character_rejected(self, capsys, tmp_path):
        # the group is perfect: a generator value of -1 cannot extend
        path = self._write_charfile(tmp_path, ["-1", "+1"])
        code, _, err = run(capsys, "twisted", "--modulus", "5",
                           "--aut", f"twist:{path}")
        assert code == 2
        assert "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "twisted", "--modulus", "5",
                           "--aut", "twist:/nonexistent/char.txt")
        assert code == 2


class TestCertifyCommands:
    def test_prop32_pass(self, capsys):
        code, out, _ = run(capsys, "certify-prop32", "--p", "5", "--no-header")
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "pass"
        assert payload["computed"]["class_count"] == 9

    def test_prop32_bad_p(self, capsys):
        code, _, err = run(capsys, "certify-prop32", "--p", "4")
        assert code == 2

    def test_growth_single(self, capsys):
        code, out, _ = run(capsys, "certify-growth", "--primes", "5",
                           "--no-header")
        assert code == 0

    def test_growth_default_fails_monotonicity(self, capsys):
        # the R column over 5,7,11,13 is 9,7,11,17: bound holds everywhere
        # but strict growth does not, so the verdict (and exit) is fail
        code, out, _ = run(capsys, "certify-growth", "--no-header")
        assert code == 1
        payload = json.loads(out)
        assert payload["computed"]["bound_ok"] is True
        assert payload["computed"]["strictly_increasing"] is False

    def test_growth_csv(self, capsys):
        code, out, _ = run(capsys, "certify-growth", "--primes", "5",
                           "--output", "csv", "--no-header")
        assert out.splitlines()[0] == "p,group_order,reidemeister_count,bound"
        assert out.splitlines()[1] == "5,120,9,1"

    def test_growth_capacity_inconclusive(self, capsys):
        code, out, _ = run(capsys, "certify-growth", "--primes", "5,7",
                           "--cap", "200", "--no-header")
        assert code == 3
        payload = json.loads(out)
        assert payload["verdict"] == "inconclusive"
        assert payload["computed"]["capacity_exceeded_at"] == 7


class TestOracleCommands:
    def test_semidirect(self, capsys):
        code, out, _ = run(capsys, "oracle-semidirect", "--modulus", "5",
                           "--no-header")
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"

    def test_shift(self, capsys):
        code, out, _ = run(capsys, "oracle-shift", "--modulus", "5",
                           "--trials", "3", "--no-header")
        assert code == 0
        payload = json.loads(out)
        assert payload["computed"]["all_pass"] is True
        assert payload["computed"]["trials"] == 3

    def test_shift_seeded_deterministic(self, capsys):
        args = ("oracle-shift", "--modulus", "5", "--trials", "3",
                "--seed", "7", "--no-header")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_quotient(self, capsys):
        code, out, _ = run(capsys, "oracle-quotient", "--modulus", "25",
                           "--target", "5", "--no-header")
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"

    def test_quotient_non_divisor(self, capsys):
        code, _, err = run(capsys, "oracle-quotient", "--modulus", "5",
                           "--target", "7")
        assert code == 2


class TestBlocksCommand:
    def test_default_is_honest_fail(self, capsys):
        # over the smallest admissible modulus the only candidate unit is
        # w = 2 = -1, where the off-block argument degenerates; the
        # certificate records 88 violating solutions and fails
        code, out, _ = run(capsys, "blocks-thm33", "--no-header")
        assert code == 1
        payload = json.loads(out)
        assert payload["computed"]["solutions_in_torus"] == 96
        assert payload["computed"]["block_violations"] == 88

    def test_bad_w(self, capsys):
        code, _, err = run(capsys, "blocks-thm33", "--w", "3")
        assert code == 2


class TestOutput:
    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "report.json"
        code, out, _ = run(capsys, "order", "--modulus", "5", "--no-header",
                           "--out", str(dest))
        assert code == 0
        assert out == ""
        assert json.loads(dest.read_text())["group_order"] == 120

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "classes", "--modulus", "5",
                           "--output", "text", "--no-header")
        assert code == 0
        assert "class_count:" in out

    def test_unwritable_out(self, capsys):
        code, _, err = run(capsys, "order", "--modulus", "5",
                           "--out", "/nonexistent/dir/x.json")
        assert code == 2

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["no-such-command"])
        assert e.value.code == 2
