import json

import pytest

from minorcones.cli import main

HADAMARD = "{1,2}{} / {1}{2}"
COUNTEREXAMPLE = ("{1,2,3,4}{1,3,4}{1,2}{1,4}{2,3}{2,4}{3}{} / "
                  "{1,2,3}{1,2,4}{2,3,4}{1,3}{3,4}{1}{2}{4}")


@pytest.fixture
def m6_file(tmp_path):
    f = tmp_path / "m6.txt"
    f.write_text("1 0 1 1\n0 1 1 1\n")
    return str(f)


@pytest.fixture
def poly_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("1, 0\n0, e\n")
    return str(f)


class TestNullity:
    def test_text_output(self, m6_file, capsys):
        assert main(["nullity", m6_file]) == 0
        out = capsys.readouterr().out
        assert "{1,2,3,4}: 2" in out
        assert "{3,4}: 1" in out

    def test_json_output(self, m6_file, capsys):
        assert main(["nullity", m6_file, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 4
        assert payload["entries"]["{3,4}"] == 1

    def test_bad_file_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 x\n")
        assert main(["nullity", str(bad)]) == 2
        assert "error" in capsys.readouterr().err


class TestMembership:
    def test_member_exits_0(self, capsys):
        assert main(["membership", HADAMARD, "--semigroup", "E"]) == 0
        assert "member of E_2: True" in capsys.readouterr().out

    def test_non_member_exits_1(self, capsys):
        assert main(["membership", COUNTEREXAMPLE,
                     "--semigroup", "D"]) == 1
        out = capsys.readouterr().out
        assert "member of D_4: False" in out
        assert "violated: M6" in out

    def test_inhomogeneous_exits_2(self, capsys):
        assert main(["membership", "{1,2} / {1}", "--semigroup", "E"]) == 2
        assert "not homogeneous" in capsys.readouterr().err

    def test_h_membership(self, capsys):
        assert main(["membership", HADAMARD, "--semigroup", "H"]) == 0
        assert main(["membership", "{1,2} / {1}", "--semigroup", "H"]) == 1
        capsys.readouterr()

    def test_koteljanskii_certificate(self, capsys):
        assert main(["membership", HADAMARD, "--semigroup", "K",
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["member"] is True
        assert payload["combination"]

    def test_koteljanskii_hyperplane(self, capsys):
        r1 = ("{1,2,4}{1,3,4}{2,3}{1}{4} / "
              "{1,2}{1,3}{1,4}{2,4}{3,4}")
        assert main(["membership", r1, "--semigroup", "K",
                     "--format", "json"]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["member"] is False
        assert len(payload["hyperplane"]) == 16


class TestExtremeRays:
    def test_e3(self, capsys):
        assert main(["extreme-rays", "--system", "E", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert "6 extreme rays" in out
        assert out.count("[koteljanskii]") == 6

    def test_d4_json(self, capsys):
        assert main(["extreme-rays", "--system", "D", "--n", "4",
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ray_count"] == 46
        assert sum(payload["koteljanskii"]) == 24
        assert sorted(payload["orbit_sizes"]) == [6, 8, 8, 12, 12]

    def test_unsupported_pair_exits_2(self, capsys):
        assert main(["extreme-rays", "--system", "D", "--n", "5"]) == 2
        assert "unsupported" in capsys.readouterr().err

    def test_byte_stability(self, capsys):
        main(["extreme-rays", "--system", "D", "--n", "4"])
        first = capsys.readouterr().out
        main(["extreme-rays", "--system", "D", "--n", "4"])
        assert capsys.readouterr().out == first


class TestAsnAndProbes:
    def test_asn(self, poly_file, capsys):
        assert main(["asn", poly_file]) == 0
        out = capsys.readouterr().out
        assert "{2}: 1" in out and "{1}: 0" in out

    def test_asn_singular_exits_2(self, tmp_path, capsys):
        f = tmp_path / "sing.txt"
        f.write_text("1, 1\n1, 1\n")
        assert main(["asn", str(f)]) == 2
        capsys.readouterr()

    def test_probe_family(self, m6_file, capsys):
        assert main(["probe-family", COUNTEREXAMPLE, m6_file]) == 0
        out = capsys.readouterr().out
        assert "predicted_slope: -1" in out
        assert "verdict: matches" in out

    def test_probe_poly_custom_grid(self, poly_file, capsys):
        assert main(["probe-poly", HADAMARD, poly_file,
                     "--eps-min", "1e-6", "--eps-max", "1e-2"]) == 0
        assert "verdict: matches" in capsys.readouterr().out

    def test_out_file_written(self, m6_file, tmp_path, capsys):
        dest = tmp_path / "report.json"
        assert main(["nullity", m6_file, "--format", "json",
                     "--out", str(dest)]) == 0
        capsys.readouterr()
        assert json.loads(dest.read_text())["n"] == 4


class TestSearchCommands:
    def test_bound_search_small(self, capsys):
        assert main(["bound-search", HADAMARD, "--samples", "200",
                     "--seed", "1"]) == 0
        out = capsys.readouterr().out
        assert "max_ratio:" in out and "diverging: False" in out

    def test_fiedler_small(self, capsys):
        assert main(["fiedler", "--n", "4", "--samples", "100",
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["worst_residual"] >= -1e-9
