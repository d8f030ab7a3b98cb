import csv
import io
import json

import pytest

from latticewalks.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_coeffs_bcc_table(capsys):
    code, out, _ = run(capsys, "coeffs", "--lattice", "bcc", "--max-order", "12")
    assert code == 0
    doc = json.loads(out)
    assert doc["lattice"] == "bcc"
    last = doc["coefficients"][-1]
    assert last["index"] == [12] and last["num"] == "5929" and last["den"] == "3600"


def test_coeffs_constant_term(capsys):
    code, out, _ = run(capsys, "coeffs", "--lattice", "chain-nn", "--max-order", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["coefficients"] == [{"index": [0], "num": "1", "den": "1"}]


def test_coeffs_finite_ring(capsys):
    code, out, _ = run(
        capsys, "coeffs", "--lattice", "chain-nn-finite", "--pbc", "3", "--max-order", "6"
    )
    assert code == 0
    doc = json.loads(out)
    entries = {tuple(e["index"]): (e["num"], e["den"]) for e in doc["coefficients"]}
    assert entries[(3,)] == ("1", "3")
    assert doc["pbc_size"] == 3


def test_coeffs_pretty_rationals(capsys):
    code, out, _ = run(
        capsys, "coeffs", "--lattice", "bcc", "--max-order", "12", "--format", "pretty"
    )
    assert code == 0
    assert "5929/3600" in out
    assert "." not in out.replace("...", "")  # never decimal expansions


def test_coeffs_csv_json_round_trip(capsys):
    code, csv_out, _ = run(
        capsys, "coeffs", "--lattice", "chain-nnn", "--max-order", "6", "--format", "csv"
    )
    assert code == 0
    code, json_out, _ = run(capsys, "coeffs", "--lattice", "chain-nnn", "--max-order", "6")
    assert code == 0
    csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
    json_rows = json.loads(json_out)["coefficients"]
    assert len(csv_rows) == len(json_rows)
    for c, j in zip(csv_rows, json_rows):
        assert [int(x) for x in c["index"].split()] == j["index"]
        assert c["num"] == j["num"] and c["den"] == j["den"]


def test_verify_single_lattice(capsys):
    code, out, err = run(capsys, "verify", "--lattice", "honeycomb", "--max-order", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["failed"] == 0
    assert "honeycomb: checked 7, failed 0" in err


def test_verify_all_lattices(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--max-order", "6", "--threads", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"] == {"lattices": 7, "failed": 0}
    assert [r["lattice"] for r in doc["reports"]] == [
        "chain-nn", "chain-nn-finite", "chain-nnn", "triangular", "bcc", "honeycomb", "diamond",
    ]


def test_verify_failure_exit_code(capsys):
    # deliberately aliased fixed grid: failures must surface as exit 1
    code, out, _ = run(
        capsys, "verify", "--lattice", "triangular", "--max-order", "6", "--grid", "3"
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["summary"]["failed"] > 0
    bad = [r for r in doc["records"] if not r["pass"]]
    assert bad and all("numeric" in r and "exact_num" in r for r in bad)


def test_verify_recurrence_flag(capsys):
    code, out, _ = run(
        capsys, "verify", "--lattice", "chain-nnn", "--max-order", "12", "--recurrence"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["recurrence"]["failed"] == 0


def test_verify_csv_matches_json(capsys):
    args = ("verify", "--lattice", "chain-nn", "--max-order", "8")
    code, json_out, _ = run(capsys, *args)
    code2, csv_out, _ = run(capsys, *args, "--format", "csv")
    assert code == code2 == 0
    json_rows = json.loads(json_out)["records"]
    csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
    assert len(csv_rows) == len(json_rows)
    for c, j in zip(csv_rows, json_rows):
        assert c["index"] == j["index"]
        assert c["exact_num"] == j["exact_num"]
        assert float(c["numeric"]) == j["numeric"]
        assert c["pass"] == str(j["pass"])


def test_conjecture_command(capsys):
    code, out, _ = run(capsys, "conjecture", "--n-max", "30")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["records"]) == 16
    assert all(r["is_square"] for r in doc["records"])
    by_order = {r["order"]: r for r in doc["records"]}
    assert by_order[12]["root_num"] == "77" and by_order[12]["root_den"] == "60"


def test_oracle_command(capsys):
    code, out, err = run(capsys, "oracle", "--lattice", "triangular", "--n", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["total"] == "2040"
    assert "total 2040" in err


def test_oracle_bound_guard(capsys):
    code, _, err = run(capsys, "oracle", "--lattice", "bcc", "--n", "20")
    assert code == 2
    assert "error" in err


def test_appendix_b_command(capsys):
    code, out, _ = run(capsys, "appendix-b", "--pbc", "4", "--rho", "0.5", "--phi-half")
    assert code == 0
    doc = json.loads(out)
    kinds = [r["kind"] for r in doc["records"]]
    assert "phi_half" in kinds
    assert all(r["pass"] for r in doc["records"])


def test_appendix_b_phi_half_needs_even_ring(capsys):
    code, _, err = run(capsys, "appendix-b", "--pbc", "5", "--rho", "0.5", "--phi-half")
    assert code == 2
    assert "even" in err


def test_appendix_b_single_d(capsys):
    code, out, _ = run(capsys, "appendix-b", "--pbc", "4", "--rho", "0.5", "--d", "2")
    assert code == 0
    doc = json.loads(out)
    fourier = [r for r in doc["records"] if r["kind"].startswith("fourier")]
    assert len(fourier) == 1 and fourier[0]["d"] == 2


def test_lattice_command(capsys):
    code, out, _ = run(capsys, "lattice", "--lattice", "diamond")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "diamond"
    assert doc["basis_size"] == 2
    assert len(doc["steps"]) == 8
    assert doc["steps"][0]["displacement"] == ["1/4", "1/4", "1/4"]
    code, out, _ = run(capsys, "lattice", "--lattice", "chain-nn-finite", "--pbc", "5")
    assert json.loads(out)["pbc_size"] == 5


def test_usage_errors(capsys):
    assert run(capsys, "coeffs", "--lattice", "nonsense", "--max-order", "3")[0] == 2
    assert run(capsys, "verify", "--max-order", "4")[0] == 2  # neither --lattice nor --all
    assert run(capsys, "coeffs", "--lattice", "chain-nn-finite", "--pbc", "2", "--max-order", "3")[0] == 2
    assert run(capsys, "coeffs", "--lattice", "chain-nn", "--max-order", "-1")[0] == 2
    assert run(capsys, "verify", "--lattice", "chain-nn", "--max-order", "4", "--threads", "0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_output_files_idempotent(tmp_outdir, capsys):
    target = tmp_outdir / "coeffs.json"
    args = [
        "coeffs", "--lattice", "diamond", "--max-order", "8", "--output", str(target),
    ]
    assert main(args) == 0
    first = target.read_bytes()
    assert main(args) == 0
    assert target.read_bytes() == first
    capsys.readouterr()
    doc = json.loads(first)
    assert doc["lattice"] == "diamond"


def test_outdir_env_redirects_relative_paths(tmp_outdir, capsys, monkeypatch):
    monkeypatch.setenv("LATTICEWALKS_OUTDIR", str(tmp_outdir))
    assert main(["conjecture", "--n-max", "8", "--output", "squares.json"]) == 0
    capsys.readouterr()
    assert (tmp_outdir / "squares.json").exists()


def test_threads_env_default(tmp_outdir, capsys, monkeypatch):
    monkeypatch.setenv("LATTICEWALKS_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--all", "--max-order", "4")
    assert code == 0
    assert json.loads(out)["summary"]["failed"] == 0
