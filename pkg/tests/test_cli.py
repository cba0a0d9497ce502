from __future__ import annotations

import csv
import io

import pytest

from vdwtriples import certificates
from vdwtriples.cache import CacheEntry, ResultCache
from vdwtriples.certificates import Certificate
from vdwtriples.cli import main
from vdwtriples.core import Coloring, FamilyParams


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_w32(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "--a", "1", "--b", "1", "--r", "2")
    assert code == 0 and out.strip() == "9"
    entry = ResultCache().get(1, 1, 2)
    assert entry.status == "exact" and entry.n == 9
    cert = certificates.read(entry.cert)
    assert cert.n == 8 and cert.family == FamilyParams(1, 1)


def test_solve_cutoff_on_max_n(capsys):
    code, out, _ = run(capsys, "solve", "--a", "1", "--b", "2", "--r", "2", "--max-n", "1000", "--no-cache")
    assert code == 2 and out.strip() == "n > 1000"


def test_solve_cutoff_on_budget(capsys, tmp_path):
    cert = tmp_path / "c.txt"
    code, out, _ = run(capsys, "solve", "--a", "2", "--b", "2", "--r", "3", "--budget", "500", "--cert", str(cert))
    assert code == 2 and out.startswith("n > ")
    assert certificates.read(cert).n == int(out.split()[2])


def test_solve_inconsistent_cache(capsys):
    ResultCache().record(CacheEntry(1, 1, 2, "exact", 10))
    code, _, err = run(capsys, "solve", "--a", "1", "--b", "1", "--r", "2")
    assert code == 5 and "inconsistent" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--a", "1"],
        ["solve", "--a", "2", "--b", "1", "--r", "2"],
        ["solve", "--a", "1", "--b", "1", "--r", "0"],
        ["solve", "--a", "1", "--b", "5", "--r", "2", "--max-n", "3"],
        ["gamma", "--c", "2", "--n", "10"],
        ["nonsense"],
        [],
    ],
)
def test_parse_errors_exit_4(capsys, argv):
    assert run(capsys, *argv)[0] == 4


def test_verify(capsys, tmp_path):
    good = tmp_path / "good.txt"
    run(capsys, "solve", "--a", "2", "--b", "2", "--r", "3", "--cert", str(good), "--no-cache")
    code, out, _ = run(capsys, "verify", str(good))
    assert code == 0 and out.startswith("valid")
    assert certificates.read(good).n == 87

    bad = certificates.write(Certificate(FamilyParams(1, 1), Coloring(1, (0, 0, 0))), tmp_path / "bad.txt")
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 3 and out.startswith("violation: (1, 2, 3)")

    trunc = tmp_path / "trunc.txt"
    trunc.write_text(good.read_text().splitlines()[0] + "\na=2 b=2 r=3 n=87\n0 1\n")
    assert run(capsys, "verify", str(trunc))[0] == 4
    assert run(capsys, "verify", str(tmp_path / "missing.txt"))[0] == 4


def test_verify_family_override(capsys, tmp_path):
    path = certificates.write(Certificate(None, Coloring(1, (0, 0, 0))), tmp_path / "c.txt")
    assert run(capsys, "verify", str(path))[0] == 4
    assert run(capsys, "verify", str(path), "--a", "1", "--b", "1")[0] == 3
    assert run(capsys, "verify", str(path), "--a", "1", "--b", "2")[0] == 0


def test_gamma(capsys, tmp_path):
    code, out, _ = run(capsys, "gamma", "--c", "5", "--n", "10")
    assert code == 0
    assert out.splitlines()[-1] == "0 1 2 2 3 3 4 4 4 4"
    code, out, err = run(capsys, "gamma", "--c", "5", "--n", "100000", "--a", "2", "--b", "2", "--out", str(tmp_path / "g.txt"))
    assert code == 0 and out.startswith("valid")
    assert certificates.read(tmp_path / "g.txt").n == 100000
    code, _, err = run(capsys, "gamma", "--c", "5", "--n", "200", "--a", "1", "--b", "7")
    assert code == 3 and "(25, 26, 177)" in err


@pytest.mark.parametrize("a,b,verdict", [(1, 1, "true"), (1, 4, "false"), (1, 2, "false")])
def test_rado(capsys, a, b, verdict):
    code, out, _ = run(capsys, "rado", "--a", str(a), "--b", str(b))
    assert code == 0 and f"rado condition: {verdict}" in out


def test_bounds_column_one(capsys):
    code, out, _ = run(capsys, "bounds", "--a-max", "1", "--b-max", "9", "--axioms", "none", "--no-search", "--reference", "none")
    assert code == 0
    rows = {int(r["b"]): r for r in csv.DictReader(io.StringIO(out))}
    assert [rows[b]["upper"] for b in range(4, 10)] == ["4", "4", "4", "5", "5", "5"]  # b=7: see test_colorings


def test_bounds_unexpected_mismatch_exit_3(capsys):
    # without search the lower bounds fall short of the reference
    code, _, err = run(capsys, "bounds", "--no-search")
    assert code == 3 and "unexpected mismatch" in err


def test_bounds_missing_axiom_file(capsys, tmp_path):
    code, out, err = run(capsys, "bounds", "--a-max", "1", "--b-max", "3", "--axioms", str(tmp_path / "none.txt"), "--no-search", "--reference", "none")
    assert code == 0 and "warning" in err and out.count("\n") == 4


def test_bounds_empty_and_json(capsys):
    code, out, _ = run(capsys, "bounds", "--a-max", "0", "--b-max", "0", "--no-search")
    assert code == 0 and out.strip() == "a,b,lower,upper,lower_provenance,upper_provenance,flags"
    code, out, _ = run(capsys, "bounds", "--a-max", "2", "--b-max", "2", "--no-search", "--format", "json", "--reference", "none")
    assert code == 0 and '"upper": "inf"' in out
