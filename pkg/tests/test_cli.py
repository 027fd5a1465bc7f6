import json
import subprocess
import sys

import pytest

from cliffqca import catalog
from cliffqca.cli import main
from cliffqca.ring import LaurentRing, PolyMatrix
from cliffqca.symplectic import lambda_form
from cliffqca.witt import qca_from_form


def _write(tmp_path, name, m: PolyMatrix):
    path = tmp_path / name
    path.write_text(m.dumps())
    return str(path)


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(tmp_path, capsys):
    q = _write(tmp_path, "q.json", catalog.build_bundle(3, 1).Q)
    code, out, _ = _run(["verify", q], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["symplectic"] is True and doc["q"] == 2
    lam = _write(tmp_path, "lam.json", lambda_form(LaurentRing(3, ("x",)), 2))
    code, out, _ = _run(["verify", lam], capsys)
    assert code == 0 and json.loads(out)["det_class"] == {"c": 1, "e": [0]}
    r = LaurentRing(3, ("x",))
    bad = _write(tmp_path, "bad.json", PolyMatrix(r, [[r.gen("x"), 0], [0, 1]]))
    code, out, _ = _run(["verify", bad], capsys)
    assert code == 1 and json.loads(out)["symplectic"] is False


def test_corrupted_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"p": 3, "vars": ["x"],\n "rows": 1 "cols": 1}')
    code, _, err = _run(["verify", str(path)], capsys)
    assert code == 2
    assert "line 2" in err and "column" in err
    code, _, _ = _run(["verify", str(tmp_path / "missing.json")], capsys)
    assert code == 2
    path.write_text('{"p": 3}')
    code, _, _ = _run(["verify", str(path)], capsys)
    assert code == 2


def test_pipeline_three_dimensional(tmp_path, capsys):
    b = catalog.build_bundle(3, 1)
    q = _write(tmp_path, "q.json", b.Q)
    code, out, _ = _run(["pipeline", q, "--axis", "z"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert all(doc["identities"].values())
    xi = PolyMatrix.from_json(doc["Xi"])
    d = PolyMatrix.diag(b.ring2, [b.ring2.parse(s) for s in catalog.XI_BASIS_CHANGE])
    assert d.dagger() @ xi @ d == b.xi
    assert "witness" not in doc


def test_pipeline_two_dimensional_gives_a_witness(tmp_path, capsys):
    r = LaurentRing(5, ("x",))
    q2d = qca_from_form(lambda_form(r, 1), "z").matrix
    path = _write(tmp_path, "q2.json", q2d)
    code, out, _ = _run(["pipeline", path, "--axis", "z"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 1 and doc["witness"]["verified"] is True


def test_pipeline_identity_and_normalization(tmp_path, capsys):
    r = LaurentRing(3, ("x", "z"))
    ident = _write(tmp_path, "id.json", PolyMatrix.identity(r, 2))
    code, out, _ = _run(["pipeline", ident, "--axis", "z"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 0 and doc["Xi"]["rows"] == 0
    z = r.gen("z")
    shifted = _write(tmp_path, "z2.json", PolyMatrix.diag(r, [z ** 2, z ** 2]))
    code, _, err = _run(["pipeline", shifted, "--axis", "z"], capsys)
    assert code == 3
    assert "recipe" in err and "coarse_grain" in err


def test_witt_reduce_and_qca_from_form(tmp_path, capsys):
    r = LaurentRing(3, ("x",))
    x = r.gen("x")
    form = _write(tmp_path, "xi.json", PolyMatrix(r, [[0, x], [-x ** -1, 0]]))
    code, out, _ = _run(["witt-reduce", form], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 1 and doc["verified"] is True
    assert PolyMatrix.from_json(doc["E"]) == PolyMatrix.diag(r, [1, x ** -1])
    code, out, _ = _run(["qca-from-form", form, "--axis", "w"], capsys)
    assert code == 0
    assert json.loads(out)["q"] == 2
    not_form = _write(tmp_path, "nf.json", PolyMatrix.identity(r, 2))
    code, _, _ = _run(["witt-reduce", not_form], capsys)
    assert code == 2


def test_resource_cap_exit_code(capsys):
    code, _, err = _run(["exactness", "--surface", "--p", "3", "--f", "1", "--basis-cap", "1"], capsys)
    assert code == 4 and "resource cap" in err
    with pytest.raises(SystemExit):
        main(["gauss", "--p", "5", "--degree-cap", "0"])


def test_catalog_dump_and_verify_all(tmp_path, capsys):
    out_path = tmp_path / "q.json"
    code, _, _ = _run(["catalog", "--p", "3", "--f", "1", "--member", "Q", "--output", str(out_path)], capsys)
    assert code == 0
    m = PolyMatrix.from_json(json.loads(out_path.read_text()))
    assert m == catalog.build_bundle(3, 1).Q
    assert m.dumps() == out_path.read_text()
    code, out, _ = _run(["catalog", "--member", "xi_p2"], capsys)
    assert code == 0 and PolyMatrix.from_json(json.loads(out)) == catalog.xi_p2().matrix
    code, out, _ = _run(["catalog", "--verify-all", "--primes", "3", "5", "--jobs", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and [(r["p"], r["f"]) for r in doc["results"]] == [(3, 1), (3, 2), (5, 1), (5, 2)]
    code, _, _ = _run(["catalog", "--member", "Q"], capsys)
    assert code == 2
    code, _, _ = _run(["catalog", "--p", "5", "--f", "5"], capsys)
    assert code == 2


def test_spin_exactness_gauss(capsys):
    code, out, _ = _run(["spin", "--p", "5", "--f", "1", "--n", "1"], capsys)
    assert code == 0 and json.loads(out)["m"] == 4
    code, out, _ = _run(["exactness", "--surface", "--p", "3", "--f", "1"], capsys)
    assert code == 0 and json.loads(out)["verdict"] is True
    code, out, _ = _run(["exactness", "--surface", "--perturb", "--p", "3", "--f", "1"], capsys)
    assert code == 1 and json.loads(out)["verdict"] is False
    code, out, _ = _run(["gauss", "--p", "5", "--f", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and abs(doc["float_real"] - 1) < 1e-9 and abs(doc["float_imag"]) < 1e-9


def test_exactness_from_files(tmp_path, capsys):
    r = LaurentRing(3, ("x",))
    m = _write(tmp_path, "m.json", PolyMatrix(r, [[1], [0]]))
    n = _write(tmp_path, "n.json", PolyMatrix(r, [[0, 1]]))
    code, out, _ = _run(["exactness", "--m", m, "--n", n], capsys)
    assert code == 0 and json.loads(out)["verdict"] is True


def test_pretty_format(tmp_path, capsys):
    q = _write(tmp_path, "q.json", catalog.build_bundle(3, 1).Q)
    code, out, _ = _run(["verify", q, "--format", "pretty"], capsys)
    assert code == 0 and out.startswith("symplectic: True")
    code, out, _ = _run(["gauss", "--p", "3", "--format", "pretty"], capsys)
    assert "floating point" in out


def test_output_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["catalog", "--p", "7", "--f", "3", "--member", "xi", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert PolyMatrix.from_json(json.loads(a.read_text())).dumps() == a.read_text()


def test_module_entry_point(tmp_path):
    q = _write(tmp_path, "q.json", catalog.build_bundle(3, 1).Q)
    proc = subprocess.run([sys.executable, "-m", "cliffqca", "verify", q], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["symplectic"] is True
