import io
import json
import math
import re
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pgacr.cli import (
    EXIT_CLASSIFY,
    EXIT_INDETERMINATE,
    EXIT_OK,
    EXIT_PARSE,
    InputError,
    ReportDocument,
    main,
    parse_input,
)
from pgacr.ga_core import blade_name
from pgacr.objects import flat_from_join, point

FIXTURES = Path(__file__).parent / "fixtures"


def run(argv, stdin=None, monkeypatch=None, capsys=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def doc(dim, objects, **extra):
    return json.dumps({"dimension": dim, "objects": objects, **extra})


def hyperplanes(normals_offsets):
    return [{"kind": "hyperplane", "normal": list(n), "offset": d} for n, d in normals_offsets]


class TestCompute:
    def test_points_fixture(self, capsys):
        code, out, _ = run(["compute", "--input", str(FIXTURES / "points_2d.json")], capsys=capsys)
        assert code == EXIT_OK
        rep = ReportDocument.from_text(out)
        assert rep.value == pytest.approx(4 / 3, rel=1e-15)
        assert rep.configuration == "FinitePointsCollinear"

    def test_parallel_fixture(self, capsys):
        code, out, _ = run(["compute", "--json", "--input", str(FIXTURES / "parallel_lines_3d.json")], capsys=capsys)
        assert code == EXIT_OK
        rep = json.loads(out)
        assert rep["configuration"] == "FiniteFlatsParallel"
        assert rep["product"] == "commutator_dual" and rep["dualize_operands"] is False
        assert rep["operator"].startswith("×⋆")

    def test_bad_blade_name(self, capsys):
        code, _, err = run(["compute", "--input", str(FIXTURES / "bad_blade_name.json")], capsys=capsys)
        assert code == EXIT_PARSE
        assert "objects[0].blades.e10" in err

    def test_stdin(self, capsys, monkeypatch):
        text = (FIXTURES / "points_2d.json").read_text()
        code, out, _ = run(["compute"], stdin=text, monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_OK and out.startswith("value: 1.3333333333333333")

    def test_json_syntax_error(self, capsys, monkeypatch):
        code, _, err = run(["compute"], stdin='{"dimension": 2,\n "objects": [}', monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_PARSE and "line 2" in err

    def test_indeterminate(self, capsys, monkeypatch):
        c = np.array([0.0, 0.0, 1.0])
        objs = []
        for a in (0.2, 0.9, 1.7, 2.5):
            line = flat_from_join([point(c), point(c + [math.cos(a), math.sin(a), 0.0])])
            objs.append({"kind": "flat", "blades": {blade_name(m): v for m, v in line.mv}})
        code, _, err = run(["compute"], stdin=doc(3, objs), monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_INDETERMINATE and "Indeterminate" in err

    def test_affine_flag(self, capsys, monkeypatch):
        objs = [{"kind": "point", "coords": [t, 0.0]} for t in (0.0, 1.0, 2.0)]
        objs.insert(1, {"kind": "ideal_point", "direction": [1.0, 0.0]})
        code, out, _ = run(["compute", "--json"], stdin=doc(2, objs, affine=True), monkeypatch=monkeypatch, capsys=capsys)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["value"] == pytest.approx(2.0)
        assert rep["permutation"] == [0, 2, 3, 1]

    def test_five_objects(self, capsys, monkeypatch):
        objs = [{"kind": "point", "coords": [t, 0.0]} for t in (0.0, 1.0, 2.0, 3.0)]
        objs.append(dict(objs[0]))
        code, _, _ = run(["compute"], stdin=doc(2, objs), monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_PARSE


class TestClassify:
    def test_origin_lines(self, capsys, monkeypatch):
        objs = hyperplanes([((math.cos(a), math.sin(a)), 0.0) for a in (0.0, 0.5, 1.2, 2.0)])
        code, out, _ = run(["classify"], stdin=doc(2, objs), monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_OK and "configuration: HyperplanesMeetThroughOrigin" in out
        assert "value" not in out

    def test_random_planes(self, capsys, monkeypatch):
        rng = np.random.default_rng(8)
        objs = hyperplanes([(rng.normal(size=3).tolist(), float(rng.normal())) for _ in range(4)])
        code, out, _ = run(["classify", "--json"], stdin=doc(3, objs), monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_CLASSIFY and json.loads(out)["error"] == "NoCommonPencil"

    def test_mixed_grades(self, capsys, monkeypatch):
        objs = hyperplanes([((1.0, 0.0, 0.0), 0.0)] * 3) + [{"kind": "point", "coords": [0.0, 0.0, 1.0]}]
        code, _, err = run(["classify"], stdin=doc(3, objs), monkeypatch=monkeypatch, capsys=capsys)
        assert code == EXIT_CLASSIFY and "MixedGrades" in err


class TestInputParsing:
    @pytest.mark.parametrize("text, where", [
        ('[]', "root"),
        ('{"dimension": 1, "objects": []}', "dimension"),
        ('{"dimension": 2, "objects": [1, 2, 3]}', "objects"),
        ('{"dimension": 2, "objects": [{"kind": "point", "coords": [1]}, 2, 3, 4]}', "objects[0].coords"),
        ('{"dimension": 2, "objects": [{"kind": "cone"}, 2, 3, 4]}', "objects[0].kind"),
        ('{"dimension": 2, "objects": [{"kind": "raw", "blades": {"e3": 1}}, 2, 3, 4]}', "objects[0].blades.e3"),
        ('{"dimension": 3, "objects": [{"kind": "flat", "blades": {"e1": 1}}, 2, 3, 4]}', "objects[0]"),
        ('{"dimension": 2, "tolerance": -1, "objects": []}', "tolerance"),
    ])
    def test_errors_are_located(self, text, where):
        with pytest.raises(InputError, match="^" + re.escape(where)):
            parse_input(text)

    def test_hex_names(self):
        objs = [{"kind": "raw", "blades": {"e0a": 1.0}}] * 4
        d = parse_input(json.dumps({"dimension": 10, "objects": objs}))
        assert d.objects[0].grade == 2


class TestVerify:
    def test_zero_trials(self, capsys):
        code, out, _ = run(["verify", "--trials", "0"], capsys=capsys)
        assert code == EXIT_OK
        rows = [l for l in out.splitlines() if l and not l.startswith("#") and not l.startswith("suite")]
        assert rows == []
        assert "seed=0" in out

    def test_single_config(self, capsys):
        code, out, _ = run(["verify", "--dim", "2", "--trials", "20", "--seed", "5",
                            "--config", "FinitePointsCollinear", "--json"], capsys=capsys)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["ok"] and rep["seed"] == 5
        assert {r["suite"] for r in rep["suites"]} >= {"oracle", "duality", "motor"}
        assert all(r["variant"] == "FinitePointsCollinear" for r in rep["suites"])

    def test_flats_skipped_in_2d(self, capsys):
        code, out, _ = run(["verify", "--dim", "2", "--trials", "3", "--json"], capsys=capsys)
        assert code == EXIT_OK
        assert "FlatsThroughOrigin" not in {r["variant"] for r in json.loads(out)["suites"]}

    def test_bad_dim(self, capsys):
        code, _, _ = run(["verify", "--dim", "1"], capsys=capsys)
        assert code == EXIT_PARSE


class TestTable:
    def test_rows(self, capsys):
        code, out, _ = run(["table", "--dim", "3"], capsys=capsys)
        lines = out.splitlines()
        assert code == EXIT_OK and len(lines) == 9
        row = {l.split("\t")[0]: l for l in lines[1:]}
        assert "×⋆ (no operand dual)" in row["FinitePointsCollinear"]
        assert "× on dualized operands" in row["IdealFlatsSecant"]

    def test_stable(self, capsys):
        _, a, _ = run(["table"], capsys=capsys)
        _, b, _ = run(["table"], capsys=capsys)
        assert a == b

    def test_json(self, capsys):
        _, out, _ = run(["table", "--json"], capsys=capsys)
        assert len(json.loads(out)) == 8


reals = st.one_of(st.floats(allow_nan=False), st.sampled_from([math.inf, -math.inf]))


@settings(max_examples=150)
@given(
    value=reals,
    blades=st.dictionaries(st.sampled_from(["e0", "e12", "e013", "e0a"]), st.floats(allow_nan=False, allow_infinity=False), min_size=1),
    residual=st.floats(0, 1),
    perm=st.permutations([0, 1, 2, 3]),
    dual=st.booleans(),
)
def test_report_roundtrip(value, blades, residual, perm, dual):
    rep = ReportDocument(value, "FlatsThroughOrigin", "× (no operand dual)", dual, "commutator",
                         blades, residual, tuple(perm))
    assert ReportDocument.from_text(rep.to_text()) == rep
    assert ReportDocument.from_json(rep.to_json()) == rep


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pgacr", "compute", "--input", str(FIXTURES / "points_2d.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "FinitePointsCollinear" in proc.stdout
