import json
import subprocess
import sys

import numpy as np
import pytest

from fracsum.cli import parse_matrix_file, parse_sequence_file, run
from fracsum.errors import NameLookupError, ParseError


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return write


def output(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_weights_text(capsys):
    code, out, _ = output(capsys, ["weights", "--order", "1", "--count", "4"])
    assert code == 0
    assert out.strip() == "1 -1 0 0"


def test_weights_json(capsys):
    _, out, _ = output(capsys, ["weights", "--order", "0.5", "--count", "3", "--json"])
    assert json.loads(out) == {"count": 3, "order": 0.5, "weights": [1.0, -0.5, -0.125]}


def test_parse_examples(files):
    seq = parse_sequence_file(files("a.json", {"kind": "generator", "name": "alternating", "length": 8}))
    np.testing.assert_array_equal(seq.build().values, [1, -1, 1, -1, 1, -1, 1, -1])
    seq = parse_sequence_file(files("e.json", {"kind": "explicit", "values": [0, 1, 0, 1]}))
    np.testing.assert_array_equal(seq.build().values, [0, 1, 0, 1])
    mat = parse_matrix_file(files("m.json", {"kind": "builtin", "name": "cesaro"}))
    assert mat.build().name == "cesaro"


def test_explicit_matrix_with_bounds(files):
    spec = parse_matrix_file(files("m.json", {"kind": "explicit", "rows": [[1], [1, 1]],
                                              "column_bounds": [1, 3]}))
    assert spec.rows == ((1.0,), (1.0, 1.0, 0.0))


@pytest.mark.parametrize("text,fragment", [
    ('{"kind": "explicit",\n "values": [1, }', "line 2"),
    ('{"kind": "explicit", "values": [1, "x"]}', "values[1]"),
    ('{"kind": "explicit", "values": []}', "values"),
    ('{"kind": "explicit", "value": [1]}', "'value'"),
    ('{"kind": "generator", "name": "alternating", "length": 0}', "length"),
    ('{"kind": "stream"}', "kind"),
    ('[1, 2]', "top level"),
])
def test_sequence_parse_errors(files, text, fragment):
    with pytest.raises(ParseError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        parse_sequence_file(files("bad.json", text))


def test_unknown_names(files):
    with pytest.raises(NameLookupError):
        parse_sequence_file(files("s.json", {"kind": "generator", "name": "primes", "length": 3}))
    with pytest.raises(NameLookupError):
        parse_matrix_file(files("m.json", {"kind": "builtin", "name": "borel"}))


def test_apply_round_trip(files, capsys, tmp_path):
    m = files("m.json", {"kind": "builtin", "name": "frac_delta", "params": {"r": 0.5}})
    x = files("x.json", {"kind": "generator", "name": "harmonic", "length": 12})
    code, out, _ = output(capsys, ["apply", "--matrix", m, "--input", x, "--json"])
    assert code == 0
    y = tmp_path / "y.json"
    y.write_text(out)
    reparsed = parse_sequence_file(y).build().values
    np.testing.assert_array_equal(reparsed, np.array(json.loads(out)["values"]))


def test_apply_trunc(files, capsys):
    m = files("m.json", {"kind": "builtin", "name": "identity"})
    x = files("x.json", {"kind": "explicit", "values": [1, 2, 3, 4]})
    _, out, _ = output(capsys, ["apply", "--matrix", m, "--input", x, "--trunc", "2", "--json"])
    assert json.loads(out)["values"] == [1.0, 2.0]


def test_json_is_deterministic(files, capsys):
    m = files("m.json", {"kind": "builtin", "name": "cesaro"})
    argv = ["classify", "--from", "f", "--to", "c", "--matrix", m, "--n1", "64", "--n2", "128", "--json"]
    _, first, _ = output(capsys, argv)
    _, second, _ = output(capsys, argv)
    assert first == second
    assert json.loads(first)["class"] == "(f:c)"


def test_classify_text_lists_conditions(files, capsys):
    m = files("m.json", {"kind": "builtin", "name": "cesaro"})
    code, out, _ = output(capsys, ["classify", "--from", "f", "--to", "c", "--matrix", m])
    assert code == 0
    for cid in ("C20", "C21", "C22", "C23"):
        assert f"{cid}   satisfied" in out


def test_verdicts_do_not_change_exit_code(files, capsys):
    m = files("m.json", {"kind": "builtin", "name": "cesaro"})
    code, out, _ = output(capsys, ["classify", "--from", "f", "--to", "bs", "--matrix", m])
    assert code == 0 and "non-membership-evidence" in out


def test_almost_member_dual(files, capsys):
    z = files("z.json", {"kind": "generator", "name": "zero_one", "length": 4000})
    _, out, _ = output(capsys, ["almost", "--input", z, "--mmax", "1000", "--json"])
    rep = json.loads(out)
    assert rep["verdict"] == "convergent-within-tol" and rep["value"] == pytest.approx(0.5)
    d = files("d.json", {"kind": "generator", "name": "d_sequence", "length": 4096,
                         "params": {"r": 0.5}})
    _, out, _ = output(capsys, ["member", "--order", "0.5", "--input", d, "--mmax", "1000", "--json"])
    assert json.loads(out)["verdict"] == "in-fdf"
    h = files("h.json", {"kind": "explicit", "values": list(1.0 / np.arange(1, 257) ** 3)})
    _, out, _ = output(capsys, ["dual", "--kind", "beta", "--order", "0.3", "--input", h, "--json"])
    assert json.loads(out)["agreement"] is True


def test_error_exit_codes(files, capsys):
    bad = files("bad.json", "{")
    m = files("m.json", {"kind": "builtin", "name": "cesaro"})
    code, _, err = output(capsys, ["apply", "--matrix", m, "--input", bad])
    assert code == 2 and "line 1" in err
    code, _, err = output(capsys, ["weights", "--order", "-2", "--count", "3"])
    assert code == 2 and "negative integer" in err
    code, _, _ = output(capsys, ["classify", "--from", "fdf", "--to", "c", "--matrix", m])
    assert code == 2
    code, _, _ = output(capsys, ["frobnicate"])
    assert code == 2
    code, _, _ = output(capsys, ["weights", "--order", "1", "--count", "0"])
    assert code == 2


def test_tolerance_environment_and_flag_precedence(files, capsys, monkeypatch):
    x = files("x.json", {"kind": "generator", "name": "alternating", "length": 64})
    monkeypatch.setenv("FRACSUM_TOL", "0.25")
    _, out, _ = output(capsys, ["almost", "--input", x, "--mmax", "8", "--json"])
    assert json.loads(out)["tol"] == 0.25
    _, out, _ = output(capsys, ["almost", "--input", x, "--mmax", "8", "--tol", "0.5", "--json"])
    assert json.loads(out)["tol"] == 0.5
    monkeypatch.setenv("FRACSUM_TOL", "lots")
    code, _, _ = output(capsys, ["almost", "--input", x, "--mmax", "8"])
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fracsum", "weights", "--order", "2", "--count", "4"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "1 -2 1 0"
