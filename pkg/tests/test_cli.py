import io
import json

import pytest

from twistlab.cli import dumps, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_exit_codes():
    assert run("verify", "--genus", "14", "--preset", "six")[0] == 0
    assert run("verify", "--genus", "15", "--preset", "six")[0] == 2
    assert run("verify", "--genus", "9", "--preset", "eight")[0] == 0
    assert run("verify", "--genus", "7", "--preset", "eight")[0] == 2
    assert run("verify")[0] == 2
    assert run("verify", "--genus", "x")[0] == 2


def test_eval_examples():
    code, text = run("eval", "-g", "3", "ta1")
    assert code == 0
    assert text.splitlines()[:3] == ["[ 2 -1]", "[ 1  0]", "D = +1"]
    code, text = run("eval", "-g", "3", "--json", "y1 y1")
    assert json.loads(text)["matrix"] == [[1, 0], [0, 1]]
    a = json.loads(run("eval", "-g", "14", "--json", "sigma rho1")[1])["matrix"]
    b = json.loads(run("eval", "-g", "14", "--json", "ta1")[1])["matrix"]
    assert a == b


def test_eval_parse_error():
    assert run("eval", "-g", "3", "zz")[0] == 2
    assert run("eval", "-g", "3", "ta1^2")[0] == 2


def test_orbit_tables():
    code, text = run("orbit", "-g", "14", "--from", "a1", "--gens", "sigma,tau,upsilon", "--json")
    d = json.loads(text)
    assert code == 0
    assert len([w for w in d["witnesses"] if w["target"] != "a1"]) == 12
    code, text = run("orbit", "-g", "14", "--from", "a1", "--gens", "sigma")
    assert code == 1 and "unreached" in text


def test_curves_listing():
    code, text = run("curves", "-g", "4", "--json")
    d = json.loads(text)
    assert code == 0 and [c["name"] for c in d["curves"]] == ["a1", "a2", "a3", "b", "e"]


def test_json_is_deterministic():
    a = run("verify", "-g", "14", "--preset", "six", "--json")[1]
    b = run("verify", "-g", "14", "--preset", "six", "--json")[1]
    assert a == b and json.loads(a)["schema"] == 1


def test_no_color(monkeypatch):
    class Tty(io.StringIO):
        def isatty(self):
            return True

    out = Tty()
    main(["verify", "-g", "14"], out=out)
    assert "\033[" in out.getvalue()
    monkeypatch.setenv("TWISTLAB_NO_COLOR", "1")
    out = Tty()
    main(["verify", "-g", "14"], out=out)
    assert "\033[" not in out.getvalue()


def test_big_integers_become_strings():
    d = json.loads(dumps({"x": 2**64, "y": -(2**63), "z": [2**63 - 1]}))
    assert d == {"x": str(2**64), "y": -(2**63), "z": [2**63 - 1]}


def _write(tmp_path, data):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_config_good_override(tmp_path):
    g = 14
    cfg = {
        "schema": 1, "genus": g, "preset": "six", "depth_cap": 10,
        "curves": [{"name": "a2", "class": [0, 1, 1] + [0] * 11, "covector": [0, -1, 1] + [0] * 11}],
    }
    assert run("verify", "--config", _write(tmp_path, cfg))[0] == 0


@pytest.mark.parametrize(
    "patch",
    [
        {"schema": 2},
        {"genus": "14"},
        {"preset": "seven"},
        {"extra": 1},
        {"curves": [{"name": "a2", "class": [1] * 14, "covector": [1] * 14}]},
        {"curves": [{"name": "zz", "class": [0] * 14, "covector": [0] * 14}]},
        {"reflections": [{"name": "sigma", "perm": [2, 3, 1] + list(range(4, 15))}]},
        {"reflections": [{"name": "eta", "perm": list(range(1, 15))}]},
        # wrong correction index: sigma stops being an involution
        {"reflections": [{"name": "sigma", "perm": [2, 1, 4, 3, 12, 11, 10, 9, 8, 7, 6, 5, 13, 14], "sign": -1, "y_correction": 5}]},
    ],
)
def test_config_rejections_exit_2(tmp_path, patch):
    cfg = {"schema": 1, "genus": 14, "preset": "six"}
    cfg.update(patch)
    assert run("verify", "--config", _write(tmp_path, cfg))[0] == 2


def test_config_conflicting_genus(tmp_path):
    path = _write(tmp_path, {"schema": 1, "genus": 14})
    assert run("verify", "-g", "16", "--config", path)[0] == 2
    assert run("verify", "--config", str(tmp_path / "missing.json"))[0] == 2
