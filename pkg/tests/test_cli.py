import io
import json
import os
import subprocess
import sys

import pytest

from distnets.cli import main
from distnets.corpus import random_corpus, random_net
from distnets.dot import to_dot
from distnets.net import validate
from distnets.textio import load_net
from distnets.transform import locations_of_tcc, tcc_implementation

FIX = os.path.join(os.path.dirname(__file__), "..", "src", "distnets", "fixtures")


def fx(name):
    return os.path.join(FIX, name + ".net")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_validate_command():
    code, text = run("validate", fx("fig1"))
    assert code == 0 and json.loads(text)["verdict"] == "yes"


def test_validate_contact(tmp_path):
    path = tmp_path / "c.net"
    path.write_text("place p marked\nplace q marked\ntrans t label a\narc p -> t\narc t -> q\n")
    code, text = run("validate", str(path))
    assert code == 1
    assert json.loads(text)["violations"][0]["kind"] == "ContactFreeness"


def test_parse_error_exit(tmp_path, capsys):
    path = tmp_path / "bad.net"
    path.write_text("place p\nplace p\n")
    assert run("classify", str(path))[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_classify_json_and_pretty():
    code, text = run("classify", fx("fig2"))
    assert code == 0
    assert json.loads(text)["verdicts"]["truly_synchronous"] == "yes"
    code, text = run("classify", "--pretty", fx("fig2"))
    assert text.startswith("net fig2")


def test_classify_bound_exit():
    code, text = run("semantics", "--bound", "1", fx("fig4"))
    assert code == 3 and json.loads(text)["verdict"] == "unknown"


def test_classify_figures(tmp_path):
    code, _ = run("classify", fx("fig4"), "--figures", str(tmp_path))
    assert code == 0
    names = sorted(os.listdir(tmp_path))
    assert names == ["fig4-net.png", "fig4-tcc.png", "fig4-verdicts.png"]
    for n in names:
        assert (tmp_path / n).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_equiv_codes():
    code, text = run("equiv", fx("fig2"), fx("fig3"))
    assert code == 1 and json.loads(text)["verdict"] == "no"
    code, text = run("equiv", fx("fig7-spec"), fx("fig7-impl"))
    assert code == 0 and json.loads(text)["witness"] is None
    code, text = run("equiv", "--bounded", "2", fx("fig4"), fx("fig5"))
    assert code == 0 and json.loads(text)["mode"] == "bounded (unsound)"


def test_transform_tcc_round_trip(tmp_path):
    out = tmp_path / "t.net"
    assert run("transform", "tcc", fx("fig4"), "-o", str(out))[0] == 0
    prov = json.loads((tmp_path / "t.net.provenance.json").read_text())
    assert prov["box_p"] == {"kind": "box", "place": "p"}
    code, text = run("equiv", fx("fig4"), str(out))
    assert code == 0
    code, _ = run("equiv", fx("fig5"), str(out))
    assert code == 0


def test_transform_async_and_hide(tmp_path):
    code, text = run("transform", "async", "--req", "ad", fx("fig1"))
    assert code == 0 and "trans u__q label tau" in text
    dist = tmp_path / "d.json"
    dist.write_text(json.dumps({"p": 0, "q": 1, "t": 2, "u": 3}))
    code, text = run("transform", "async", fx("fig1"), "--distribution", str(dist))
    assert "trans t__p label tau" in text
    code, text = run("transform", "hide", fx("fig1"), "--action", "a")
    assert "trans t label tau" in text


def test_verify_net_and_random(tmp_path):
    code, text = run("verify", fx("fig4"))
    assert code == 0
    checks = json.loads(text)["checks"]
    assert checks["beta_sweep"] == "pass" and checks["distributable_agreement"] == "pass"
    code, text = run("verify", "--random", "5", "--seed", "3", "--figures", str(tmp_path))
    assert code == 0
    assert os.path.exists(tmp_path / "corpus-3.png")
    assert json.loads(text)["corpus"]["checked"] == 5


def test_dot_command():
    code, text = run("dot", fx("fig4"), "--transform", "tcc", "--locations")
    assert code == 0 and text.startswith('digraph "fig4-tcc"')
    assert text.count("subgraph cluster_") == 5
    assert '"box_p" [shape="box", label="tau", xlabel="box_p", fillcolor="gray80", style="dashed,filled"' in text


def test_dot_plain(fig):
    text = to_dot(fig("fig1"))
    assert '"p" [shape="circle", label="●", xlabel="p"];' in text
    assert '"p" -> "t";' in text


def test_stdin_and_module_entry():
    with open(fx("fig1"), encoding="utf-8") as fh:
        proc = subprocess.run([sys.executable, "-m", "distnets", "validate", "-"], stdin=fh,
                              capture_output=True, text=True)
    assert proc.returncode == 0 and '"verdict": "yes"' in proc.stdout


def test_corpus_deterministic():
    a = random_corpus(20, seed=7)
    b = random_corpus(20, seed=7)
    assert [x.arcs for x in a] == [x.arcs for x in b]
    for net in a:
        assert net.is_plain and validate(net).ok
        assert len(net.places) <= 6 and len(net.transitions) <= 6 and len(net.arcs) <= 12
        assert all(net.preset(t) for t in net.transitions)


def test_random_net_limits():
    import random

    rng = random.Random(0)
    for _ in range(200):
        net = random_net(rng)
        assert len(net.arcs) <= 12


def test_plotting_direct(tmp_path, fig):
    from distnets import plotting

    tcc = tcc_implementation(fig("fig2"))
    path = plotting.draw_net(tcc.net, str(tmp_path / "x.png"), tcc.origin,
                             locations_of_tcc(tcc))
    assert os.path.getsize(path) > 1000
    pos = plotting.layered_layout(fig("fig4"))
    assert set(pos) == set(fig("fig4").elements)
