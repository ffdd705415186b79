import json
import subprocess
import sys

import pytest

from jacsearch.cli import main

from .vectors import GENUS2, T648, T816


def _csv(xs):
    return ",".join(str(x) for x in xs)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# tune -------------------------------------------------------------------------

@pytest.mark.parametrize("bits,u", [(150, 6.25), (100, 5.38)])
def test_tune(capsys, bits, u):
    code, out, err = run(capsys, "tune", "--bits", str(bits))
    assert code == 0
    assert f"recommended: u = {u:.2f}" in out
    assert err.startswith("# config ")


def test_tune_json(capsys):
    code, out, _ = run(capsys, "tune", "--bits", "120", "--json")
    obj = json.loads(out)
    assert obj["recommended"]["u"] == 5.75 and obj["row"]["w"] == 5


@pytest.mark.parametrize("bits", ["47", "257"])
def test_tune_range(capsys, bits):
    code, _, err = run(capsys, "tune", "--bits", bits)
    assert code == 1 and "calibrated range" in err


def test_bad_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tune"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


# search -----------------------------------------------------------------------

SMALL = ["search", "--p", "32003", "--family", "x^5+2x^3+7x^2+x+t", "--u", "3"]


def test_search_jsonl(capsys):
    code, out, err = run(capsys, *SMALL, "--t-from", "0", "--t-to", "5")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["t"] for r in recs] == list(range(6))
    cfg = json.loads(err.splitlines()[0][len("# config "):])
    assert cfg["p"] == 32003 and cfg["bound"] == 1024 and cfg["config_hash"] == recs[0]["config_hash"]


def test_search_empty_range(capsys):
    code, out, _ = run(capsys, *SMALL, "--t-from", "5", "--t-to", "4")
    assert code == 0 and out == ""


def test_search_bad_family(capsys):
    code, _, err = run(capsys, "search", "--p", "101", "--family", "x^5+x+q", "--u", "3",
                       "--t-to", "1")
    assert code == 1 and "at position 6" in err


def test_search_config_file_and_shards(tmp_path, capsys):
    conf = tmp_path / "s.conf"
    conf.write_text("# small search\np = 32003\nfamily = x^5 + 2x^3 + 7x^2 + x + t  # six\n"
                    "u = 3\nt_from = 0\nt_to = 9\n")
    code, whole, _ = run(capsys, "search", "--config", str(conf))
    assert code == 0
    parts = []
    for i in range(3):
        code, out, _ = run(capsys, "search", "--config", str(conf), "--shards", "3",
                           "--shard-index", str(i))
        parts.extend(out.splitlines())
    strip = lambda line: {k: v for k, v in json.loads(line).items() if k != "ms"}  # noqa: E731
    assert [strip(x) for x in parts] == [strip(x) for x in whole.splitlines()]
    code, _, _ = run(capsys, "search", "--config", str(conf), "--shards", "3",
                     "--shard-index", "3")
    assert code == 1


def test_search_out_and_resume(tmp_path, capsys):
    path = tmp_path / "o.jsonl"
    code, _, _ = run(capsys, *SMALL, "--t-to", "3", "--out", str(path))
    assert code == 0
    first = path.read_text().splitlines()
    code, _, err = run(capsys, *SMALL, "--t-to", "7", "--out", str(path), "--resume")
    assert code == 0 and "# 4 records" in err
    lines = path.read_text().splitlines()
    assert lines[:4] == first and [json.loads(x)["t"] for x in lines] == list(range(8))


# verify -----------------------------------------------------------------------

def test_verify_published(capsys):
    v = GENUS2[0]
    code, out, _ = run(capsys, "verify", "--p", str(v["p"]), "--f", _csv(v["f"]),
                       "--lpoly", _csv(v["a"]))
    assert code == 0
    assert "FAIL" not in out
    assert "INFO J_3/1: " in out and "near_prime=True" in out


def test_verify_perturbed_fails(capsys):
    v = GENUS2[0]
    a = [v["a"][0], v["a"][1] + 2]
    code, out, _ = run(capsys, "verify", "--p", str(v["p"]), "--f", _csv(v["f"]),
                       "--lpoly", _csv(a))
    assert code == 3
    assert "FAIL P(1) annihilates" in out


def test_verify_tiny_with_oracle(capsys):
    from jacsearch.curve import curve_new
    from jacsearch.ff import field_new
    from jacsearch.oracle.order import naive_lpoly
    f = [3, 1, 7, 2, 0, 1]
    P = naive_lpoly(curve_new(2, field_new(1009), f))
    code, out, _ = run(capsys, "verify", "--p", "1009", "--f", _csv(f),
                       f"--lpoly={_csv(P.half)}")
    assert code == 0 and "PASS oracle #J(C)" in out


def test_verify_records(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    run(capsys, *SMALL, "--t-to", "5", "--out", str(path))
    code, out, _ = run(capsys, "verify", "--records", str(path))
    assert code == 0 and "PASS oracle #J(C)" in out and "FAIL" not in out
    # tamper with one recorded order
    lines = path.read_text().splitlines()
    for i, line in enumerate(lines):
        rec = json.loads(line)
        if rec["status"] == "success":
            rec["order"] = str(int(rec["order"]) + 1)
            lines[i] = json.dumps(rec)
            break
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--records", str(path))
    assert code == 3


def test_verify_usage(capsys):
    code, _, _ = run(capsys, "verify", "--p", "101")
    assert code == 1


# zeta -------------------------------------------------------------------------

def test_zeta_from_twist_order_genus3(capsys):
    code, out, _ = run(capsys, "zeta", "--p", str(T648["p"]), "--f", _csv(T648["f"]),
                       "--order", str(T648["twist_order"]), "--twist-order")
    assert code == 0
    obj = json.loads(out)
    assert obj["a"] == [str(a) for a in T648["a"]]
    assert obj["order"] == str(T648["order"])


def test_zeta_genus2(capsys):
    from jacsearch.zeta.lpoly import LPolynomial
    q = T816["p"]
    N = LPolynomial.from_half(q, 2, T816["a"])(1)
    code, out, _ = run(capsys, "zeta", "--p", str(q), "--f", _csv(T816["f"]), "--order", str(N))
    assert code == 0 and json.loads(out)["a"] == [str(a) for a in T816["a"]]


def test_zeta_wrong_order(capsys):
    from jacsearch.zeta.lpoly import LPolynomial
    q = T816["p"]
    N = LPolynomial.from_half(q, 2, T816["a"])(1) + 2
    code, _, err = run(capsys, "zeta", "--p", str(q), "--f", _csv(T816["f"]), "--order", str(N))
    assert code == 2 and "NoCandidate" in err


# experiment and the module entry point ---------------------------------------

def test_experiment(capsys):
    code, out, _ = run(capsys, "experiment", "--samples", "30", "--n", "40", "--u", "2,3",
                       "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["rows"][0]["pr_A"] == 1.0 and obj["rows"][0]["curves"] == 30


def test_module_exit_codes(tmp_path):
    exe = [sys.executable, "-m", "jacsearch"]
    ok = subprocess.run(exe + ["tune", "--bits", "100"], capture_output=True, text=True)
    assert ok.returncode == 0
    bad = subprocess.run(exe + ["tune", "--bits", "40"], capture_output=True, text=True)
    assert bad.returncode == 1
    out = subprocess.run(exe + SMALL + ["--t-to", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and len(out.stdout.splitlines()) == 3
