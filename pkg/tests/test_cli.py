import json

import numpy as np
import pytest

from geolrc.cli import main
from geolrc.engine import read_code_file


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_build_then_analyze_round_trip(workdir, capsys):
    assert main(["build", "ex7_2", "--json"]) == 0
    built = _json(capsys)
    assert (workdir / "ex7_2.code").is_file()
    assert main(["analyze", "ex7_2.code", "--json"]) == 0
    analyzed = _json(capsys)
    for rep in (built, analyzed):
        rep.pop("seconds")
    assert built == analyzed
    assert (built["n"], built["k"], built["d_exact"], built["singleton_gap"]) == (18, 11, 3, 0)


def test_build_text_report_and_output_path(workdir, capsys):
    assert main(["build", "ex7_1", "-o", "small.code"]) == 0
    out = capsys.readouterr().out
    assert "d_exact = 2" in out and "locality_verdict = pass (exhaustive)" in out
    assert read_code_file(workdir / "small.code").n == 9


def test_build_overrides(workdir, capsys):
    assert main(["build", "ex3_1", "--t", "1", "--json"]) == 0
    rep = _json(capsys)
    assert (rep["n"], rep["k"], rep["d_designed"]) == (78, 2, 73)
    assert rep["d_exact"] >= 73


def test_build_failure_lists_sets(workdir, capsys):
    assert main(["build", "ex3_3_naive"]) == 2
    err = capsys.readouterr().err
    assert err.count("failing_set = ") == 2


def test_build_nonpositive_designed_distance(workdir, capsys):
    assert main(["build", "ex3_1", "--t", "26"]) == 2
    assert main(["build", "ex3_1", "--t", "26", "--force", "--low-weight", "0"]) == 2


def test_invalid_inputs(workdir, capsys):
    assert main(["build", "no-such-thing"]) == 1
    (workdir / "broken.cfg").write_text("[field]\np = 2\n[oops]\n")
    assert main(["build", "broken.cfg"]) == 1
    assert "broken.cfg:3" in capsys.readouterr().err
    assert main(["analyze", "missing.code"]) == 1
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def _codeword_tokens(path):
    code = read_code_file(path)
    word = code.encode(np.arange(code.k) % code.field.q)
    return code, [code.field.format(int(v)) for v in word]


def test_recover(workdir, capsys):
    main(["build", "ex7_1"])
    capsys.readouterr()
    code, toks = _codeword_tokens("ex7_1.code")
    damaged = ["?"] + toks[1:3] + ["?"] + toks[4:]
    assert main(["recover", "ex7_1.code", *damaged]) == 0
    assert capsys.readouterr().out.split() == toks
    # two erasures in one helper set
    assert main(["recover", "ex7_1.code", "?", "?", *toks[2:]]) == 2
    # a corrupted symbol outside the repaired set breaks its own local check
    bad = list(toks)
    bad[0] = code.field.format(code.field.add(code.field.parse(bad[0]), 1))
    bad[4] = "?"
    assert main(["recover", "ex7_1.code", *bad]) == 2
    assert "parity check" in capsys.readouterr().err
    assert main(["recover", "ex7_1.code", "1", "2"]) == 1


def test_recover_with_partition(workdir, capsys):
    assert main(["build", "ex6_1", "--low-weight", "0"]) == 0
    capsys.readouterr()
    code, toks = _codeword_tokens("ex6_1.code")
    s1 = code.partitions[0].sets[0]
    damaged = list(toks)
    damaged[s1[0]] = damaged[s1[1]] = "?"
    assert main(["recover", "ex6_1.code", *damaged, "--partition", "1"]) == 2
    assert main(["recover", "ex6_1.code", *damaged, "--partition", "2"]) == 0
    assert capsys.readouterr().out.split() == toks
    assert main(["recover", "ex6_1.code", *damaged]) == 0


def test_reproduce_single_and_unknown(capsys):
    assert main(["reproduce", "ex3.3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS") and "summary: PASS 1" in out
    assert main(["reproduce", "ex9.9"]) == 1


def test_reproduce_documented_discrepancy(capsys):
    assert main(["reproduce", "ex5.1-table2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("DISCREPANCY-DOCUMENTED")


def test_families(capsys):
    assert main(["families"]) == 0
    out = capsys.readouterr().out
    assert "elliptic-quotient" in out and "table1-row-13" in out


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "lrc" in capsys.readouterr().out


def test_analyze_budget_policy(workdir, capsys):
    main(["build", "ex7_1"])
    capsys.readouterr()
    assert main(["analyze", "ex7_1.code", "--exact-budget", "16777216"]) == 0
    assert "d_exact = 2" in capsys.readouterr().out
    assert main(["analyze", "ex7_1.code", "--exact-budget", "1"]) == 0
    out = capsys.readouterr().out
    assert "method = designed bound only" in out and "d_exact = -" in out


def test_example_style_paths_and_t_validation(workdir, capsys):
    assert main(["build", "examples/ex7_2.cfg"]) == 0
    assert (workdir / "ex7_2.code").is_file()
    assert main(["build", "ex3_1", "--t", "0"]) == 1
    assert "t must be at least 1" in capsys.readouterr().err


def test_partitions_give_the_same_fill(workdir, capsys):
    main(["build", "ex6_1", "--low-weight", "0"])
    capsys.readouterr()
    code, toks = _codeword_tokens("ex6_1.code")
    damaged = list(toks)
    damaged[5] = "?"
    outs = []
    for p in ("1", "2"):
        assert main(["recover", "ex6_1.code", *damaged, "--partition", p]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] and outs[0].split() == toks
