import json

import pytest

from supermac.cli import CHECKS, RunConfig, UsageError, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_P(capsys):
    code, out, _ = run(capsys, "compute", "P", "0;1")
    assert code == 0
    obj = json.loads(out)
    assert obj["label"] == "(0;1)" and list(obj["coeffs"]) == ["0;1"]


def test_compute_J_in_S(capsys):
    code, out, _ = run(capsys, "compute", "J", "2;1", "--basis", "S")
    assert code == 0 and len(json.loads(out)["coeffs"]) == 7


def test_compute_E(capsys):
    code, out, _ = run(capsys, "compute", "E", "1,0", "-N", "2")
    obj = json.loads(out)
    assert code == 0 and set(obj["coeffs"]) == {"1,0", "0,1"}


def test_compute_formats(capsys):
    code, out, _ = run(capsys, "compute", "P", "1;", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "term,coefficient"


def test_bad_label_reports_grammar(capsys):
    code, _, err = run(capsys, "compute", "P", "1,1;")
    assert code == 2 and "strictly decreasing" in err


def test_unknown_check_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(max_n=-1)
    with pytest.raises(UsageError):
        RunConfig(checks={"orthogonality", "bogus"})
    assert RunConfig(max_n=2, max_m=1, checks=set(CHECKS)).degrees()[-1] == (2, 1)


def test_verify_orthogonality(capsys):
    code, out, _ = run(capsys, "verify", "orthogonality", "--max", "3", "1")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["check"] == "orthogonality"
    assert "(2;)|(0;2)" in rep["detail"]["pairs"]


def test_verify_tables_byte_compare(capsys):
    code, out, _ = run(capsys, "verify", "tables", "--degree", "2", "2", "--paper-layout")
    assert code == 0 and json.loads(out)["detail"]["tables"] == ["2|2"]


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "eigen", "--degree", "1", "1")
    assert code == 1 and not json.loads(out)["pass"]
    code, _, _ = run(capsys, "verify", "eigen", "--degree", "1", "1", "--e2-formula", "derived")
    assert code == 0


def test_verify_hook_ratio_identities(capsys):
    code, _, _ = run(capsys, "verify", "appendix", "--max", "4", "2")
    assert code == 0


def test_tables(capsys):
    code, out, _ = run(capsys, "table", "0", "0", "json")
    assert code == 0 and out.strip() == '{"(;)":{"(;)":"1"}}'
    code, out, _ = run(capsys, "table", "1", "1", "latex", "--paper-layout")
    assert "$(1;)$ & $1$ & $q$" in out


def test_output_independent_of_threads(capsys):
    _, a, _ = run(capsys, "verify", "duality", "--max", "2", "2")
    _, b, _ = run(capsys, "verify", "duality", "--max", "2", "2", "--threads", "4")
    assert a == b


def test_cache_dir_flag(capsys, tmp_path):
    code, first, _ = run(capsys, "compute", "P", "1,0;1", "--cache-dir", str(tmp_path))
    assert list(tmp_path.rglob("*.json"))
    _, second, _ = run(capsys, "compute", "P", "1,0;1", "--cache-dir", str(tmp_path))
    assert code == 0 and first == second
