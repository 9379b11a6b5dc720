import json

import pytest

from umbral.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# coeffs


def test_coeffs_falling_row_4(capsys):
    code, out, _ = run(capsys, "coeffs", "--preset", "falling", "--rows", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"triangle", "generator", "order"}
    assert payload["triangle"][4] == ["0", "-6", "11", "-6", "1"]
    assert payload["order"] == 4


def test_coeffs_expression_matches_preset(capsys):
    _, a, _ = run(capsys, "coeffs", "--f", "log(1+t)", "--rows", "4", "--format", "json")
    _, b, _ = run(capsys, "coeffs", "--preset", "falling", "--rows", "4", "--format", "json")
    assert json.loads(a)["triangle"] == json.loads(b)["triangle"]


def test_coeffs_identity_default(capsys):
    code, out, _ = run(capsys, "coeffs", "--rows", "3", "--format", "json")
    assert code == 0
    tri = json.loads(out)["triangle"]
    assert all(tri[n][k] == ("1" if n == k else "0") for n in range(4) for k in range(n + 1))


def test_coeffs_rationals_are_strings(capsys):
    _, out, _ = run(capsys, "coeffs", "--f", "t + t^2/3", "--rows", "3", "--format", "json")
    tri = json.loads(out)["triangle"]
    assert tri[2][1] == "2/3"
    assert all(isinstance(v, str) for row in tri for v in row)


def test_coeffs_csv_shape(capsys):
    _, out, _ = run(capsys, "coeffs", "--preset", "touchard", "--rows", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "n,k=0,k=1,k=2,k=3"
    assert lines[2] == "1,0,1,,"
    assert lines[4] == "3,0,1,3,1"


def test_coeffs_table(capsys):
    code, out, _ = run(capsys, "coeffs", "--preset", "laguerre", "--rows", "3")
    assert code == 0
    assert out.splitlines()[-1].split() == ["3", "|", "0", "6", "-6", "1"]


def test_coeffs_out_file(capsys, tmp_path):
    target = tmp_path / "tri.json"
    code, out, _ = run(capsys, "coeffs", "--preset", "falling", "--rows", "2", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["triangle"][2] == ["0", "-1", "1"]


@pytest.mark.parametrize("expr", ["t^2", "1+t", "t +", "sin(t)", "log(t)"])
def test_coeffs_bad_generator_exit_2(capsys, expr):
    code, _, err = run(capsys, "coeffs", "--f", expr)
    assert code == 2
    assert "error" in err


def test_coeffs_both_sources_exit_2(capsys):
    assert run(capsys, "coeffs", "--f", "t", "--preset", "falling")[0] == 2


def test_coeffs_unknown_preset_exit_2(capsys):
    assert run(capsys, "coeffs", "--preset", "nope")[0] == 2


# series and classify


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "--f", "exp(t)-1", "--order", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["coefficients"] == ["0", "1", "1/2", "1/6", "1/24"]


def test_series_needs_generator(capsys):
    assert run(capsys, "series")[0] == 2


def test_classify_linear(capsys):
    code, out, _ = run(capsys, "classify", "--f", "3*t", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["in_class"] and payload["family"] == "linear" and payload["a"] == "3"


def test_classify_logarithmic(capsys):
    code, out, _ = run(capsys, "classify", "--f", "log(1+2*t)", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert (payload["family"], payload["a"], payload["b"]) == ("logarithmic", "1", "2")


def test_classify_not_in_class(capsys):
    code, out, _ = run(capsys, "classify", "--f", "t + t^3", "--format", "json")
    assert code == 0
    assert json.loads(out)["in_class"] is False


def test_classify_table(capsys):
    code, out, _ = run(capsys, "classify", "--preset", "touchard")
    assert code == 0
    assert "exponential" in out


def test_classify_bad_generator(capsys):
    assert run(capsys, "classify", "--f", "t^2")[0] == 2


# sequence


def test_sequence_bell(capsys):
    code, out, _ = run(capsys, "sequence", "bell", "--count", "6", "--format", "csv")
    assert code == 0 and out == "1,1,2,5,15,52\n"


def test_sequence_stirling2_row(capsys):
    assert run(capsys, "sequence", "stirling2", "--row", "4", "--format", "csv")[1] == "0,1,7,6,1\n"


def test_sequence_lah_row(capsys):
    assert run(capsys, "sequence", "lah", "--row", "3", "--format", "csv")[1] == "0,6,-6,1\n"


def test_sequence_json(capsys):
    code, out, _ = run(capsys, "sequence", "stirling1", "--row", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["values"] == ["0", "-6", "11", "-6", "1"]


def test_sequence_unknown_exit_2(capsys):
    assert run(capsys, "sequence", "fibonacci")[0] == 2


def test_sequence_wrong_shape_exit_2(capsys):
    assert run(capsys, "sequence", "stirling2", "--count", "4")[0] == 2
    assert run(capsys, "sequence", "bell", "--row", "4")[0] == 2


# verify


def test_verify_thm1_expression(capsys):
    code, out, _ = run(capsys, "verify", "thm1", "--f", "exp(t)-1", "--nmax", "6", "--deg", "4")
    assert code == 0
    assert out.rstrip().splitlines()[-1].startswith("OK")


def test_verify_special_bucchianico(capsys):
    code, _, _ = run(capsys, "verify", "special", "--family", "power", "--a", "-1/4", "--b", "-2", "--c", "2")
    assert code == 0


def test_verify_funceq_exponential(capsys):
    code, _, _ = run(capsys, "verify", "funceq", "--family", "exponential", "--a", "1", "--b", "1", "--order", "10")
    assert code == 0


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "thm1-alt", "--preset", "touchard", "--nmax", "3", "--deg", "3", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["suite"] == "thm1-alt" and payload["passed"] is True
    assert payload["params"]["seed"] == 20240613
    assert "wall_time_s" not in payload


def test_verify_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "expform", "--preset", "falling", "--nmax", "2", "--deg", "2", "--format", "json", "--timing")
    assert "wall_time_s" in json.loads(out)


def test_verify_linear_with_a_series(capsys):
    code, _, _ = run(capsys, "verify", "special", "--family", "linear", "--a", "2", "--A", "1+t", "--nmax", "4", "--deg", "3")
    assert code == 0


def test_verify_bad_family_params_exit_2(capsys):
    assert run(capsys, "verify", "special", "--family", "power", "--c", "0")[0] == 2


def test_verify_bad_rational_exit_2(capsys):
    assert run(capsys, "verify", "funceq", "--family", "exponential", "--a", "x")[0] == 2


def test_verify_unknown_suite_exit_2(capsys):
    assert run(capsys, "verify", "nope")[0] == 2


def test_verify_malformed_f_exit_2(capsys):
    assert run(capsys, "verify", "thm1", "--f", "exp(t")[0] == 2


def test_verify_is_deterministic(capsys):
    argv = ("verify", "thm1", "--nmax", "3", "--deg", "2", "--seed", "7", "--format", "json")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert run(capsys, "verify", "thm1", "--nmax", "3", "--deg", "2", "--seed", "8", "--format", "json")[1] != first


def _triangle_file(capsys, tmp_path, rows=5):
    path = tmp_path / "tri.json"
    run(capsys, "coeffs", "--preset", "touchard", "--rows", str(rows), "--format", "json", "--out", str(path))
    return path


def test_verify_triangle_file_passes(capsys, tmp_path):
    path = _triangle_file(capsys, tmp_path)
    assert run(capsys, "verify", "triangle", "--triangle", str(path))[0] == 0


def test_verify_corrupted_triangle_exit_1(capsys, tmp_path):
    path = _triangle_file(capsys, tmp_path)
    payload = json.loads(path.read_text())
    payload["triangle"][4][2] = "8"
    path.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "verify", "triangle", "--triangle", str(path), "--format", "json")
    assert code == 1
    failure = json.loads(out)["reports"][0]["failure"]
    assert (failure["n"], failure["k"]) == (4, 2)


def test_verify_triangle_ragged_row_exit_1(capsys, tmp_path):
    path = _triangle_file(capsys, tmp_path)
    payload = json.loads(path.read_text())
    payload["triangle"][3].append("0")
    path.write_text(json.dumps(payload))
    assert run(capsys, "verify", "triangle", "--triangle", str(path))[0] == 1


def test_verify_triangle_unreadable_exit_2(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run(capsys, "verify", "triangle", "--triangle", str(path))[0] == 2
    assert run(capsys, "verify", "triangle")[0] == 2


def test_verify_triangle_rows_cap(capsys, tmp_path):
    path = _triangle_file(capsys, tmp_path)
    assert run(capsys, "verify", "triangle", "--triangle", str(path), "--rows-cap", "3")[0] == 2


# limits


def test_max_order_env(capsys, monkeypatch):
    monkeypatch.setenv("UMBRAL_MAX_ORDER", "5")
    assert run(capsys, "coeffs", "--rows", "6")[0] == 2
    assert run(capsys, "coeffs", "--rows", "5")[0] == 0
    assert run(capsys, "verify", "thm1", "--preset", "touchard", "--nmax", "4", "--deg", "4")[0] == 2


def test_max_order_default(capsys):
    assert run(capsys, "coeffs", "--rows", "65")[0] == 2


def test_max_order_env_invalid(capsys, monkeypatch):
    monkeypatch.setenv("UMBRAL_MAX_ORDER", "lots")
    assert run(capsys, "coeffs", "--rows", "3")[0] == 2


def test_no_command_exit_2(capsys):
    assert run(capsys)[0] == 2


def test_help_exit_0(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "coeffs" in out
