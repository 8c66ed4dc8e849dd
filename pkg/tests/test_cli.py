from qclubs.cli import run


def _report(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    pairs = {}
    for line in out.strip().splitlines():
        key, _, value = line.partition(" = ")
        pairs[key] = value
    return code, pairs


def test_field_info(capsys):
    code, rep = _report(capsys, ["field-info", "--q", "2", "--n", "5"])
    assert code == 0
    assert rep["q"] == "2"
    assert rep["size"] == "32"
    assert rep["modulus"].count(",") == 5


def test_construct_lambda(capsys):
    code, rep = _report(capsys, ["construct", "--q", "2", "--n", "5", "--family", "lambda"])
    assert code == 0
    assert rep["classification"] == "IClub(3)"
    assert rep["size"] == "25"


def test_construct_deterministic_output(capsys):
    argv = ["construct", "--q", "2", "--n", "6", "--family", "thm35", "--t", "2"]
    code1 = run(argv)
    out1 = capsys.readouterr().out
    code2 = run(argv)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_analyze_round_trip(capsys):
    code, rep = _report(
        capsys, ["construct", "--q", "2", "--n", "5", "--family", "trace-tower", "--m", "1", "--ell", "5"]
    )
    assert code == 0
    code, rep2 = _report(capsys, ["analyze", "--q", "2", "--n", "5", "--subspace", rep["subspace"]])
    assert code == 0
    assert rep2["classification"] == rep["classification"]


def test_equiv_subcommand(capsys):
    sub = "2,0;4,0;8,0;16,1;0,2"
    code, rep = _report(
        capsys, ["equiv", "--q", "2", "--n", "5", "--subspace1", sub, "--subspace2", sub]
    )
    assert code == 0
    assert rep["status"] == "equivalent"


def test_km_arc_subcommand(capsys):
    code, rep = _report(
        capsys, ["km-arc", "--q", "2", "--n", "4", "--family", "lambda"]
    )
    assert code == 0
    assert rep["arc_size"] == "20"
    assert rep["valid"] == "True"


def test_blocking_profile_subcommand(capsys):
    code, rep = _report(
        capsys, ["blocking-profile", "--q", "2", "--n", "4", "--family", "lambda"]
    )
    assert code == 0
    assert rep["lines.weight4"] == "1"


def test_code_weights_subcommand(capsys):
    code, rep = _report(
        capsys,
        ["code-weights", "--q", "2", "--n", "3", "--family", "trace-tower", "--m", "1", "--ell", "3"],
    )
    assert code == 0
    assert rep["weights.1"] == "7"
    assert rep["weights.2"] == "28"
    assert rep["weights.3"] == "28"


def test_records_format(capsys):
    code = run(["field-info", "--q", "2", "--n", "3", "--format", "records"])
    out = capsys.readouterr().out
    assert code == 0
    assert "q,2" in out.splitlines()


def test_validation_error_exit_code(capsys):
    code, rep = _report(
        capsys, ["construct", "--q", "2", "--n", "5", "--family", "trace-tower"]
    )
    assert code == 1
    assert "error" in rep


def test_bad_field_exit_code(capsys):
    code, rep = _report(capsys, ["field-info", "--q", "6", "--n", "2"])
    assert code == 1


def test_verify_suite(capsys):
    code, rep = _report(capsys, ["verify-suite", "--q", "2", "--n", "4", "--trials", "3"])
    assert code == 0
    assert int(rep["checks"]) >= 5
