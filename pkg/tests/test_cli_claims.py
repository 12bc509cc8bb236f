import pytest

import claims
import constructions as C
import snark_cli
from claims import CLAIMS, EXCLUSION_NOTE, ClaimRun, claim_ids, run_claim
from models.errors import ClaimError, SearchTimeoutError
from models.reports import ReportRecord
from utils.data_utils import ReportWriter, load_report_records, save_records_to_json


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def report(workdir):
    return str(workdir / "out" / "reports.jsonl")


def run_cli(report, *argv):
    return snark_cli.main(["--report", report, *argv])


def test_claims_listing(report, capsys):
    assert run_cli(report, "claims") == 0
    out = capsys.readouterr().out
    assert "g306" in out and "[extended]" in out
    assert "y2-y4" in out


def test_recipes_listing(report, capsys):
    assert run_cli(report, "recipes") == 0
    assert "h6-ttt" in capsys.readouterr().out


def test_build_to_stdout(report, capsys):
    assert run_cli(report, "build", "(petersen)", "--graph6") == 0
    assert capsys.readouterr().out.strip() == "IheA@GUAo"


def test_build_then_verify(report, workdir, capsys):
    target = str(workdir / "graphs" / "p.mpole")
    assert run_cli(report, "build", "(petersen)", "-o", target) == 0
    assert run_cli(report, "verify", target, "--props", "snark,bicritical,girth,cc",
                   "--min-girth", "5", "--min-cc", "5") == 0
    out = capsys.readouterr().out
    assert "All requested checks passed" in out
    records = load_report_records(report)
    assert [r.kind for r in records] == ["build", "verify"]
    assert records[0].canonical_hash == records[1].canonical_hash
    assert records[1].report.girth == 5


def test_verify_failure_exit_code(report):
    assert run_cli(report, "verify", "C~", "--props", "snark") == 1
    assert run_cli(report, "verify", "IheA@GUAo", "--props", "girth", "--min-girth", "6") == 1


def test_verify_with_hints(report, workdir):
    target = str(workdir / "g36.mpole")
    assert run_cli(report, "build", "g36", "-o", target) == 0
    assert run_cli(report, "verify", target, "--props", "strictly-critical", "--hints", "0-1,0-2") == 0


def test_missing_input_is_an_error(report, capsys):
    assert run_cli(report, "verify", "no-such-file.mpole") == 2
    assert "Error" in capsys.readouterr().out


def test_bad_recipe_is_an_error(report):
    assert run_cli(report, "build", "(flower 4)") == 2


def test_unknown_property_is_rejected(report):
    with pytest.raises(SystemExit) as exc:
        run_cli(report, "verify", "IheA@GUAo", "--props", "planar")
    assert exc.value.code == 2


def test_bad_hint_is_rejected(report):
    with pytest.raises(SystemExit):
        run_cli(report, "verify", "IheA@GUAo", "--hints", "0:1")


def test_invalid_settings(report, capsys):
    assert run_cli(report, "--jobs", "0", "claims") == 2
    assert "invalid settings" in capsys.readouterr().out


def test_timeout_exit_code(report, monkeypatch, capsys):
    def stalled(args):
        raise SearchTimeoutError("search deadline exceeded")
    monkeypatch.setattr(snark_cli, "cmd_claims", stalled)
    assert run_cli(report, "claims") == 2
    assert "Timeout" in capsys.readouterr().out


def test_oracles(report, capsys):
    assert run_cli(report, "oracle", "colour", "IheA@GUAo") == 0
    assert run_cli(report, "oracle", "cc", "IheA@GUAo") == 0
    assert run_cli(report, "oracle", "critical", "IheA@GUAo") == 0
    out = capsys.readouterr().out
    assert "colourable: False" in out
    assert "cyclic connectivity: 5" in out
    assert "criticality: bicritical" in out
    assert len(load_report_records(report, kind="oracle")) == 3


def test_repro_single_claim(report, capsys):
    assert run_cli(report, "repro", "--claim", "y2-y4") == 0
    out = capsys.readouterr().out
    assert EXCLUSION_NOTE in out
    assert "1/1 claims passed" in out
    (record,) = load_report_records(report, kind="claim")
    assert record.claim.claim_id == "y2-y4"
    assert record.claim.passed


def test_repro_unknown_claim(report):
    assert run_cli(report, "repro", "--claim", "nope") == 2


def test_repro_extended_claim_needs_flag(report, capsys):
    assert run_cli(report, "repro", "--claim", "g306") == 2
    assert "--extended" in capsys.readouterr().out


def test_claim_registry():
    assert set(claim_ids()) < set(claim_ids(extended=True)) == set(CLAIMS)
    assert {"g306", "g324", "g342"} == set(claim_ids(extended=True)) - set(claim_ids())


def test_run_claim_errors():
    with pytest.raises(ClaimError, match="unknown claim"):
        run_claim("nope")
    with pytest.raises(ClaimError, match="takes hours"):
        run_claim("g324")


def test_isochromatic_claim():
    result = run_claim("isochromatic-petersen", jobs=1)
    assert result.passed
    assert all(c.provenance in ("PUBLISHED", "DERIVED", "TRIVIAL") for c in result.checks)


def test_claim_run_records_failures():
    run = ClaimRun("demo", "demo claim")
    assert run.check("ok", "TRIVIAL", "1", lambda: (True, "1"))
    assert not run.check("bad", "DERIVED", "1", lambda: (False, "2"), anchor="somewhere")
    run.note("partial")
    assert not run.result.passed
    assert [c.observed for c in run.result.checks] == ["1", "2"]
    assert run.result.checks[1].anchor == "somewhere"
    assert run.result.notes == ["partial"]


def test_empty_claim_does_not_pass():
    assert not ClaimRun("empty", "nothing checked").result.passed


@pytest.mark.slow
def test_parity_claim():
    assert run_claim("parity").passed


@pytest.mark.slow
def test_g36_claim():
    assert run_claim("g36").passed


def test_report_stream_round_trip(tmp_path):
    path = str(tmp_path / "nested" / "r.jsonl")
    writer = ReportWriter(path)
    for kind in ("build", "verify", "build"):
        writer.append(ReportRecord(kind=kind, source="(petersen)", canonical_hash="abc",
                                   tool_version="1.0.0", started_at="2024-01-01T00:00:00+00:00"))
    assert writer.written == 3
    assert len(load_report_records(path)) == 3
    assert len(load_report_records(path, kind="build")) == 2
    assert load_report_records(str(tmp_path / "missing.jsonl")) == []
    out = str(tmp_path / "records.json")
    save_records_to_json(load_report_records(path), out)
    assert '"kind": "verify"' in open(out, encoding="utf-8").read()


def test_build_from_recipe_file(report, workdir, capsys):
    recipe = workdir / "petersen.recipe"
    recipe.write_text("# the Petersen graph\n(petersen)\n", encoding="utf-8")
    assert run_cli(report, "build", str(recipe), "--graph6") == 0
    assert capsys.readouterr().out.strip() == "IheA@GUAo"
    (record,) = load_report_records(report, kind="build")
    assert record.source == "(petersen)"


def test_parity_claim_counts_colourable_samples(monkeypatch):
    monkeypatch.setattr(claims, "PARITY_SAMPLES", 25)
    result = run_claim("parity", jobs=1)
    assert result.passed
    assert result.checks[0].observed == "25"


def test_sibling_claims_check_cyclic_connectivity(monkeypatch):
    calls = []

    def connected(g, k, jobs=None):
        calls.append(k)
        return True

    monkeypatch.setattr(claims, "_cc6_member", lambda n: (C.petersen(), [(0, 2)]))
    monkeypatch.setattr(claims, "is_cyclically_k_connected", connected)
    result = run_claim("g324", extended=True, jobs=1)
    check = next(c for c in result.checks if c.name == "cyclically 6-connected")
    assert check.passed
    assert calls == [6]


def test_perfect_j7_claim_on_sampled_poles(monkeypatch):
    choices = C.valid_23pole_choices
    monkeypatch.setattr(C, "valid_23pole_choices", lambda g: choices(g)[:3])
    result = run_claim("perfect-j7", jobs=1)
    assert result.passed
    assert result.checks[0].observed == "3/3 perfect"


def test_sp1_colouring_set_claim():
    assert run_claim("sp1-colset", jobs=1).passed
