"""End-to-end CLI behavior: exit codes, file outputs, worked vectors."""

import json

import pytest

from conftest import CHSS_SEED, DHSS_SEED
from crthss.cli import main
from crthss.fileformat import canonical_dumps, param_file_obj


@pytest.fixture
def micro_param_file(tmp_path, micro_params):
    path = tmp_path / "micro.json"
    path.write_text(canonical_dumps(param_file_obj("dhss", micro_params)))
    return path


def read(path):
    return json.loads(path.read_text())


def test_gen_params_ok(tmp_path, capsys):
    out = tmp_path / "params.json"
    code = main([
        "gen-params", "--m0", "97", "--levels", "1,2", "--thresholds", "1,2",
        "--k", "1", "--theta", "1/2", "--owf", "test_affine",
        "--seed", "7", "--out", str(out),
    ])
    assert code == 0
    printed = capsys.readouterr().out
    assert "information rate" in printed
    assert "Asmuth-Bloom inequality holds at level 2" in printed
    obj = read(out)
    assert obj["sequence"]["m0"] == "97"
    assert len(obj["sequence"]["moduli"]) == 3
    # deterministic regeneration
    out2 = tmp_path / "params2.json"
    main([
        "gen-params", "--m0", "97", "--levels", "1,2", "--thresholds", "1,2",
        "--k", "1", "--theta", "1/2", "--owf", "test_affine",
        "--seed", "7", "--out", str(out2),
    ])
    assert out.read_text() == out2.read_text()


def test_gen_params_validation_failures(tmp_path, capsys):
    code = main([
        "gen-params", "--m0", "97", "--levels", "1,2", "--thresholds", "2,2",
        "--owf", "test_affine", "--seed", "1", "--out", str(tmp_path / "x.json"),
    ])
    assert code == 2
    assert "increasing" in capsys.readouterr().err

    code = main([
        "gen-params", "--m0", "11", "--levels", "3,3", "--thresholds", "1,2",
        "--owf", "test_affine", "--seed", "1", "--out", str(tmp_path / "x.json"),
    ])
    assert code == 2
    assert "interval" in capsys.readouterr().err.lower()

    code = main([
        "gen-params", "--m0", "10", "--levels", "1", "--thresholds", "1",
        "--owf", "test_affine", "--seed", "1", "--out", str(tmp_path / "x.json"),
    ])
    assert code == 2


def test_deal_and_reconstruct_dhss(tmp_path, micro_param_file, capsys):
    out_dir = tmp_path / "deal"
    code = main([
        "deal", "--params", str(micro_param_file), "--secret", "4",
        "--seed", str(DHSS_SEED), "--out-dir", str(out_dir),
        "--emit-dealer-secrets",
    ])
    assert code == 0
    shares = {i: read(out_dir / f"share_{i:03d}.json") for i in (1, 2, 3)}
    assert [shares[i]["value"] for i in (1, 2, 3)] == ["9", "9", "6"]
    bundle = read(out_dir / "public_bundle.json")
    w = {(e["participant"], e["level"]): e["value"] for e in bundle["w"]}
    assert w == {(1, 1): "9", (1, 2): "1"}
    secrets = read(out_dir / "dealer_secrets.json")
    assert secrets["values"]["y"] == ["4", "74"]
    capsys.readouterr()

    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_001.json"),
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "4"

    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_002.json"), str(out_dir / "share_003.json"),
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "4"

    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_002.json"),
    ])
    assert code == 4
    assert "failing level" in capsys.readouterr().err


def test_deal_and_reconstruct_chss(tmp_path, micro_param_file, capsys):
    out_dir = tmp_path / "deal"
    code = main([
        "deal", "--params", str(micro_param_file), "--secret", "4",
        "--scheme", "chss", "--seed", str(CHSS_SEED), "--out-dir", str(out_dir),
    ])
    assert code == 0
    shares = {i: read(out_dir / f"share_{i:03d}.json") for i in (1, 2, 3)}
    assert [shares[i]["value"] for i in (1, 2, 3)] == ["5", "0", "14"]
    assert all(s["scheme"] == "chss" for s in shares.values())
    capsys.readouterr()

    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_001.json"), str(out_dir / "share_002.json"),
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "4"

    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_002.json"), str(out_dir / "share_003.json"),
    ])
    assert code == 4
    assert "[1]" in capsys.readouterr().err  # level 1 named


def test_deal_secret_out_of_range(tmp_path, micro_param_file, capsys):
    code = main([
        "deal", "--params", str(micro_param_file), "--secret", "7",
        "--seed", "1", "--out-dir", str(tmp_path / "d"),
    ])
    assert code == 2

    code = main([
        "deal", "--params", str(micro_param_file), "--secret", "97",
        "--seed", "1", "--out-dir", str(tmp_path / "d"),
    ])
    assert code == 2


def test_deal_invalid_params(tmp_path, micro_params, capsys):
    obj = param_file_obj("dhss", micro_params)
    obj["hierarchy"]["thresholds"] = [2, 2]
    bad = tmp_path / "bad.json"
    bad.write_text(canonical_dumps(obj))
    code = main([
        "deal", "--params", str(bad), "--secret", "1", "--seed", "1",
        "--out-dir", str(tmp_path / "d"),
    ])
    assert code == 3


def test_digest_mismatch(tmp_path, micro_param_file, capsys):
    dir_a = tmp_path / "a"
    dir_b = tmp_path / "b"
    main(["deal", "--params", str(micro_param_file), "--secret", "4",
          "--seed", str(DHSS_SEED), "--out-dir", str(dir_a)])
    main(["deal", "--params", str(micro_param_file), "--secret", "4",
          "--scheme", "chss", "--seed", "9", "--out-dir", str(dir_b)])
    code = main([
        "reconstruct", "--public", str(dir_a / "public_bundle.json"),
        "--shares", str(dir_b / "share_001.json"),
    ])
    assert code == 5


def test_missing_public_value(tmp_path, micro_param_file, capsys):
    out_dir = tmp_path / "deal"
    main(["deal", "--params", str(micro_param_file), "--secret", "4",
          "--seed", str(DHSS_SEED), "--out-dir", str(out_dir)])
    bundle = read(out_dir / "public_bundle.json")
    bundle["w"] = []
    (out_dir / "public_bundle.json").write_text(canonical_dumps(bundle))
    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_001.json"),
    ])
    assert code == 6


def test_flat_scheme_via_cli(tmp_path, micro_params, capsys):
    obj = param_file_obj("ab", SchemeParamsFlat(micro_params))
    path = tmp_path / "flat.json"
    path.write_text(canonical_dumps(obj))
    out_dir = tmp_path / "deal"
    code = main([
        "deal", "--params", str(path), "--secret", "3", "--seed", "5",
        "--out-dir", str(out_dir),
    ])
    assert code == 0
    capsys.readouterr()
    code = main([
        "reconstruct", "--public", str(out_dir / "public_bundle.json"),
        "--shares", str(out_dir / "share_001.json"), str(out_dir / "share_003.json"),
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "3"


def SchemeParamsFlat(micro_params):
    from crthss.params import Hierarchy, SchemeParams
    return SchemeParams(
        sequence=micro_params.sequence,
        hierarchy=Hierarchy((3,), (2,)),
        owf=micro_params.owf,
    )


def test_audit_micro(tmp_path, micro_param_file, capsys):
    out = tmp_path / "report.json"
    code = main([
        "audit", "--params", str(micro_param_file), "--adversary", "2",
        "--secret", "4", "--seed", "77", "--out", str(out),
    ])
    assert code == 0
    report = read(out)
    assert report["scheme"] == "dhss"
    assert report["adversary"] == [2]
    assert report["loss_bits"] >= 0
    assert report["gamma_total"] == 7
    assert report["decomposition_ok"] is True
    total = sum(int(g["candidates"]) * g["num_secrets"] for g in report["groups"])
    assert total == int(report["total_candidates"])


def test_audit_authorized_adversary(tmp_path, micro_param_file, capsys):
    code = main([
        "audit", "--params", str(micro_param_file), "--adversary", "1,2",
        "--secret", "4", "--seed", "77",
    ])
    assert code == 7


def test_audit_budget(tmp_path, micro_param_file, capsys):
    code = main([
        "audit", "--params", str(micro_param_file), "--adversary", "2",
        "--secret", "4", "--seed", "77", "--budget", "3",
    ])
    assert code == 8


def test_audit_ladder(tmp_path, capsys):
    params_path = tmp_path / "shape.json"
    main([
        "gen-params", "--m0", "97", "--levels", "1,2", "--thresholds", "1,2",
        "--owf", "hash_based", "--seed", "1", "--out", str(params_path),
    ])
    capsys.readouterr()
    out = tmp_path / "ladder.json"
    code = main([
        "audit", "--params", str(params_path), "--adversary", "2",
        "--ladder", "97,997,9973", "--seed", "1", "--out", str(out),
    ])
    assert code == 0
    report = read(out)
    assert [r["m0"] for r in report["ladder"]] == ["97", "997", "9973"]
    assert len(report["delta_trend"]) == 3
    assert report["strictly_decreasing"] is True


def test_audit_chss(tmp_path, micro_param_file, capsys):
    out = tmp_path / "report.json"
    code = main([
        "audit", "--params", str(micro_param_file), "--scheme", "chss",
        "--adversary", "1", "--secret", "4", "--seed", "77", "--out", str(out),
    ])
    assert code == 0
    report = read(out)
    assert report["scheme"] == "chss"
    assert report["decomposition_ok"] is None
    assert report["loss_bits"] >= 0


def test_gen_params_m0_bits(tmp_path, capsys):
    out = tmp_path / "params.json"
    code = main([
        "gen-params", "--m0-bits", "24", "--levels", "2,2", "--thresholds", "2,3",
        "--theta", "2/3", "--owf", "hash_based", "--seed", "3", "--out", str(out),
    ])
    assert code == 0
    obj = read(out)
    m0 = int(obj["sequence"]["m0"])
    assert m0.bit_length() == 24
    from crthss.params import is_prime
    assert is_prime(m0)


def test_deal_without_seed_prints_commitment_only(tmp_path, micro_param_file, capsys):
    code = main([
        "deal", "--params", str(micro_param_file), "--secret", "4",
        "--out-dir", str(tmp_path / "d"),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "seed commitment: " in out
    assert "(explicit)" not in out


def test_inspect(tmp_path, micro_param_file, capsys):
    code = main(["inspect", str(micro_param_file)])
    assert code == 0
    out = capsys.readouterr().out
    assert "parameter file" in out

    code = main(["inspect", str(tmp_path / "missing.json")])
    assert code == 2


def test_unknown_command_exits_2(capsys):
    assert main(["bogus"]) == 2
