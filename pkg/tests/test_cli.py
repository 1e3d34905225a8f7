import json
import subprocess
import sys

import pytest

from unizk.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_setup_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "setup", "--seed", 7, "--out", a)[0] == 0
    assert run(capsys, "setup", "--seed", 7, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "setup", "--seed", 7)
    assert code == 0 and out.strip() == a.read_text().strip()


def test_seed_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("UNIZK_SEED", "7")
    env_out = run(capsys, "setup")[1]
    monkeypatch.delenv("UNIZK_SEED")
    assert env_out == run(capsys, "setup", "--seed", 7)[1]


@pytest.mark.parametrize("protocol", ["crs", "rom"])
def test_prove_verify(tmp_path, capsys, protocol):
    crs, bank, proof = tmp_path / "crs.json", tmp_path / "bank.json", tmp_path / "proof.json"
    run(capsys, "setup", "--seed", 1, "--out", crs)
    code, _, _ = run(capsys, "prove", "--seed", 2, "--crs", crs, "--bank", bank, "--protocol", protocol,
                     "--w", 5, "--out", proof)
    assert code == 0
    assert "banner" in json.loads(proof.read_text())["sim_only_note_dump"]
    code, out, _ = run(capsys, "verify", "--seed", 3, "--crs", crs, "--bank", bank, "--proof", proof)
    assert code == 0 and json.loads(out) == {"accept": True}
    # a different bank does not know the serial
    code, out, _ = run(capsys, "verify", "--seed", 3, "--crs", crs, "--bank", tmp_path / "other.json",
                       "--proof", proof)
    assert code == 1 and json.loads(out) == {"accept": False}


def test_sok_round_trip(tmp_path, capsys):
    crs, bank, sig = tmp_path / "crs.json", tmp_path / "bank.json", tmp_path / "sig.json"
    run(capsys, "setup", "--seed", 1, "--purpose", "sok", "--out", crs)
    assert run(capsys, "sok", "sign", "--seed", 2, "--crs", crs, "--bank", bank, "--message", "hi",
               "--w", 5, "--out", sig)[0] == 0
    assert run(capsys, "sok", "verify", "--crs", crs, "--bank", bank, "--sig", sig)[0] == 0
    # wrong deployment purpose is a usage error
    proof_crs = tmp_path / "p.json"
    run(capsys, "setup", "--seed", 1, "--out", proof_crs)
    assert run(capsys, "sok", "verify", "--crs", proof_crs, "--bank", bank, "--sig", sig)[0] == 2


def test_credential_flow(tmp_path, capsys):
    issuer, bank, cred = tmp_path / "issuer.json", tmp_path / "bank.json", tmp_path / "cred.json"
    notice, surrendered = tmp_path / "notice.json", tmp_path / "surr.json"
    assert run(capsys, "cred", "keygen", "--seed", 4, "--out", issuer)[0] == 0
    assert run(capsys, "cred", "issue", "--seed", 5, "--issuer", issuer, "--bank", bank,
               "--access", "read", "--out", cred)[0] == 0
    assert run(capsys, "cred", "verify", "--issuer", issuer, "--bank", bank, "--cred", cred)[0] == 0
    assert run(capsys, "cred", "verify", "--issuer", issuer, "--bank", bank, "--cred", cred,
               "--access", "write")[0] == 1
    assert run(capsys, "cred", "revoke", "--cred", cred, "--out", notice)[0] == 0
    assert run(capsys, "cred", "prove-revocation", "--cred", cred, "--out", surrendered)[0] == 0
    assert run(capsys, "cred", "verify-revocation", "--issuer", issuer, "--bank", bank,
               "--notice", notice, "--proof", surrendered)[0] == 0


def test_game_money_report(capsys):
    code, out, _ = run(capsys, "game", "money", "--attack", "measure-resend", "--n", 8,
                       "--trials", 100000, "--seed", 1)
    report = json.loads(out)
    assert code == 0
    assert report["bound"] == pytest.approx(0.02328, abs=1e-5)
    assert abs(report["z"]) < 3


def test_game_is_deterministic(capsys):
    argv = ("game", "clone", "--trials", 50, "--seed", 9, "--n", 8)
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_usage_errors(tmp_path, capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "prove", "--bank", "b")[0] == 2
    assert run(capsys, "verify", "--crs", tmp_path / "missing", "--bank", "b", "--proof", "p")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 9}')
    assert run(capsys, "verify", "--crs", bad, "--bank", "b", "--proof", "p")[0] == 2
    code, _, err = run(capsys, "sok", "sign", "--crs", bad, "--bank", "b")
    assert code == 2 and err.startswith("unizk:")


def test_vectors_command(capsys):
    out1 = run(capsys, "vectors")[1]
    out2 = run(capsys, "vectors")[1]
    assert out1 == out2 and json.loads(out1)["seed"] == 20231108


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "unizk", "setup", "--seed", "7"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["kind"] == "deployment"
