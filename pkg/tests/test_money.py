import math

import numpy as np
import pytest

from unizk.errors import UnknownSerial
from unizk.money import (ATTACKS, SIM_ONLY, MoneyAuthority, NoteHandle, attack_fresh_forgery,
                         attack_measure_resend, attack_success_probability, note_gen,
                         qubit_pass_probability, ver)
from unizk.qubit import prepare_many

ZERO_NOTE_SEED = 11   # found by search: first qubit registered as (Z, 0)


def test_exact_oracles():
    assert qubit_pass_probability("measure-resend") == pytest.approx(5 / 8)
    assert qubit_pass_probability("fresh-forgery") == pytest.approx(1 / 2)
    assert qubit_pass_probability("identity") == 0
    assert attack_success_probability("measure-resend", 8) == pytest.approx(0.0232830643)
    with pytest.raises(ValueError):
        qubit_pass_probability("nope")


def test_honest_notes_verify():
    auth = MoneyAuthority(0)
    for n in (1, 2, 3, 4, 8, 16):
        for _ in range(50):
            h, s = note_gen(auth, n)
            assert ver(auth, h, s) and ver(auth, h, s)


def test_seeded_note():
    auth = MoneyAuthority(ZERO_NOTE_SEED)
    h, s = note_gen(auth, 1)
    assert np.allclose(auth._notes[h.note_id], [[1, 0]])


def test_serials_unique():
    auth = MoneyAuthority(1)
    serials = {note_gen(auth, 1)[1] for _ in range(10_000)}
    assert len(serials) == 10_000


def test_ver_errors_and_dead_handles():
    auth = MoneyAuthority(2)
    h, s = note_gen(auth, 4)
    with pytest.raises(UnknownSerial):
        ver(auth, h, b"\x00" * 32)
    assert not ver(auth, NoteHandle(999), s)
    h2, _ = note_gen(auth, 5)
    assert not ver(auth, h2, s)   # length mismatch
    a, b = attack_measure_resend(auth, h)
    assert not auth.is_live(h)
    assert not ver(auth, h, s)


def test_plus_states_against_zero_registration():
    n, trials = 8, 100_000
    rng = np.random.default_rng(5)
    from unizk.qubit import measure_many
    amps = prepare_many(np.ones((trials * n,), dtype=int), np.zeros(trials * n, dtype=int))
    outs = measure_many(amps, np.zeros(trials * n, dtype=int), rng).reshape(trials, n)
    rate = np.mean(~outs.any(axis=1))
    p = 2.0 ** -n
    assert abs(rate - p) <= 3 * math.sqrt(p * (1 - p) / trials)


def test_all_z_note_survives_measure_resend():
    auth = MoneyAuthority(3)
    for _ in range(100):
        h, s = note_gen(auth, 8)
        reg = auth._registry[s]
        reg.bases[:] = 0
        auth._notes[h.note_id] = prepare_many(reg.bases, reg.bits)
        a, b = attack_measure_resend(auth, h)
        assert ver(auth, a, s) and ver(auth, b, s)


def test_fresh_forgery_keeps_original():
    auth = MoneyAuthority(4)
    for _ in range(100):
        h, s = note_gen(auth, 8)
        a, _ = attack_fresh_forgery(auth, h)
        assert a == h and ver(auth, a, s)


@pytest.mark.parametrize("attack", ["measure-resend", "fresh-forgery"])
def test_attack_rates(attack):
    n, trials = 4, 20_000
    auth = MoneyAuthority(9)
    wins = 0
    for _ in range(trials):
        h, s = note_gen(auth, n)
        a, b = ATTACKS[attack](auth, h)
        wins += ver(auth, a, s) and ver(auth, b, s)
    p = attack_success_probability(attack, n)
    assert abs(wins / trials - p) <= 3 * math.sqrt(p * (1 - p) / trials)


def test_dumps_carry_banner():
    auth = MoneyAuthority(6)
    h, s = note_gen(auth, 3)
    dump = auth.dump_note(h)
    assert dump["banner"] == SIM_ONLY
    other = MoneyAuthority(7)
    other.load_registry(auth.dump_registry())
    assert ver(other, other.load_note(dump), s)
    with pytest.raises(ValueError):
        other.load_note({"amplitudes": []})
    with pytest.raises(ValueError):
        other.load_registry({"registry": {}})
    with pytest.raises(ValueError):
        note_gen(auth, 0)
