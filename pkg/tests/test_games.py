import itertools
import json

import numpy as np
import pytest

from unizk import games
from unizk.games import (ClassicalCopier, GameReport, HardDistribution, HonestReprover, NullAdversary,
                         SurrenderAndCopy, clone_predicate, clone_predicate_bruteforce, implication_holds,
                         run_cloning_game_def41, run_cred_clone_game, run_extraction_game,
                         run_money_unforgeability, run_revocation_game, run_simext_game, run_sok_game,
                         run_unclonable_game)
from unizk.group import FIXTURE as P
from unizk.errors import AdversaryMalformed


def test_hard_distribution(rng):
    hard = HardDistribution(P)
    for _ in range(200):
        x, w = hard.sample(rng)
        assert P.is_element(x) and P.pow(P.g, w) == x and w != 0


def test_report_math():
    r = GameReport("g", {}, 100, 5, 0.05)
    assert r.rate == 0.05 and r.z == 0 and r.within()
    assert GameReport("g", {}, 100, 20, 0.05).z > 3
    assert not GameReport("g", {}, 100, 20, 0.05).within()
    assert GameReport("g", {}, 10, 0, 0.0).z is None
    with pytest.raises(ValueError):
        GameReport("g", {}, 1, 2)
    d = json.loads(r.to_json())
    assert set(d) >= {"game", "params", "trials", "successes", "rate", "bound", "z"}


def test_predicate_matches_bruteforce_exhaustively():
    targets = (0, 1)
    for k in range(2, 5):
        for in_xs in itertools.product(targets, repeat=k - 1):
            for out_xs in itertools.product(targets, repeat=k):
                for acc in itertools.product((False, True), repeat=k):
                    assert clone_predicate(0, in_xs, out_xs, acc) == clone_predicate_bruteforce(
                        0, in_xs, out_xs, acc)


def test_money_game_reproducible():
    a = run_money_unforgeability("measure-resend", 4, 2000, seed=3)
    b = run_money_unforgeability("measure-resend", 4, 2000, seed=3)
    assert a.to_json() == b.to_json()
    assert abs(a.z) < 3


def test_money_identity_is_double_spend():
    r = run_money_unforgeability("identity", 8, 500, seed=1)
    assert r.successes == 0 and r.counters["double_spend_rejected"] == 500


@pytest.mark.parametrize("protocol", ["crs", "rom"])
def test_unclonable_game_adversaries(protocol):
    cc = run_unclonable_game(protocol, ClassicalCopier, 2, 400, params=P, n=8, seed=1)
    assert cc.within() and cc.counters["predicate_mismatch"] == 0
    hr = run_unclonable_game(protocol, HonestReprover, 2, 50, params=P, n=8, seed=1)
    assert hr.rate >= 0.99
    nu = run_unclonable_game(protocol, NullAdversary, 3, 50, params=P, n=8, seed=1)
    assert nu.successes == 0


def test_malformed_adversary():
    class Short:
        name = "short"

        def __init__(self, aux):
            pass

        def __call__(self, view, rng):
            return []
    with pytest.raises(AdversaryMalformed):
        run_unclonable_game("crs", Short, 2, 1, params=P, n=4)
    with pytest.raises(ValueError):
        run_unclonable_game("crs", Short, 1, 1, params=P, n=4)


def test_def41_and_implication():
    for adv in (ClassicalCopier, HonestReprover, NullAdversary):
        pair = run_cloning_game_def41("crs", adv, 100, params=P, n=8, seed=2)
        ext = run_extraction_game("crs", adv, 2, 100, params=P, n=8, seed=2)
        if adv is ClassicalCopier:
            # wins here are the (5/8)^n guessing floor, nothing to extract
            assert pair.within() and ext.successes == 0
        else:
            assert implication_holds(pair, ext)
        if adv is HonestReprover:
            assert pair.rate >= 0.99 and ext.rate > 0.3


def test_extraction_game_envelope():
    r = run_extraction_game("crs", HonestReprover, 2, 300, params=P, n=8, seed=4)
    assert 0.4 <= r.rate <= 0.6


def test_sok_game_matches_crs_extractor():
    a = run_sok_game(HonestReprover, 2, 200, params=P, n=8, seed=5)
    b = run_extraction_game("crs", HonestReprover, 2, 200, params=P, n=8, seed=5)
    assert abs(a.rate - b.rate) < 0.15 and 0.35 <= a.rate <= 0.65


def test_credential_games():
    for runner in (run_revocation_game, run_cred_clone_game):
        r = runner(SurrenderAndCopy, 500, params=P, n=8, seed=6)
        assert r.within()


@pytest.mark.slow
@pytest.mark.parametrize("adversary", games.CREDENTIAL_ADVERSARIES)
def test_cred_clone_every_builtin_adversary(adversary):
    r = run_cred_clone_game(adversary, 10_000, params=P, n=16, seed=12)
    p = adversary.success_bound(16)
    assert r.rate <= p + 3 * (p * (1 - p) / r.trials) ** 0.5


def test_keep_and_forge_small_n():
    r = run_cred_clone_game(games.KeepAndForge, 2000, params=P, n=2, seed=13)
    assert r.bound == pytest.approx(0.25) and r.within()


def test_simext_game():
    r = run_simext_game(50, params=P, seed=7)
    assert r.rate == 1.0


def test_confirm_witness():
    assert games.confirm_witness(P, 32, 5)
    assert not games.confirm_witness(P, 32, 4)
    assert not games.confirm_witness(P, 32, None)


def test_k_up_to_eight():
    hr = run_unclonable_game("crs", HonestReprover, 8, 20, params=P, n=4, seed=8)
    assert hr.rate == 1.0 and hr.counters["predicate_mismatch"] == 0
    cc = run_unclonable_game("rom", ClassicalCopier, 8, 50, params=P, n=8, seed=8)
    assert cc.successes <= 5
