"""Strategy search: the pinned one-box maximum, witnesses, symmetry soundness."""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

import racbox.search as search_mod
from racbox.search import (
    SearchResult,
    Strategy,
    evaluate_strategy,
    parse_strategy,
    search_rac_with_rbs,
    serialize_strategy,
    strategy_from_parts,
    tree_strategy,
    verify_observation2,
)

F = Fraction


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_tree_strategy_wins_always(n):
    strat = tree_strategy(n)
    assert len(strat.rb_names) == n - 1
    assert evaluate_strategy(strat) == 1


def test_one_box_two_bits_is_perfect():
    result = search_rac_with_rbs(2, 1)
    assert result.max_win_probability == 1
    assert result.complete
    assert evaluate_strategy(result.witness) == 1


def test_one_box_three_bits_maximum_pinned():
    result = search_rac_with_rbs(3, 1)
    assert result.max_win_probability == F(5, 6)
    assert result.complete
    assert result.strategies_examined == 308
    assert result.pruned == 65228


def test_pinned_witness_reverifies_quickly():
    result = search_rac_with_rbs(3, 1)
    t0 = time.monotonic()
    value = evaluate_strategy(result.witness)
    assert time.monotonic() - t0 < 1.0
    assert value == F(5, 6)


def test_two_boxes_restore_perfection_for_three_bits():
    result = search_rac_with_rbs(3, 2)
    assert result.max_win_probability == 1
    assert result.strategies_examined == 1  # the construction witness itself
    assert evaluate_strategy(result.witness) == 1
    assert len(result.witness.rb_names) == 2


def test_padded_construction_for_extra_boxes():
    result = search_rac_with_rbs(2, 3)
    assert result.max_win_probability == 1
    assert len(result.witness.rb_names) == 3
    assert evaluate_strategy(result.witness) == 1


def test_unsupported_scales_are_refused():
    with pytest.raises(ValueError):
        search_rac_with_rbs(5, 1)
    with pytest.raises(ValueError):
        search_rac_with_rbs(4, 2)


def test_budget_cutoff_reports_partial_result():
    result = search_rac_with_rbs(4, 1, budget=0.5)
    assert not result.complete
    assert result.strategies_examined >= 1
    assert result.max_win_probability >= F(1, 2)
    assert any("lower bound" in note for note in result.notes)
    assert evaluate_strategy(result.witness) == result.max_win_probability


def test_search_result_rejects_nonsense_values():
    with pytest.raises(ValueError):
        SearchResult(
            max_win_probability=F(7, 6),
            witness=tree_strategy(2),
            strategies_examined=1,
            pruned=0,
            complete=True,
            elapsed_seconds=0.0,
        )


def test_constant_decoders_score_a_coin_flip():
    # Bob ignores everything and answers 0: wins exactly when the queried
    # bit is 0
    n = 3
    g = [0] * (1 << (n + 1))
    t_const0 = [0] * n
    strat = strategy_from_parts(n, 0, 0, g, t_const0, t_const0)
    assert evaluate_strategy(strat) == F(1, 2)


def test_relay_strategy_scores_the_pinned_maximum():
    # send m = A, decode bit j as f_j(a) xor A xor A' with f_0 = a_0,
    # f_1 = a_1: bits 0 and 1 always right, bit 2 a coin flip
    n = 3
    f0, f1 = 0xAA, 0xCC
    g = []
    for world in range(1 << (n + 1)):
        g.append(world & 1)  # m = A (worlds are 2*a + A)
    # ``predict f_j`` behaviours answer f_j(a) xor A xor eps, so the flip
    # eps must track the relayed A to cancel it
    t0 = [2, 4, 0]  # m = 0: predict f_0, predict f_1, give up with 0
    t1 = [3, 5, 0]  # m = 1: the same with eps = 1
    strat = strategy_from_parts(n, f0, f1, g, t0, t1)
    assert evaluate_strategy(strat) == F(5, 6)


def test_symmetry_reduction_preserves_the_objective():
    # the canonical-class engine and a transformed copy of a pair must
    # agree on the best achievable score
    n = 3
    digits = search_mod._option_digits(n)
    rng = random.Random(99)
    maps = search_mod._domain_maps(n)
    full = (1 << (1 << n)) - 1

    def apply_map(f: int, sigma) -> int:
        out = 0
        for x in range(1 << n):
            if (f >> sigma[x]) & 1:
                out |= 1 << x
        return out

    for _ in range(8):
        f0 = rng.randrange(1 << (1 << n))
        f1 = rng.randrange(1 << (1 << n))
        base, _, _ = search_mod._best_pair_objective(
            search_mod._score_matrix(n, f0, f1, digits)
        )
        sigma = maps[rng.randrange(len(maps))]
        g0, g1 = apply_map(f0, sigma), apply_map(f1, sigma)
        if rng.random() < 0.5:
            g0 ^= full
        if rng.random() < 0.5:
            g1 ^= full
        if rng.random() < 0.5:
            g0, g1 = g1, g0
        moved, _, _ = search_mod._best_pair_objective(
            search_mod._score_matrix(n, g0, g1, digits)
        )
        assert moved == base, (f0, f1, g0, g1)


def test_score_matrix_agrees_with_the_simulator():
    # every (pair, option-pair) cell of the engine's score matrix must match
    # the independent exact simulator on the assembled strategy
    n = 3
    digits = search_mod._option_digits(n)
    rng = random.Random(5)
    worlds = 1 << (n + 1)
    for _ in range(6):
        f0 = rng.randrange(1 << (1 << n))
        f1 = rng.randrange(1 << (1 << n))
        s = search_mod._score_matrix(n, f0, f1, digits)
        for _ in range(4):
            i = rng.randrange(s.shape[1])
            j = rng.randrange(s.shape[1])
            t0 = tuple(int(v) for v in digits[i])
            t1 = tuple(int(v) for v in digits[j])
            g = [int(s[w, i] < s[w, j]) for w in range(worlds)]
            value = evaluate_strategy(strategy_from_parts(n, f0, f1, g, t0, t1))
            engine = int(np.maximum(s[:, i], s[:, j]).sum())
            assert value == F(engine, worlds * n)


def test_relaying_beats_fixed_messages():
    report = verify_observation2(3)
    assert report.passed
    assert report.quantity == F(5, 6)
    assert report.bound == F(3, 4)


def test_relaying_matches_fixed_at_two_bits():
    report = verify_observation2(2)
    assert report.passed
    assert report.quantity == F(1)
    assert report.bound == F(3, 4)


def test_observation_scope():
    with pytest.raises(ValueError):
        verify_observation2(4)


def test_strategy_serialization_round_trip():
    for strat in (tree_strategy(3), search_rac_with_rbs(3, 1).witness):
        text = serialize_strategy(strat)
        again = parse_strategy(text)
        assert again == strat


def test_parse_strategy_rejects_foreign_kind():
    text = serialize_strategy(tree_strategy(2)).replace("rac-with-rbs", "other")
    with pytest.raises(ValueError):
        parse_strategy(text)


def test_strategy_table_names_are_validated():
    strat = tree_strategy(2)
    with pytest.raises(ValueError):
        Strategy(
            n=strat.n,
            rb_names=("zz",),
            alice_encoders=strat.alice_encoders,
            bob_decoders=strat.bob_decoders,
        )
