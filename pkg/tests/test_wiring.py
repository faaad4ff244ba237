"""Concatenation trees: costs, exact decoding, noisy winning probabilities."""

import math
from fractions import Fraction

import pytest

from racbox.wiring import (
    Leaf,
    MalformedTreeError,
    RBNode,
    add,
    bound_table,
    check_tree_lemma,
    compile_rac,
    concatenate,
    format_bound_table,
    internal_count,
    leaf_count,
    leaf_paths,
    path_success,
    to_dot,
    tree_win_probability_exact,
    tree_wins_always,
    winning_probability,
    winning_probability_oracle,
)

F = Fraction
QUANTUM = (2 + math.sqrt(2)) / 4


def test_concatenate_shapes():
    assert leaf_count(concatenate(0)) == 1
    t = concatenate(2)
    assert leaf_count(t) == 4
    assert internal_count(t) == 3
    with pytest.raises(ValueError):
        concatenate(-1)


def test_node_reuse_is_rejected():
    shared = Leaf()
    tree = RBNode(shared, shared)
    with pytest.raises(MalformedTreeError, match="twice"):
        check_tree_lemma(tree)


def test_fresh_equal_subtrees_are_fine():
    tree = RBNode(Leaf(), Leaf())
    assert check_tree_lemma(tree).passed


@pytest.mark.parametrize("n", range(2, 17))
def test_compiled_cost_is_n_minus_1_boxes(n):
    tree, cost = compile_rac(n)
    assert cost.rb_count == n - 1
    assert cost.message_bits == 1
    assert cost.rb_count == internal_count(tree)
    assert leaf_count(tree) == n
    assert cost.concatenation_uses == bin(n).count("1")
    assert cost.addition_uses == bin(n).count("1") - 1


@pytest.mark.parametrize("n", range(2, 17))
def test_tree_lemma_on_compiled_trees(n):
    tree, _ = compile_rac(n)
    report = check_tree_lemma(tree)
    assert report.passed
    assert report.quantity == F(n)
    assert report.bound == F(n)  # leaves == internals + 1 exactly


@pytest.mark.parametrize("n", range(2, 11))
def test_compiled_tree_decodes_perfectly(n):
    tree, _ = compile_rac(n)
    assert tree_wins_always(tree)
    assert tree_win_probability_exact(tree) == 1


def test_leaf_paths_cover_all_positions():
    tree, _ = compile_rac(6)
    paths = leaf_paths(tree)
    assert len(paths) == 6
    assert len(set(paths)) == 6


def test_path_success_recursion_values():
    assert path_success(1, F(3, 4)) == F(3, 4)
    assert path_success(2, F(3, 4)) == F(5, 8)
    assert path_success(3, F(3, 4)) == F(9, 16)
    # length 0 means the answer is already in hand
    assert path_success(0, F(3, 4)) == 1


def test_win_probability_frozen_values():
    tree2, _ = compile_rac(2)
    assert winning_probability(tree2, F(3, 4)) == F(3, 4)
    assert abs(winning_probability(tree2, QUANTUM) - 0.8535533905932737) < 1e-12

    tree3, _ = compile_rac(3)
    assert winning_probability(tree3, F(3, 5)) == F(41, 75)
    assert abs(winning_probability(tree3, QUANTUM) - 0.7845177968644247) < 1e-12

    tree5, _ = compile_rac(5)
    assert winning_probability(tree5, F(3, 4)) == F(3, 5)

    tree7, _ = compile_rac(7)
    assert winning_probability(tree7, F(3, 4)) == F(4, 7)
    assert abs(winning_probability(tree7, QUANTUM) - 0.687237167397117) < 1e-12

    # a perfect depth-3 tree serves 8 bits at the pure path value
    tree8, _ = compile_rac(8)
    assert abs(path_success(3, QUANTUM) - 0.6767766952966369) < 1e-12
    assert abs(winning_probability(tree8, QUANTUM) - 0.6767766952966369) < 1e-12


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("p2", [0.6, 0.75, QUANTUM])
def test_recursion_matches_flip_pattern_oracle(n, p2):
    tree, _ = compile_rac(n)
    fast = winning_probability(tree, p2)
    slow = winning_probability_oracle(tree, p2)
    assert abs(fast - slow) < 1e-12


def test_recursion_matches_oracle_exactly_on_rationals():
    tree, _ = compile_rac(5)
    p2 = F(2, 3)
    assert winning_probability(tree, p2) == winning_probability_oracle(tree, p2)


def test_fair_box_gives_fair_coin():
    tree, _ = compile_rac(4)
    assert winning_probability(tree, F(1, 2)) == F(1, 2)


def test_bound_table_rows():
    rows = bound_table([2, 7], [0.75, QUANTUM])
    assert rows[0].n == 2 and rows[0].rb_count == 1
    assert rows[1].n == 7 and rows[1].rb_count == 6
    assert abs(float(rows[1].values[1]) - 0.687237167397117) < 1e-12
    text = format_bound_table(rows, ["p2=0.75", "p2=quantum"])
    assert "0.687237" in text


def test_to_dot_mentions_every_leaf():
    tree, _ = compile_rac(3)
    dot = to_dot(tree)
    assert dot.startswith("digraph")
    for i in range(3):
        assert f'label="x{i}"' in dot
    assert dot.count('label="RB"') == 2
