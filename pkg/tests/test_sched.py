import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import kernel_seeds, random_kernel
from tetris.pauli import make_block, make_kernel
from tetris.sched import BlockScheduler, SchedConfig, schedule, similarity, swap_cost_estimate
from tetris.synth import synthesize_block
from tetris.topology import Mapping, make_grid, make_linear


def test_similarity_identical_leaves():
    a = make_block(["XZZY", "YZZX"])
    assert similarity(a, a) == 1.0


def test_similarity_disjoint_leaves():
    a = make_block(["ZZXI", "ZZYI"])
    b = make_block(["IXZZ", "IYZZ"])
    assert similarity(a, b) == 0.0


def test_similarity_shared_run():
    # leaves Z2..Z5 in both; root sets differ
    a = make_block(["XYZZZZI", "YXZZZZI"])
    b = make_block(["IXZZZZY", "IYZZZZX"])
    assert a.leaf_set == b.leaf_set == {2, 3, 4, 5}
    assert similarity(a, b) == 1.0


def test_similarity_partial_and_operator_sensitive():
    a = make_block(["XZZZ", "YZZZ"])  # leaves Z1 Z2 Z3
    b = make_block(["XZXZ", "YZXZ"])  # leaves Z1 X2 Z3
    assert similarity(a, b) == pytest.approx(2 / 4)


def test_similarity_empty_leaf_sets():
    assert similarity(make_block(["ZZ"]), make_block(["XX"])) == 0.0


def test_single_block():
    assert schedule(make_kernel([["XX"]])) == [0]


def test_first_block_has_max_active_length():
    k = make_kernel([["ZZII"], ["ZZZI"], ["ZZZZ"], ["IZZZ"]])
    assert schedule(k)[0] == 2


def test_lookahead_must_be_positive():
    with pytest.raises(ValueError):
        SchedConfig(lookahead_k=0)


def test_cheaper_root_cluster_goes_first():
    g = make_linear(7)
    m = Mapping.initial(g, 7)
    # block 0 opens the schedule; B (roots 0 and 3) precedes A (roots 2 and 3) in input order
    k = make_kernel([["ZZZZZZZ"], ["ZIIZIII"], ["IIZZIII"]])
    first, b, a = k.blocks
    assert similarity(first, a) == similarity(first, b) == 0.0
    assert swap_cost_estimate(g, m, a) == synthesize_block(g, m, a).swaps == 0
    assert swap_cost_estimate(g, m, b) == synthesize_block(g, m, b).swaps == 2
    assert schedule(k, SchedConfig(10), g, m) == [0, 2, 1]
    assert schedule(k, SchedConfig(10)) == [0, 1, 2]


@settings(max_examples=50)
@given(kernel_seeds, st.integers(1, 4))
def test_schedule_is_a_permutation(seed, k):
    kern = random_kernel(seed, max_blocks=6)
    order = schedule(kern, SchedConfig(k))
    assert sorted(order) == list(range(len(kern.blocks)))
    assert order == schedule(kern, SchedConfig(k))


@settings(max_examples=50)
@given(kernel_seeds)
def test_k1_is_greedy_similarity(seed):
    kern = random_kernel(seed, max_blocks=6)
    order = schedule(kern, SchedConfig(1))
    rest = [i for i in range(len(kern.blocks)) if i != order[0]]
    for prev, nxt in zip(order, order[1:]):
        sims = {i: similarity(kern.blocks[prev], kern.blocks[i]) for i in rest}
        best = max(sims.values())
        assert nxt == min(i for i in rest if sims[i] == best)
        rest.remove(nxt)


@settings(max_examples=40)
@given(kernel_seeds)
def test_full_lookahead_takes_global_min_cost(seed):
    kern = random_kernel(seed, max_blocks=6)
    g = make_grid(3, 3)
    m = Mapping.initial(g, kern.n_qubits)
    cost = lambda b: swap_cost_estimate(g, m, b)  # noqa: E731
    s = BlockScheduler(kern.blocks, SchedConfig(len(kern.blocks)))
    s.next(cost)
    while s:
        prev = kern.blocks[s.last]
        pending = list(s.remaining)
        sims = {i: similarity(prev, kern.blocks[i]) for i in pending}
        top = max(sims.values())
        pick = s.next(cost)
        assert cost(kern.blocks[pick]) == min(cost(kern.blocks[i]) for i in pending)
        assert cost(kern.blocks[pick]) <= min(cost(kern.blocks[i]) for i in pending if sims[i] == top)
