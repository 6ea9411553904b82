import pytest
from hypothesis import given

from helpers import kernel_seeds, random_kernel
from tetris.pauli import (
    IRParseError,
    Kernel,
    PauliString,
    active_length,
    build_tetris_ir,
    format_kernel,
    make_block,
    parse_kernel,
)


def test_single_line_kernel():
    k = parse_kernel("XXYZI\n")
    assert k.n_qubits == 5
    assert len(k.blocks) == 1
    assert [s.ops for s in k.blocks[0].strings] == ["XXYZI"]


def test_two_strings_one_block():
    k = parse_kernel("YZZZY\nXZZZX\n")
    assert len(k.blocks) == 1
    assert [len(s) for s in k.blocks[0].strings] == [5, 5]


def test_blocks_split_on_blank_line_and_comments():
    text = "# header\nXX ; w=0.5\nYY # trailing\n\nZZ\n"
    k = parse_kernel(text)
    assert [[s.ops for s in b.strings] for b in k.blocks] == [["XX", "YY"], ["ZZ"]]
    assert k.blocks[0].strings[0].coefficient == 0.5
    assert {s.angle_ref for s in k.blocks[0].strings} == {"t0"}
    assert k.blocks[1].strings[0].angle_ref == "t1"


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("XQZ\n", 1, "invalid operator 'Q'"),
        ("XX\nXXX\n", 2, "length"),
        ("XX\n\n\nZZ\n", 3, "empty block"),
        ("XX ; q=1\n", 1, "w=<float>"),
        ("XX ; w=abc\n", 1, "bad weight"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(IRParseError) as exc:
        parse_kernel(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_empty_file_is_an_error():
    with pytest.raises(IRParseError, match="empty kernel"):
        parse_kernel("# nothing\n\n")


def test_bad_operator_in_constructor():
    with pytest.raises(ValueError):
        PauliString("XA")


def test_kernel_rejects_mixed_lengths():
    b1, b2 = make_block(["XX"]), make_block(["XXX"])
    with pytest.raises(ValueError):
        Kernel(2, (b1, b2))


@pytest.mark.parametrize(
    "words, leaf, root",
    [
        (["YZZZY", "XZZZX"], {1, 2, 3}, {0, 4}),
        (["XYZZZ", "YXZZZ", "XYZZZ"], {2, 3, 4}, {0, 1}),
        (["ZZIII", "ZZIII"], {0, 1}, set()),
        (["XXYZI"], set(), {0, 1, 2, 3}),
    ],
)
def test_leaf_and_root_sets(words, leaf, root):
    b = make_block(words)
    assert b.leaf_set == leaf
    assert b.root_set == root


def test_active_length():
    assert active_length(make_block(["XYZZZ", "YXZZZ", "XYZZZ"])) == 5
    assert active_length(make_block(["XX", "YY"])) == 2
    assert active_length(make_block(["IIIII"])) == 0


@given(kernel_seeds)
def test_ir_partitions_qubits(seed):
    k = random_kernel(seed)
    for b in k.blocks:
        idle = {i for i in range(k.n_qubits) if all(s.ops[i] == "I" for s in b.strings)}
        assert not (b.leaf_set & b.root_set)
        assert b.leaf_set | b.root_set | idle == set(range(k.n_qubits))
        assert not (idle & (b.leaf_set | b.root_set))
        words = {"".join(s.ops[i] for i in sorted(b.leaf_set)) for s in b.strings}
        assert len(words) == 1


@given(kernel_seeds)
def test_ir_rebuild_is_idempotent(seed):
    k = random_kernel(seed)
    assert build_tetris_ir(k) == k
    assert build_tetris_ir(build_tetris_ir(k)) == build_tetris_ir(k)


@given(kernel_seeds)
def test_format_parse_round_trip(seed):
    k = random_kernel(seed)
    assert parse_kernel(format_kernel(k)) == k


def test_round_trip_keeps_weights():
    text = "XZ ; w=-0.25\nYZ\n\nZZ ; w=2.0\n"
    k = parse_kernel(text)
    assert parse_kernel(format_kernel(k)) == k
