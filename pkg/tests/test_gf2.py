import numpy as np
import pytest

import xorcodes as xc
from xorcodes.gf2 import pack_columns, rank_batch


def span_size(mat: np.ndarray) -> int:
    """Independent rank check: count distinct XOR combinations of the rows."""
    seen = {bytes(mat.shape[1])}
    for bits in range(1, 2 ** mat.shape[0]):
        v = np.zeros(mat.shape[1], dtype=np.uint8)
        for i in range(mat.shape[0]):
            if bits >> i & 1:
                v ^= mat[i]
        seen.add(v.tobytes())
    return len(seen)


class TestBinaryMatrix:
    def test_basic_properties(self):
        M = xc.BinaryMatrix([[1, 0, 1], [0, 1, 1]])
        assert M.shape == (2, 3)
        assert M.rows == 2 and M.cols == 3
        assert M.array.dtype == np.uint8

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError, match="0 or 1"):
            xc.BinaryMatrix([[0, 2], [1, 0]])

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError, match="2-d"):
            xc.BinaryMatrix([1, 0, 1])
        with pytest.raises(ValueError):
            xc.BinaryMatrix(np.zeros((0, 3), dtype=np.uint8))

    def test_array_is_readonly(self):
        M = xc.BinaryMatrix([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            M.array[0, 0] = 0

    def test_to_array_returns_copy(self):
        M = xc.BinaryMatrix([[1, 0], [0, 1]])
        a = M.to_array()
        a[0, 0] = 0
        assert M.array[0, 0] == 1

    def test_constructor_copies_input(self):
        src = np.array([[1, 0], [0, 1]], dtype=np.uint8)
        M = xc.BinaryMatrix(src)
        src[0, 0] = 0
        assert M.array[0, 0] == 1

    def test_identity_and_zeros(self):
        assert (xc.BinaryMatrix.identity(3).array == np.eye(3, dtype=np.uint8)).all()
        assert xc.BinaryMatrix.zeros(2, 4).array.sum() == 0

    def test_equality_and_hash(self):
        a = xc.BinaryMatrix([[1, 0], [0, 1]])
        b = xc.BinaryMatrix.identity(2)
        assert a == b
        assert hash(a) == hash(b)
        assert a != xc.BinaryMatrix.zeros(2, 2)
        assert a != "not a matrix"


class TestRank:
    def test_identity(self):
        assert xc.rank(xc.BinaryMatrix.identity(7)) == 7

    def test_zeros(self):
        assert xc.rank(xc.BinaryMatrix.zeros(3, 5)) == 0

    def test_duplicate_rows(self):
        assert xc.rank(xc.BinaryMatrix([[1, 1, 0], [1, 1, 0]])) == 1

    def test_xor_dependency(self):
        # third row is the XOR of the first two
        M = xc.BinaryMatrix([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
        assert xc.rank(M) == 2

    def test_golden_matrix(self, g135):
        assert xc.rank(g135) == 5
        assert xc.rank(xc.select_columns(g135, range(5))) == 5

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_span_count(self, seed):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(1, 7))
        c = int(rng.integers(1, 9))
        M = xc.random_matrix(r, c, rng)
        assert 2 ** xc.rank(M) == span_size(M.to_array())

    def test_wide_matrix(self):
        # 80 columns forces multi-word packed rows
        rng = np.random.default_rng(5)
        M = xc.random_matrix(4, 80, rng)
        assert 2 ** xc.rank(M) == span_size(M.to_array())


class TestIsNonsingular:
    def test_identity(self):
        assert xc.is_nonsingular(xc.BinaryMatrix.identity(4))

    def test_singular(self):
        assert not xc.is_nonsingular(xc.BinaryMatrix([[1, 1], [1, 1]]))

    def test_requires_square(self):
        with pytest.raises(ValueError, match="not square"):
            xc.is_nonsingular(xc.BinaryMatrix.zeros(2, 3))


class TestSelectColumns:
    def test_picks_columns(self, g135):
        sub = xc.select_columns(g135, [0, 5, 12])
        assert sub.shape == (5, 3)
        assert (sub.array[:, 1] == 1).all()

    def test_rejects_unsorted(self, g135):
        with pytest.raises(ValueError, match="strictly increasing"):
            xc.select_columns(g135, [3, 1])
        with pytest.raises(ValueError, match="strictly increasing"):
            xc.select_columns(g135, [2, 2])

    def test_rejects_out_of_range(self, g135):
        with pytest.raises(ValueError, match="out of range"):
            xc.select_columns(g135, [0, 13])

    def test_rejects_empty(self, g135):
        with pytest.raises(ValueError, match="at least one"):
            xc.select_columns(g135, [])


class TestRandomMatrix:
    def test_shape_and_values(self):
        M = xc.random_matrix(4, 9, np.random.default_rng(0))
        assert M.shape == (4, 9)
        assert set(np.unique(M.array)) <= {0, 1}

    def test_deterministic(self):
        a = xc.random_matrix(5, 8, np.random.default_rng(123))
        b = xc.random_matrix(5, 8, np.random.default_rng(123))
        assert a == b

    def test_roughly_balanced(self):
        M = xc.random_matrix(40, 40, np.random.default_rng(1))
        density = M.array.mean()
        assert 0.4 < density < 0.6

    def test_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            xc.random_matrix(0, 3, np.random.default_rng(0))


class TestEncode:
    def test_golden_codeword(self, g135):
        got = xc.encode((1, 1, 0, 0, 0), g135)
        assert got.tolist() == [1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 1]

    def test_zero_message(self, g135):
        assert xc.encode([0] * 5, g135).sum() == 0

    def test_single_row(self, g135):
        got = xc.encode([0, 0, 1, 0, 0], g135)
        assert (got == g135.array[2]).all()

    def test_length_mismatch(self, g135):
        with pytest.raises(ValueError, match="length mismatch"):
            xc.encode([1, 0], g135)

    def test_rejects_non_bits(self, g135):
        with pytest.raises(ValueError):
            xc.encode([1, 0, 2, 0, 0], g135)


class TestRankBatch:
    @pytest.mark.parametrize("k,n", [(3, 6), (5, 13), (8, 8)])
    def test_matches_scalar_rank(self, k, n):
        rng = np.random.default_rng(k * 100 + n)
        mats = [xc.random_matrix(k, n, rng) for _ in range(50)]
        batch = np.stack([m.packed_columns() for m in mats])
        got = rank_batch(batch, k)
        want = [xc.rank(m) for m in mats]
        assert got.tolist() == want

    @pytest.mark.parametrize("k", [63, 64, 65, 100, 128, 129])
    def test_multiword_rows(self, k):
        # row counts straddling the 64-bit word boundaries
        rng = np.random.default_rng(k)
        mats = [xc.random_matrix(k, k + 4, rng) for _ in range(6)]
        batch = np.stack([m.packed_columns() for m in mats])
        got = rank_batch(batch, k)
        want = [xc.rank(m) for m in mats]
        assert got.tolist() == want

    def test_zero_column_padding_is_inert(self):
        rng = np.random.default_rng(9)
        M = xc.random_matrix(6, 9, rng)
        packed = M.packed_columns()
        padded = np.concatenate([packed, np.zeros((3, packed.shape[1]), dtype=np.uint64)])
        assert rank_batch(padded[None], 6)[0] == xc.rank(M)

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError, match="limbs"):
            rank_batch(np.zeros((4, 5), dtype=np.uint64), 3)

    def test_pack_columns_layout(self):
        a = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.uint8)
        packed = pack_columns(a)
        assert packed.shape == (2, 1)
        assert packed[0, 0] == 0b101  # rows 0 and 2 set in column 0
        assert packed[1, 0] == 0b110


class TestMatrixText:
    def test_format_golden(self, g135):
        text = xc.format_matrix(g135)
        lines = text.splitlines()
        assert lines[0] == "5 13"
        assert lines[1] == "1110010000101"
        assert text.endswith("\n")

    @pytest.mark.parametrize("seed", range(5))
    def test_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        M = xc.random_matrix(int(rng.integers(1, 9)), int(rng.integers(1, 20)), rng)
        assert xc.parse_matrix(xc.format_matrix(M)) == M

    def test_parse_golden_file(self, g135):
        assert g135.shape == (5, 13)

    @pytest.mark.parametrize("text,lineno", [
        ("", 1),
        ("5\n", 1),
        ("a b\n", 1),
        ("0 3\n", 1),
        ("2 3\n101\n10\n", 3),
        ("2 3\n101\n012\n", 3),
        ("2 3\n101\n110\n111\n", 4),
        ("2 3\n101\n", 3),
    ])
    def test_parse_errors_name_line(self, text, lineno):
        with pytest.raises(ValueError, match=f"line {lineno}"):
            xc.parse_matrix(text)
