"""
Unit tests for Gray-code segment indices
"""

import pytest

from torn_codes.coding.indexing import (
    build_encoded_index,
    data_positions,
    decode_index_word,
    gray_rank,
    gray_sequence,
    gray_unrank,
    has_valid_parity,
    strip_padding,
)
from torn_codes.core.exceptions import CorruptionError, ParameterError
from torn_codes.core.sequences import QString, hamming_distance


class TestGray:
    """Test the reflected q-ary Gray code"""

    @pytest.mark.parametrize("q, length", [(2, 4), (3, 3), (4, 2)])
    def test_rank_inverts_unrank(self, q, length):
        """Test that ranking inverts unranking"""
        for i in range(q**length):
            assert gray_rank(gray_unrank(i, length, q)) == i

    @pytest.mark.parametrize("q, length", [(2, 4), (3, 3), (4, 2)])
    def test_consecutive_words_differ_once(self, q, length):
        """Test the Gray property along the whole sequence"""
        words = list(gray_sequence(length, q))
        assert len(set(words)) == q**length
        assert words[0] == QString.zeros(length, q)
        for current, following in zip(words, words[1:]):
            assert hamming_distance(current, following) == 1

    def test_rank_out_of_range(self):
        """Test unranking outside [0, q^I)"""
        with pytest.raises(ParameterError):
            gray_unrank(8, 3, 2)


class TestEncodedIndex:
    """Test padded parity-extended indices"""

    def test_reference_words(self, cfg_a):
        """Test the first two encoded indices of the reference configuration"""
        assert build_encoded_index(0, cfg_a).padded.to_text() == "100100"
        assert build_encoded_index(1, cfg_a).padded.to_text() == "100111"

    def test_all_indices_valid(self, cfg_a):
        """Test parity and padding of every assigned index"""
        for i in range(cfg_a.num_ranks):
            word = build_encoded_index(i, cfg_a).padded
            assert len(word) == cfg_a.alpha
            assert has_valid_parity(word.symbols, cfg_a)
            assert decode_index_word(word, cfg_a) == i

    def test_data_positions(self):
        """Test the positions carrying Gray and parity symbols"""
        assert data_positions(6, 3) == (1, 2, 4, 5)
        assert data_positions(8, 3) == (1, 2, 4, 5, 7)

    @pytest.mark.parametrize("fixture", ["cfg_a", "cfg_b"])
    def test_mixed_words(self, fixture, request):
        """Test words made of the head of index i+1 and the tail of index i"""
        params = request.getfixturevalue(fixture)
        for i in range(params.num_blocks):
            current = build_encoded_index(i, params).padded.symbols
            following = build_encoded_index(i + 1, params).padded.symbols
            for split in range(1, params.alpha):
                word = QString(following[:split] + current[split:], params.q)
                assert decode_index_word(word, params) == i

    def test_broken_padding(self, cfg_a):
        """Test that a zero at a padded position is detected"""
        assert not has_valid_parity((0, 0, 0, 1, 0, 0), cfg_a)
        with pytest.raises(CorruptionError):
            strip_padding((0, 0, 0, 1, 0, 0), cfg_a)

    def test_wrong_length(self, cfg_a):
        """Test index words of the wrong length"""
        with pytest.raises(ParameterError):
            strip_padding((1, 0, 0), cfg_a)
