"""
Unit tests for the noiseless torn-paper codec
"""

import pytest

from torn_codes.coding.codec import (
    Codeword,
    Decoder,
    Discard,
    Placement,
    Region,
    code_redundancy,
    decode,
    encode,
    layout,
    locate,
)
from torn_codes.core.exceptions import CorruptionError, DecodingError, ParameterError
from torn_codes.core.params import derive_params
from torn_codes.core.sequences import (
    QString,
    SegmentCollection,
    complete_marker_offsets,
    count_segmentations,
    cut,
    exact_segmentation,
    exact_segmentation_multi,
    iter_cut_patterns,
)


def random_pattern(rng, length, lmin, lmax):
    """Uniformly drawn piece lengths forming an (lmin, lmax)-segmentation"""
    pieces = []
    remaining = length
    while remaining > lmax:
        size = int(rng.integers(lmin, min(lmax, remaining - 1) + 1))
        pieces.append(size)
        remaining -= size
    pieces.append(remaining)
    return pieces


def random_tearing(rng, codeword: Codeword) -> SegmentCollection:
    params = codeword.params
    pieces = []
    for strand in codeword.strands:
        pieces += cut(strand, random_pattern(rng, len(strand), params.lmin, params.lmax))
    return SegmentCollection.of(pieces)


class TestEncode:
    """Test the codeword layout"""

    def test_all_zero_message(self, cfg_a):
        """Test the first period of the all-zero message"""
        z = encode(QString.zeros(14), cfg_a).strands[0]
        assert len(z) == 124
        assert z[:15].to_text() == "100100" + "10001" + "1001"
        assert z[-8:].to_text() == "00000000"

    def test_layout_census(self, cfg_a):
        """Test region sizes"""
        roles = [region for region, _ in layout(cfg_a)]
        assert len(roles) == 124
        assert roles.count(Region.INDEX) == 8 * 6
        assert roles.count(Region.MARKER) == 8 * 5
        assert roles.count(Region.PAYLOAD) == 7 * 4
        assert roles.count(Region.TERMINAL) == 8

    def test_marker_census(self, cfg_a, random_message):
        """Test that markers appear exactly once per period"""
        for _ in range(20):
            z = encode(random_message(14), cfg_a).strands[0]
            assert len(complete_marker_offsets(z.symbols, 3)) == cfg_a.num_blocks + 1

    def test_redundancy(self, cfg_a):
        """Test the redundancy of the reference configuration"""
        assert code_redundancy(cfg_a) == 110

    def test_wrong_message_length(self, cfg_a):
        """Test message length validation"""
        with pytest.raises(ParameterError):
            encode(QString.zeros(13), cfg_a)

    def test_wrong_alphabet(self, cfg_a):
        """Test message alphabet validation"""
        with pytest.raises(ParameterError):
            encode(QString.zeros(14, q=4), cfg_a)


class TestLocate:
    """Test segment placement"""

    def test_every_window(self, codeword_a, cfg_a):
        """Test that every Lmin-window holding payload is placed at its offset"""
        z = codeword_a.strands[0]
        roles = layout(cfg_a)
        for g in range(len(z) - cfg_a.lmin + 1):
            result = locate(z[g : g + cfg_a.lmin], cfg_a)
            holds_payload = any(
                roles[p][0] is Region.PAYLOAD for p in range(g, g + cfg_a.lmin)
            )
            if holds_payload:
                assert isinstance(result, Placement)
            if isinstance(result, Placement):
                assert result.global_offset == g
            else:
                assert not holds_payload

    def test_short_segment_discarded(self, codeword_a):
        """Test segments shorter than Lmin"""
        result = locate(codeword_a.strands[0][:14], codeword_a.params)
        assert isinstance(result, Discard)

    def test_terminal_segment_discarded(self, codeword_a):
        """Test segments inside the last period"""
        result = locate(codeword_a.strands[0][-15:], codeword_a.params)
        assert isinstance(result, Discard)
        assert "terminal" in result.reason

    def test_segment_without_marker(self, cfg_a):
        """Test that a segment with no marker cannot be located"""
        with pytest.raises(CorruptionError):
            locate(QString.ones(15), cfg_a)


class TestDecode:
    """Test noiseless decoding"""

    def test_exact_segmentations(self, cfg_a, random_message):
        """Test all-Lmin and all-Lmax tearing"""
        x = random_message(14)
        z = encode(x, cfg_a).strands[0]
        assert decode(exact_segmentation(z, 15), cfg_a) == x
        assert decode(exact_segmentation(z, 20), cfg_a) == x

    def test_random_segmentations(self, cfg_a, random_message, rng):
        """Test random tearing of random messages"""
        decoder = Decoder(cfg_a)
        for _ in range(200):
            x = random_message(14)
            assert decoder.decode(random_tearing(rng, encode(x, cfg_a))) == x

    def test_missing_segment(self, codeword_a, cfg_a):
        """Test that an uncovered payload block is reported"""
        pieces = list(exact_segmentation(codeword_a.strands[0], 15))
        z = codeword_a.strands[0]
        pieces.remove(z[15:30])
        with pytest.raises(DecodingError, match="not fully covered"):
            decode(SegmentCollection.of(pieces), cfg_a)

    def test_multi_strand(self, cfg_a3, random_message, rng):
        """Test codes spread over three strands"""
        for _ in range(30):
            x = random_message(cfg_a3.message_len)
            codeword = encode(x, cfg_a3)
            assert len(codeword.strands) == 3
            assert decode(random_tearing(rng, codeword), cfg_a3) == x
        assert decode(exact_segmentation_multi(codeword.strands, 17), cfg_a3) == x

    def test_quaternary(self, random_message, rng):
        """Test a code over the alphabet of size 4"""
        params = derive_params(4, 124, 1, 15, 20, 3)
        assert (params.index_len, params.alpha, params.block_len) == (2, 5, 5)
        for _ in range(50):
            x = random_message(params.message_len, q=4)
            assert decode(random_tearing(rng, encode(x, params)), params) == x

    def test_sequence_replacement(self, random_message, rng):
        """Test the ranking RLL scheme end to end"""
        params = derive_params(2, 289, 1, 31, 45, 3, rll="sequence_replacement")
        for _ in range(30):
            x = random_message(params.message_len)
            assert decode(random_tearing(rng, encode(x, params)), params) == x

    @pytest.mark.slow
    def test_whole_spectrum(self, cfg_a, random_message):
        """Test every cut pattern of a few messages"""
        assert count_segmentations(124, 15, 20) > 0
        for _ in range(3):
            x = random_message(14)
            z = encode(x, cfg_a).strands[0]
            decoder = Decoder(cfg_a)
            for pattern in iter_cut_patterns(124, 15, 20):
                assert decoder.decode(SegmentCollection.of(cut(z, pattern))) == x
