"""
Unit tests for the segment-deletion-robust codec
"""

import pytest

from torn_codes.channel.adversary import AdversaryStrategy, delete_pieces, tear_pieces
from torn_codes.core.exceptions import ParameterError
from torn_codes.core.sequences import SegmentCollection
from torn_codes.robust.deletion import (
    DeletionCode,
    decode_with_bursts,
    erasure_bursts,
    hat_lmax,
    payload_burst_bound,
    robust_decode_del,
    robust_encode_del,
    stuff,
    unstuff,
)


class TestHelpers:
    """Test stuffing and burst bookkeeping"""

    def test_stuff_round_trip(self):
        """Test that unstuffing inverts stuffing"""
        data = (0, 0, 0, 0, 1, 0)
        stuffed = stuff(data, 3)
        assert stuffed == (1, 0, 0, 1, 0, 0, 1, 1, 0)
        assert unstuff(stuffed, 3) == list(data)

    def test_erasure_bursts(self):
        """Test maximal erasure runs"""
        assert erasure_bursts([0, None, None, 1, None]) == [(1, 2), (4, 1)]
        assert erasure_bursts([0, 1]) == []

    def test_burst_bounds(self, cfg_a):
        """Test payload burst bounds of the reference configuration"""
        assert payload_burst_bound(cfg_a) == 8
        assert hat_lmax(cfg_a) == 20 - 2 * 11


class TestDeletionCode:
    """Test the redundancy fit"""

    def test_reference_fit(self, cfg_a):
        """Test the single-deletion layout of the reference configuration"""
        code = DeletionCode(cfg_a, 1)
        assert code.depth == 8
        assert code.rho == 3
        assert code.data_blocks == 4
        assert code.message_len == 8
        assert code.bec.kind == "interleaved_parity"
        summary = code.summary()
        assert summary["rho"] == 3
        assert summary["stuffed_len"] == 12

    def test_no_deletions(self, cfg_a):
        """Test that t=0 adds nothing"""
        code = DeletionCode(cfg_a, 0)
        assert code.rho == 0
        assert code.bec is None
        assert code.message_len == cfg_a.message_len

    def test_infeasible(self, cfg_a):
        """Test that two deletions do not fit seven blocks of length 4"""
        with pytest.raises(ParameterError, match="kK - rho >= 1"):
            DeletionCode(cfg_a, 2)

    def test_wrong_message_length(self, cfg_a, random_message):
        """Test message length validation"""
        with pytest.raises(ParameterError):
            robust_encode_del(random_message(14), cfg_a, 1)


class TestRobustDecoding:
    """Test decoding with missing segments"""

    def test_every_single_deletion(self, cfg_a, random_message):
        """Test dropping each piece of an all-Lmin tearing"""
        for _ in range(10):
            x = random_message(8)
            z = robust_encode_del(x, cfg_a, 1)
            torn = tear_pieces(z, AdversaryStrategy(kind="all_lmin", seed=1))
            for dropped in range(len(torn.pieces)):
                kept = [p.segment for i, p in enumerate(torn.pieces) if i != dropped]
                outcome = decode_with_bursts(SegmentCollection.of(kept), cfg_a, 1)
                assert outcome.message == x
                assert len(outcome.bursts) <= 1

    def test_random_single_deletion(self, cfg_a, random_message):
        """Test random tearing followed by one random deletion"""
        for seed in range(100):
            x = random_message(8)
            z = robust_encode_del(x, cfg_a, 1)
            torn, removed = delete_pieces(tear_pieces(z, AdversaryStrategy(seed=seed)), 1, seed)
            assert len(removed) == 1
            assert robust_decode_del(torn.segments, cfg_a, 1) == x

    @pytest.mark.parametrize("mode", ["random", "adjacent"])
    def test_two_deletions(self, cfg_d, random_message, mode):
        """Test two deleted segments with an interleaved Reed-Solomon code"""
        code = DeletionCode(cfg_d, 2)
        assert code.bec.kind == "interleaved_rs"
        for seed in range(20):
            x = random_message(code.message_len)
            z = robust_encode_del(x, cfg_d, 2)
            torn, _ = delete_pieces(tear_pieces(z, AdversaryStrategy(seed=seed)), 2, seed, mode)
            assert robust_decode_del(torn.segments, cfg_d, 2) == x

    def test_no_deletion_budget(self, cfg_a, random_message):
        """Test that t=0 decodes like the noiseless code"""
        x = random_message(14)
        z = robust_encode_del(x, cfg_a, 0)
        torn = tear_pieces(z, AdversaryStrategy(seed=3))
        assert robust_decode_del(torn.segments, cfg_a, 0) == x
