"""
End-to-end tests: bytes through the code, the channel and back
"""

import pytest

from torn_codes.channel.adversary import STRATEGIES, AdversaryStrategy, tear
from torn_codes.channel.trial import TrialConfig, run_trials
from torn_codes.core.params import derive_params
from torn_codes.robust.redundancy import decode_model, encode_model, robust_message_len
from torn_codes.utils.framing import capacity_bytes, frame_message, symbols_to_bytes

RANDOM_KINDS = [s for s in STRATEGIES if s != "scripted"]


def round_trip(data, params, model="none", t=0, seed=0):
    message_len = robust_message_len(params, t, model)
    x, length = frame_message(data, params.q, message_len)
    z = encode_model(x, params, model, t)
    received = tear(z, AdversaryStrategy(seed=seed))
    return symbols_to_bytes(decode_model(received, params, model, t), length)


class TestRoundTrip:
    """Test byte messages through every code family"""

    def test_plain_code(self, cfg_b):
        """Test the noiseless code at full capacity"""
        data = bytes(range(capacity_bytes(2, cfg_b.message_len)))
        assert round_trip(data, cfg_b) == data

    def test_quaternary_code(self):
        """Test a DNA alphabet code"""
        params = derive_params(q=4, n=400, k=1, lmin=30, lmax=40, f=3)
        data = b"ACGT" * (capacity_bytes(4, params.message_len) // 4)
        assert data
        assert round_trip(data, params, seed=5) == data

    def test_multi_strand(self, cfg_a3):
        """Test several strands torn together"""
        data = b"\xa5" * capacity_bytes(2, cfg_a3.message_len)
        for seed in range(5):
            assert round_trip(data, cfg_a3, seed=seed) == data

    def test_robust_codes(self, cfg_b, cfg_d):
        """Test the robust encoders without noise"""
        assert round_trip(b"torn", cfg_b, "substitution", 2) == b"torn"
        assert round_trip(b"torn", cfg_d, "deletion", 2) == b"torn"


def assert_all_succeed(configs):
    failures = [r.seed for r in run_trials(configs) if not r.success]
    assert not failures, f"failing seeds: {failures}"


@pytest.mark.slow
class TestAcceptance:
    """Monte-Carlo runs of every code against every strategy"""

    @pytest.mark.parametrize("kind", RANDOM_KINDS)
    def test_noiseless(self, cfg_a, cfg_a3, kind):
        """Test the plain code on one and three strands"""
        strategy = AdversaryStrategy(kind=kind)
        assert_all_succeed(
            TrialConfig(params=params, strategy=strategy, seed=seed)
            for params in (cfg_a, cfg_a3)
            for seed in range(200)
        )

    @pytest.mark.parametrize("target", ["random", "index", "marker", "payload", "parity"])
    @pytest.mark.parametrize("t", [1, 2])
    def test_substitutions(self, cfg_b, target, t):
        """Test the substitution code at its full budget"""
        strategy = AdversaryStrategy(kind="marker_straddle", target=target)
        assert_all_succeed(
            TrialConfig(params=cfg_b, model="substitution", t=t, strategy=strategy, seed=seed)
            for seed in range(100)
        )

    @pytest.mark.parametrize("mode", ["random", "adjacent"])
    def test_deletions(self, cfg_a, cfg_d, mode):
        """Test the deletion codes at their full budget"""
        strategy = AdversaryStrategy(deletion_mode=mode)
        configs = [
            TrialConfig(params=cfg_a, model="deletion", t=1, strategy=strategy, seed=seed)
            for seed in range(100)
        ]
        configs += [
            TrialConfig(
                params=cfg_d,
                model="deletion",
                t=2,
                bec="interleaved_rs",
                strategy=strategy,
                seed=seed,
            )
            for seed in range(100)
        ]
        assert_all_succeed(configs)
