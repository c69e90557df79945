"""
Unit tests for de Bruijn pilots and pilot-interleaved codes
"""

import math

import pytest

from torn_codes.core.exceptions import (
    CorruptionError,
    ParameterError,
    ResourceLimitError,
    SamplingError,
)
from torn_codes.core.sequences import QString
from torn_codes.pilot.code import (
    OpSampler,
    PilotCode,
    PilotConfig,
    deinterleave,
    perp,
    pilot_interleave,
    pilot_locate,
    sample_Op,
    window_keys,
)
from torn_codes.pilot.debruijn import de_bruijn


@pytest.fixture
def pilot_code() -> PilotCode:
    return PilotCode(PilotConfig(q=2, n=256, pilot_m=4, s=13))


class TestDeBruijn:
    """Test de Bruijn generators"""

    @pytest.mark.parametrize("method", ["lyndon", "prefer_high"])
    @pytest.mark.parametrize("q, s", [(2, 3), (2, 6), (3, 3), (4, 2)])
    def test_every_window_once(self, method, q, s):
        """Test that every s-word appears exactly once cyclically"""
        sequence = de_bruijn(q, s, method)
        assert len(sequence) == q**s
        wrapped = sequence.symbols + sequence.symbols[: s - 1]
        windows = window_keys(wrapped, s, q)
        assert len(set(windows)) == q**s

    def test_known_sequences(self):
        """Test the binary order-3 sequences"""
        assert de_bruijn(2, 3, "lyndon").to_text() == "00010111"
        assert de_bruijn(2, 3, "prefer_high").to_text() == "00011101"

    def test_budget(self):
        """Test the length budget"""
        with pytest.raises(ResourceLimitError):
            de_bruijn(2, 30)

    def test_unknown_method(self):
        """Test generator names"""
        with pytest.raises(ParameterError):
            de_bruijn(2, 3, "unknown")


class TestPilotConfig:
    """Test interleaving parameters"""

    def test_sizes(self):
        """Test derived sizes"""
        config = PilotConfig(q=2, n=256, pilot_m=4, s=13)
        assert config.stream_len == 64
        assert config.min_segment == 52
        assert config.union_bound() == pytest.approx(0.5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=250, pilot_m=4, s=13),
            dict(n=192, pilot_m=4, s=13),
            dict(n=256, pilot_m=4, s=5),
            dict(n=256, pilot_m=1, s=13),
            dict(n=256, pilot_m=4, s=13, method="unknown"),
        ],
    )
    def test_invalid(self, kwargs):
        """Test rejected parameter combinations"""
        with pytest.raises(ValueError):
            PilotConfig(**kwargs)


class TestInterleaving:
    """Test interleaving and the window-disjointness predicate"""

    def test_round_trip(self):
        """Test that deinterleaving inverts interleaving"""
        streams = [QString.from_text(t) for t in ("0011", "0101", "1111")]
        z = pilot_interleave(streams[0], streams[1:])
        assert z.to_text() == "001011101111"
        assert deinterleave(z, 3) == streams

    def test_length_mismatch(self):
        """Test streams of different lengths"""
        with pytest.raises(ParameterError):
            pilot_interleave(QString.zeros(4), [QString.zeros(3)])

    def test_perp(self):
        """Test window disjointness"""
        assert perp(QString.zeros(8), QString.ones(8), 3)
        assert not perp(QString.from_text("00110101"), QString.from_text("11100110"), 3)
        with pytest.raises(ParameterError):
            perp(QString.zeros(8), QString.zeros(7), 3)


class TestPilotCode:
    """Test sampling and location"""

    def test_sampled_streams_avoid_pilot(self, pilot_code):
        """Test that data streams share no window with the pilot"""
        z = pilot_code.sample_codeword(seed=5)
        streams = deinterleave(z, 4)
        assert streams[0] == pilot_code.pilot
        for stream in streams[1:]:
            assert perp(pilot_code.pilot, stream, 13)

    @pytest.mark.parametrize("seed", range(3))
    def test_locate_every_offset(self, pilot_code, seed):
        """Test that every piece of length M*s is located"""
        z = pilot_code.sample_codeword(seed=seed)
        width = pilot_code.config.min_segment
        for g in range(len(z) - width + 1):
            assert pilot_locate(z[g : g + width], pilot_code) == g
        assert pilot_code.locate(z[10:]) == 10

    @pytest.mark.slow
    def test_locate_many_codewords(self, pilot_code):
        """Test location on twenty sampled codewords"""
        width = pilot_code.config.min_segment
        for seed in range(20):
            z = pilot_code.sample_codeword(seed=seed)
            for g in range(len(z) - width + 1):
                assert pilot_code.locate(z[g : g + width]) == g

    def test_short_piece(self, pilot_code):
        """Test pieces shorter than M*s"""
        z = pilot_code.sample_codeword(seed=1)
        with pytest.raises(ParameterError):
            pilot_code.locate(z[:51])

    def test_ambiguous_piece(self, pilot_code):
        """Test a piece in which no phase matches the pilot"""
        with pytest.raises(CorruptionError):
            pilot_code.locate(QString.ones(52))

    def test_acceptance_rate(self, pilot_code):
        """Test the empirical acceptance rate against the union bound"""
        sampler = pilot_code.sampler(seed=11)
        for _ in range(400):
            sampler.draw()
        bound = pilot_code.config.union_bound()
        tolerance = 3 * math.sqrt(bound * (1 - bound) / sampler.attempts)
        assert sampler.acceptance_rate >= bound - tolerance

    def test_sampling_failure(self):
        """Test that an unsatisfiable sampler gives up"""
        sampler = OpSampler(QString.from_text("01"), 1, seed=0, max_tries=5)
        with pytest.raises(SamplingError):
            sampler.draw()
        assert sampler.attempts == 5
        assert math.isnan(OpSampler(QString.from_text("01"), 1).acceptance_rate)

    def test_sample_op(self):
        """Test the functional sampler"""
        pilot = QString.from_text("0000")
        stream = sample_Op(pilot, 2, seed=3)
        assert "00" not in stream.to_text()
