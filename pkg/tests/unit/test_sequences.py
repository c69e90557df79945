"""
Unit tests for q-ary strings, segment multisets and segmentation spectra
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torn_codes.core.exceptions import ParameterError, ResourceLimitError
from torn_codes.core.sequences import (
    ErrorBudget,
    MarkerKind,
    QString,
    SegmentCollection,
    complete_marker_offsets,
    count_segmentations,
    cut,
    cyclic_marker_offsets,
    enumerate_segmentations,
    enumerate_segmentations_multi,
    exact_segmentation,
    find_marker_occurrences,
    hamming_distance,
    hamming_perturb,
    iter_cut_patterns,
    max_zero_run,
    zero_suffix_length,
)


def binary(text: str) -> QString:
    return QString.from_text(text, 2)


binary_strings = st.lists(st.integers(0, 1), min_size=1, max_size=24).map(
    lambda s: QString(tuple(s), 2)
)


class TestQString:
    """Test QString construction and operations"""

    def test_rejects_symbols_outside_alphabet(self):
        """Test that symbols >= q are rejected"""
        with pytest.raises(ParameterError):
            QString((0, 1, 2), 2)

    def test_text_round_trip(self):
        """Test text parsing and rendering"""
        x = binary("0010110")
        assert x.to_text() == "0010110"
        assert len(x) == 7
        assert x.weight == 3

    def test_acgt_alias(self):
        """Test ACGT rendering for q=4"""
        x = QString.from_text("ACGT", 4)
        assert x.symbols == (0, 1, 2, 3)
        assert x.to_text(acgt=True) == "ACGT"
        with pytest.raises(ParameterError):
            binary("01").to_text(acgt=True)

    def test_concatenation_requires_same_alphabet(self):
        """Test alphabet checks on concatenation"""
        assert (binary("01") + binary("10")).to_text() == "0110"
        with pytest.raises(ParameterError):
            binary("01") + QString((0, 3), 4)

    def test_slicing_returns_qstring(self):
        """Test slicing keeps the alphabet"""
        x = QString((0, 1, 2, 3), 4)
        assert x[1:3] == QString((1, 2), 4)
        assert x[2] == 2

    def test_hamming_helpers(self):
        """Test distance and perturbation"""
        x, y = binary("0101"), binary("0110")
        assert hamming_distance(x, y) == 2
        assert hamming_perturb(x, binary("0011")) == y

    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=24))
    def test_perturb_is_undone_by_opposite_errors(self, pairs):
        """Test that adding e and then -e restores the string"""
        x = QString(tuple(a for a, _ in pairs), 3)
        error = QString(tuple(e for _, e in pairs), 3)
        opposite = QString(tuple((-e) % 3 for _, e in pairs), 3)
        assert hamming_perturb(hamming_perturb(x, error), opposite) == x

    @given(binary_strings, binary_strings)
    def test_concat_length_adds(self, x, y):
        """Test concatenation length"""
        assert len(x + y) == len(x) + len(y)


class TestSegmentCollection:
    """Test multiset semantics"""

    def test_order_is_ignored(self):
        """Test equality ignores order"""
        a = SegmentCollection.of([binary("01"), binary("1")])
        b = SegmentCollection.of([binary("1"), binary("01")])
        assert a == b
        assert hash(a) == hash(b)

    def test_multiplicity_matters(self):
        """Test equality respects multiplicity"""
        a = SegmentCollection.of([binary("01"), binary("01")])
        b = SegmentCollection.of([binary("01")])
        assert a != b
        assert a.counts() == {(0, 1): 2}
        assert a.total_length == 4


class TestErrorBudget:
    """Test noise budgets"""

    def test_rejects_mixed_budget(self):
        """Test that substitution and deletion budgets cannot be combined"""
        with pytest.raises(ParameterError):
            ErrorBudget(t_sub=1, t_del=1)

    def test_total(self):
        """Test total count"""
        assert ErrorBudget(t_sub=2).total == 2


class TestSegmentation:
    """Test cut patterns and spectra"""

    def test_spectrum_of_small_string(self):
        """Test the spectrum of 00101 with Lmin=2, Lmax=3"""
        spectrum = enumerate_segmentations(binary("00101"), 2, 3)
        expected = {
            SegmentCollection.of([binary("00"), binary("101")]),
            SegmentCollection.of([binary("001"), binary("01")]),
            SegmentCollection.of([binary("00"), binary("10"), binary("1")]),
        }
        assert spectrum == expected

    def test_cut_patterns_respect_constraints(self):
        """Test every pattern is a valid segmentation"""
        patterns = list(iter_cut_patterns(30, 4, 7))
        assert len(patterns) == count_segmentations(30, 4, 7)
        for pattern in patterns:
            assert sum(pattern) == 30
            assert all(4 <= piece <= 7 for piece in pattern[:-1])
            assert 1 <= pattern[-1] <= 7

    def test_cut_rejects_wrong_total(self):
        """Test cut length validation"""
        with pytest.raises(ParameterError):
            cut(binary("0101"), [1, 2])

    def test_enumeration_cap(self):
        """Test that the enumeration budget is enforced"""
        with pytest.raises(ResourceLimitError):
            enumerate_segmentations(QString.zeros(60), 2, 5, cap=10)

    def test_exact_segmentation(self):
        """Test exact segmentation keeps a short last piece"""
        pieces = exact_segmentation(binary("0101101"), 3)
        assert sorted(p.to_text() for p in pieces) == ["010", "1", "110"]

    def test_multi_strand_spectrum(self):
        """Test that strands are segmented independently"""
        spectrum = enumerate_segmentations_multi([binary("0011"), binary("0101")], 2, 2)
        assert spectrum == {
            SegmentCollection.of([binary("00"), binary("11"), binary("01"), binary("01")])
        }


class TestMarkers:
    """Test marker search helpers"""

    def test_complete_offsets(self):
        """Test detection of markers fully inside the string"""
        assert complete_marker_offsets(binary("0110001100").symbols, 3) == [2]
        assert complete_marker_offsets(binary("0011000").symbols, 3) == []

    def test_wrapping_marker(self):
        """Test a marker split between the end and the start"""
        # suffix 100 followed by prefix 01 reads 10001
        assert cyclic_marker_offsets(binary("01111100").symbols, 3) == [5]
        assert cyclic_marker_offsets(binary("11111100").symbols, 3) == []

    def test_find_marker_occurrences(self):
        """Test occurrence kinds"""
        occurrences = find_marker_occurrences(binary("0110001100"), 3)
        assert set(occurrences) == {
            (2, MarkerKind.COMPLETE),
            (7, MarkerKind.CYCLIC),
        }

    def test_short_string_rejected(self):
        """Test marker search on strings shorter than a marker"""
        with pytest.raises(ParameterError):
            find_marker_occurrences(binary("101"), 3)

    def test_zero_runs(self):
        """Test zero-run helpers"""
        assert zero_suffix_length(binary("1000").symbols) == 3
        assert zero_suffix_length(binary("1").symbols) == 0
        assert max_zero_run(binary("1001000100").symbols) == 3
