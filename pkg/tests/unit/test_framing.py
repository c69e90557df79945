"""
Unit tests for byte framing and the text formats
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torn_codes.core.exceptions import ParameterError
from torn_codes.core.sequences import QString
from torn_codes.utils.framing import (
    bytes_to_symbols,
    capacity_bytes,
    digits_per_byte,
    frame_message,
    symbols_to_bytes,
)
from torn_codes.utils.textio import (
    HEADER_PREFIX,
    read_codeword,
    read_segments,
    write_codeword,
    write_segments,
)


class TestFraming:
    """Test bytes to q-ary symbols"""

    @pytest.mark.parametrize("q, width", [(2, 8), (3, 6), (4, 4), (16, 2), (256, 1)])
    def test_digits_per_byte(self, q, width):
        """Test digit widths"""
        assert digits_per_byte(q) == width

    def test_msb_first(self):
        """Test digit order"""
        assert bytes_to_symbols(b"\x81", 2).to_text() == "10000001"
        assert bytes_to_symbols(b"\x1b", 4).symbols == (0, 1, 2, 3)

    @given(st.binary(max_size=16), st.sampled_from([2, 3, 4, 5]))
    def test_inverse(self, data, q):
        """Test that framing is invertible"""
        assert symbols_to_bytes(bytes_to_symbols(data, q), len(data)) == data

    def test_out_of_range_digits(self):
        """Test ternary digits above 255"""
        with pytest.raises(ParameterError):
            symbols_to_bytes(QString((2,) * 6, 3), 1)

    def test_frame_message(self):
        """Test padding and capacity"""
        x, length = frame_message(b"A", 2, 14)
        assert length == 1
        assert x.to_text() == "01000001000000"
        assert capacity_bytes(2, 14) == 1
        with pytest.raises(ParameterError):
            frame_message(b"AB", 2, 14)


class TestTextFormats:
    """Test codeword and segment files"""

    def test_codeword_file(self, temp_dir, codeword_a):
        """Test the header line and strand lines"""
        path = temp_dir / "codeword.txt"
        header = {"schema": 1, "params": {"q": 2, "n": 124}}
        write_codeword(path, codeword_a.strands, header)
        assert path.read_text().startswith(HEADER_PREFIX)
        loaded_header, strands = read_codeword(path)
        assert loaded_header == header
        assert strands == list(codeword_a.strands)

    def test_acgt_codeword(self, temp_dir):
        """Test that the header alphabet drives parsing"""
        path = temp_dir / "dna.txt"
        write_codeword(path, [QString((0, 1, 2, 3), 4)], {"params": {"q": 4}}, acgt=True)
        assert path.read_text().splitlines()[1] == "ACGT"
        assert read_codeword(path)[1] == [QString((0, 1, 2, 3), 4)]

    def test_malformed_header(self, temp_dir):
        """Test a header that is not JSON"""
        path = temp_dir / "bad.txt"
        path.write_text(HEADER_PREFIX + "{oops\n0101\n")
        with pytest.raises(ParameterError):
            read_codeword(path)

    def test_segments_file(self, temp_dir):
        """Test segment files skip blank lines"""
        path = temp_dir / "segments.txt"
        segments = [QString.from_text(s, 2) for s in ("0101", "11", "000")]
        assert write_segments(path, segments) == 3
        path.write_text(path.read_text() + "\n\n")
        assert read_segments(path) == segments
