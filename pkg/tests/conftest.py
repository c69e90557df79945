"""
Pytest configuration and fixtures for torn-codes tests
"""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from torn_codes.coding.codec import encode
from torn_codes.core.config import TornCodesConfig
from torn_codes.core.params import CodeParams, derive_params
from torn_codes.core.sequences import QString


@pytest.fixture
def cfg_a() -> CodeParams:
    """Reference configuration: q=2, n=124, Lmin=15, Lmax=20, f=3"""
    return derive_params(q=2, n=124, k=1, lmin=15, lmax=20, f=3)


@pytest.fixture
def cfg_a3() -> CodeParams:
    """Three strands; Lmin=17 leaves room for the wider index"""
    return derive_params(q=2, n=124, k=3, lmin=17, lmax=22, f=3)


@pytest.fixture
def cfg_b() -> CodeParams:
    """Blocks large enough for an outer Reed-Solomon code over GF(2^12)"""
    return derive_params(q=2, n=289, k=1, lmin=31, lmax=45, f=3)


@pytest.fixture
def cfg_d() -> CodeParams:
    """Enough blocks to host a two-deletion burst code"""
    return derive_params(q=2, n=651, k=1, lmin=31, lmax=36, f=3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def random_message(rng):
    """Factory of uniformly random messages"""

    def make(length: int, q: int = 2) -> QString:
        return QString(tuple(int(v) for v in rng.integers(0, q, size=length)), q)

    return make


@pytest.fixture
def codeword_a(cfg_a, random_message):
    return encode(random_message(cfg_a.message_len), cfg_a)


@pytest.fixture
def temp_dir():
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def test_config() -> TornCodesConfig:
    return TornCodesConfig()
