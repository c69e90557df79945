"""
Gray-code segment indices

Index i is written as the rank-i word of the reflected q-ary Gray code, extended
by a parity symbol so that the symbols sum to zero mod q, and padded with a 1 at
every position divisible by f.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

from ..core.exceptions import CorruptionError, ParameterError
from ..core.params import CodeParams
from ..core.sequences import QString


def gray_unrank(i: int, length: int, q: int = 2) -> QString:
    if not 0 <= i < q**length:
        raise ParameterError(f"Rank {i} outside [0, {q}^{length})")
    digits = []
    for _ in range(length):
        i, digit = divmod(i, q)
        digits.append(digit)
    digits.reverse()
    word = []
    reflected = False
    for digit in digits:
        symbol = q - 1 - digit if reflected else digit
        word.append(symbol)
        reflected ^= symbol % 2 == 1
    return QString.trusted(tuple(word), q)


def gray_rank(c: QString) -> int:
    q = c.q
    rank = 0
    reflected = False
    for symbol in c.symbols:
        digit = q - 1 - symbol if reflected else symbol
        rank = rank * q + digit
        reflected ^= symbol % 2 == 1
    return rank


def gray_sequence(length: int, q: int = 2) -> Iterator[QString]:
    for i in range(q**length):
        yield gray_unrank(i, length, q)


def parity_symbol(symbols: Sequence[int], q: int) -> int:
    """Symbol p with sum(symbols) + p = 0 mod q"""
    return (-sum(symbols)) % q


@lru_cache(maxsize=32)
def data_positions(alpha: int, f: int) -> Tuple[int, ...]:
    """Positions of an encoded index that carry Gray or parity symbols"""
    return tuple(p for p in range(alpha) if p % f)


@dataclass(frozen=True)
class EncodedIndex:
    value: int
    padded: QString


@lru_cache(maxsize=4096)
def build_encoded_index(i: int, params: CodeParams) -> EncodedIndex:
    gray = gray_unrank(i, params.index_len, params.q).symbols
    extended = iter(gray + (parity_symbol(gray, params.q),))
    padded = tuple(
        1 if p % params.f == 0 else next(extended) for p in range(params.alpha)
    )
    return EncodedIndex(i, QString.trusted(padded, params.q))


def strip_padding(w: Sequence[int], params: CodeParams) -> Tuple[int, ...]:
    """Return the extended Gray word c' of an encoded index"""
    if len(w) != params.alpha:
        raise ParameterError(f"Index word must have length {params.alpha}, got {len(w)}")
    for p in range(0, params.alpha, params.f):
        if w[p] != 1:
            raise CorruptionError(f"Padded index position {p} holds {w[p]}, expected 1")
    return tuple(w[p] for p in data_positions(params.alpha, params.f))


def has_valid_parity(w: Sequence[int], params: CodeParams) -> bool:
    """True when padding is intact and the parity symbol matches"""
    try:
        extended = strip_padding(w, params)
    except CorruptionError:
        return False
    return extended[-1] == parity_symbol(extended[:-1], params.q)


def decode_index_word(w: QString, params: CodeParams) -> int:
    """Recover the first index intersecting a segment from a (possibly mixed) index word

    A wrong parity symbol means the Gray part came from the following index, so
    the result is one less than the Gray rank.
    """
    extended = strip_padding(w.symbols, params)
    gray, parity = extended[:-1], extended[-1]
    rank = gray_rank(QString.trusted(gray, params.q))
    if parity != parity_symbol(gray, params.q):
        rank -= 1
    return rank
