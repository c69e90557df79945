"""
De Bruijn sequence generators

``lyndon`` concatenates Lyndon words in lexicographic order (the FKM
algorithm); ``prefer_high`` starts from s zeros and greedily appends the
largest symbol that creates an unseen window.
"""

import logging
from typing import Callable, Dict, List

from ..core.exceptions import ParameterError, ResourceLimitError
from ..core.sequences import QString

logger = logging.getLogger(__name__)

DEFAULT_MAX_LENGTH = 1 << 24


def _check(q: int, s: int, max_length: int) -> None:
    if q < 2 or s < 1:
        raise ParameterError(f"De Bruijn order needs q >= 2 and s >= 1, got q={q}, s={s}")
    if q**s > max_length:
        raise ResourceLimitError(
            f"De Bruijn sequence of length {q}^{s} exceeds the budget {max_length}"
        )


def lyndon_de_bruijn(q: int, s: int, max_length: int = DEFAULT_MAX_LENGTH) -> QString:
    _check(q, s, max_length)
    sequence: List[int] = []
    word = [0] * (s + 1)

    def visit(t: int, p: int) -> None:
        if t > s:
            if s % p == 0:
                sequence.extend(word[1 : p + 1])
            return
        word[t] = word[t - p]
        visit(t + 1, p)
        for symbol in range(word[t - p] + 1, q):
            word[t] = symbol
            visit(t + 1, t)

    visit(1, 1)
    return QString.trusted(tuple(sequence), q)


def prefer_high_de_bruijn(q: int, s: int, max_length: int = DEFAULT_MAX_LENGTH) -> QString:
    """The greedy output ends in s - 1 zeros, so its first q^s symbols close up cyclically"""
    _check(q, s, max_length)
    sequence = [0] * s
    seen = {tuple(sequence)}
    for _ in range(q**s - 1):
        context = tuple(sequence[len(sequence) - s + 1 :]) if s > 1 else ()
        for symbol in range(q - 1, -1, -1):
            window = context + (symbol,)
            if window not in seen:
                seen.add(window)
                sequence.append(symbol)
                break
        else:
            raise ResourceLimitError("Prefer-high generation got stuck before completion")
    return QString.trusted(tuple(sequence[: q**s]), q)


GENERATORS: Dict[str, Callable[..., QString]] = {
    "lyndon": lyndon_de_bruijn,
    "prefer_high": prefer_high_de_bruijn,
}


def de_bruijn(
    q: int, s: int, method: str = "lyndon", max_length: int = DEFAULT_MAX_LENGTH
) -> QString:
    """Cyclic sequence of length q^s containing every s-word exactly once"""
    if method not in GENERATORS:
        raise ParameterError(f"De Bruijn method must be one of: {sorted(GENERATORS)}")
    sequence = GENERATORS[method](q, s, max_length)
    logger.debug(f"Generated de Bruijn sequence q={q}, s={s} with {method}")
    return sequence

