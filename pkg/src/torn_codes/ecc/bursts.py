"""
Brute-force burst confusability

Two strings are confusable under t bursts of errors of length at most l
exactly when they are confusable under 2t bursts of erasures of that length.
Both predicates are computed independently here so the equivalence can be
checked exhaustively on small lengths.
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import FrozenSet, Tuple

from ..core.exceptions import ParameterError
from ..core.sequences import QString


@lru_cache(maxsize=64)
def burst_supports(length: int, burst: int, count: int) -> Tuple[FrozenSet[int], ...]:
    """Every union of `count` windows of length <= burst inside [0, length)"""
    starts = range(max(length - burst, 0) + 1)
    windows = [frozenset(range(s, min(s + burst, length))) for s in starts]
    unions = {
        frozenset().union(*combo) for combo in combinations_with_replacement(windows, count)
    }
    return tuple(sorted(unions, key=sorted))


def _bursts_confusable(x: QString, y: QString, burst: int, t: int) -> bool:
    q = x.q
    length = len(x)
    xs, ys = x.symbols, y.symbols
    supports = burst_supports(length, burst, t)
    for first in supports:
        e0 = [(ys[i] - xs[i]) % q if i in first else 0 for i in range(length)]
        for second in supports:
            e1 = [
                (xs[i] - ys[i]) % q if i in second and i not in first else 0
                for i in range(length)
            ]
            if all((xs[i] + e0[i]) % q == (ys[i] + e1[i]) % q for i in range(length)):
                return True
    return False


def _erasure_confusable(x: QString, y: QString, burst: int, t: int) -> bool:
    differing = {i for i, (a, b) in enumerate(zip(x.symbols, y.symbols)) if a != b}
    for erased in burst_supports(len(x), burst, 2 * t):
        if differing <= erased:
            return True
    return False


def burst_confusability_check(
    x: QString, y: QString, burst: int, t: int
) -> Tuple[bool, bool]:
    """(confusable under t error bursts, confusable under 2t erasure bursts)"""
    if len(x) != len(y) or x.q != y.q:
        raise ParameterError("Confusability needs strings of equal length and alphabet")
    if burst < 1 or t < 1:
        raise ParameterError("Burst length and count must be positive")
    return _bursts_confusable(x, y, burst, t), _erasure_confusable(x, y, burst, t)
