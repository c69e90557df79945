"""
Finite field arithmetic GF(p^r) with exp/log tables

Elements are integers in [0, p^r) whose base-p digits are polynomial
coefficients, least significant digit first.
"""

import logging
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ..core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Primitive polynomials over GF(2), leading term included
PRIMITIVE_POLYNOMIALS_GF2 = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

MAX_FIELD_ORDER = 1 << 20


def prime_power(order: int) -> Optional[Tuple[int, int]]:
    """Return (p, r) with p**r == order, or None"""
    if order < 2:
        return None
    p = next(d for d in range(2, order + 1) if order % d == 0)
    r, rest = 0, order
    while rest % p == 0:
        rest //= p
        r += 1
    return (p, r) if rest == 1 else None


def _digits(value: int, p: int, r: int) -> List[int]:
    out = []
    for _ in range(r):
        value, digit = divmod(value, p)
        out.append(digit)
    return out


def _from_digits(digits: Sequence[int], p: int) -> int:
    value = 0
    for digit in reversed(digits):
        value = value * p + digit
    return value


class GaloisField:
    """The field with p**r elements"""

    def __init__(self, p: int, r: int = 1, modulus: Optional[Sequence[int]] = None):
        if prime_power(p) != (p, 1):
            raise ConfigurationError(f"Field characteristic must be prime, got {p}")
        self.p = p
        self.r = r
        self.order = p**r
        if self.order > MAX_FIELD_ORDER:
            raise ConfigurationError(f"Field order {self.order} exceeds table budget")
        self.modulus: Tuple[int, ...] = tuple(modulus) if modulus else ()
        self.exp: List[int] = []
        self.log: List[int] = [0] * self.order
        self._build_tables()

    @classmethod
    def from_order(cls, order: int) -> "GaloisField":
        return get_field(order)

    def _build_tables(self) -> None:
        if self.r == 1:
            generator = next(g for g in range(1, self.p) if self._cycle_prime(g))
            powers = self._cycle_prime(generator)
        else:
            candidates = []
            if self.modulus:
                candidates.append(self.modulus)
            elif self.p == 2 and self.r in PRIMITIVE_POLYNOMIALS_GF2:
                candidates.append(
                    tuple(_digits(PRIMITIVE_POLYNOMIALS_GF2[self.r], 2, self.r))
                )
            candidates.extend(self._monic_candidates())
            powers = None
            for lower in candidates:
                powers = self._cycle_poly(lower)
                if powers:
                    self.modulus = tuple(lower)
                    break
            if not powers:
                raise ConfigurationError(f"No primitive polynomial for GF({self.order})")
        self.exp = powers + powers
        for exponent, value in enumerate(powers):
            self.log[value] = exponent
        logger.debug(f"Built GF({self.order}) tables, modulus {self.modulus}")

    def _cycle_prime(self, generator: int) -> Optional[List[int]]:
        powers, value = [], 1
        for _ in range(self.p - 1):
            powers.append(value)
            value = value * generator % self.p
            if value == 1 and len(powers) < self.p - 1:
                return None
        return powers

    def _monic_candidates(self):  # type: ignore[no-untyped-def]
        for value in range(1, self.order):
            lower = _digits(value, self.p, self.r)
            if lower[0]:
                yield tuple(lower)

    def _cycle_poly(self, lower: Sequence[int]) -> Optional[List[int]]:
        """Powers of x modulo x^r + sum(lower_i x^i), None unless x is primitive"""
        p, r = self.p, self.r
        powers: List[int] = []
        digits = [1] + [0] * (r - 1)
        for _ in range(self.order - 1):
            value = _from_digits(digits, p)
            if powers and value == 1:
                return None
            powers.append(value)
            top = digits[-1]
            digits = [0] + digits[:-1]
            if top:
                digits = [(d - top * c) % p for d, c in zip(digits, lower)]
        return powers if _from_digits(digits, p) == 1 else None

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        da, db = _digits(a, self.p, self.r), _digits(b, self.p, self.r)
        return _from_digits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.r == 1:
            return (-a) % self.p
        return _from_digits([(-d) % self.p for d in _digits(a, self.p, self.r)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Zero has no inverse in a field")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, exponent: int) -> int:
        if a == 0:
            return 0 if exponent else 1
        return self.exp[(self.log[a] * exponent) % (self.order - 1)]

    def __repr__(self) -> str:
        return f"GaloisField({self.p}^{self.r})"


@lru_cache(maxsize=32)
def get_field(order: int) -> GaloisField:
    factors = prime_power(order)
    if factors is None:
        raise ConfigurationError(f"No finite field of order {order} (not a prime power)")
    return GaloisField(*factors)


def extension_field(q: int, degree: int) -> GaloisField:
    """GF(q^degree) for a prime-power alphabet size q"""
    if prime_power(q) is None:
        raise ConfigurationError(f"Alphabet size {q} is not a prime power")
    return get_field(q**degree)


def poly_eval(field: GaloisField, coeffs: Sequence[int], x: int) -> int:
    """Evaluate sum(coeffs[i] x^i)"""
    result = 0
    for coeff in reversed(coeffs):
        result = field.add(field.mul(result, x), coeff)
    return result


def poly_divmod(
    field: GaloisField, numerator: Sequence[int], divisor: Sequence[int]
) -> Tuple[List[int], List[int]]:
    """Quotient and remainder of polynomials stored lowest degree first"""
    divisor = list(divisor)
    while divisor and divisor[-1] == 0:
        divisor.pop()
    if not divisor:
        raise ZeroDivisionError("Polynomial division by zero")
    remainder = list(numerator)
    degree = len(divisor) - 1
    lead_inv = field.inv(divisor[-1])
    quotient = [0] * max(len(remainder) - degree, 1)
    for shift in range(len(remainder) - 1 - degree, -1, -1):
        coeff = field.mul(remainder[shift + degree], lead_inv)
        quotient[shift] = coeff
        if coeff:
            for i, d in enumerate(divisor):
                remainder[shift + i] = field.sub(remainder[shift + i], field.mul(coeff, d))
    return quotient, remainder[:degree]
