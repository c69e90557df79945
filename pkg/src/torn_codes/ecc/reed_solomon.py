"""
Systematic Reed-Solomon codes with errors-and-erasures decoding

Codewords are evaluations of a polynomial of degree < M at the field elements
0, 1, ..., length-1; the first M evaluations are the message. Decoding solves
the Berlekamp-Welch key equation restricted to unerased positions, which
succeeds whenever 2s + e <= length - M.
"""

import logging
from typing import List, Optional, Sequence

from ..core.exceptions import ConfigurationError, DecodingError, ParameterError
from .field import GaloisField, poly_divmod, poly_eval

logger = logging.getLogger(__name__)


class ReedSolomonCode:
    def __init__(self, field: GaloisField, length: int, dimension: int):
        if not 0 < dimension <= length:
            raise ParameterError(f"Need 0 < M <= length, got M={dimension}, length={length}")
        if length > field.order:
            raise ConfigurationError(
                f"Code length {length} exceeds the field size {field.order}"
            )
        self.field = field
        self.length = length
        self.dimension = dimension
        self._parity_weights = [
            self._lagrange_weights(point) for point in range(dimension, length)
        ]

    @property
    def redundancy(self) -> int:
        return self.length - self.dimension

    def _lagrange_weights(self, x: int) -> List[int]:
        """L_i(x) for the message points 0 .. M-1"""
        gf = self.field
        weights = []
        for i in range(self.dimension):
            numerator, denominator = 1, 1
            for j in range(self.dimension):
                if j != i:
                    numerator = gf.mul(numerator, gf.sub(x, j))
                    denominator = gf.mul(denominator, gf.sub(i, j))
            weights.append(gf.div(numerator, denominator))
        return weights

    def encode(self, message: Sequence[int]) -> List[int]:
        if len(message) != self.dimension:
            raise ParameterError(
                f"Message must have {self.dimension} symbols, got {len(message)}"
            )
        gf = self.field
        parity = []
        for weights in self._parity_weights:
            value = 0
            for weight, symbol in zip(weights, message):
                value = gf.add(value, gf.mul(weight, symbol))
            parity.append(value)
        return list(message) + parity

    def decode(self, word: Sequence[Optional[int]]) -> List[int]:
        """Recover the message; erasures are given as None"""
        if len(word) != self.length:
            raise ParameterError(f"Word must have {self.length} symbols, got {len(word)}")
        gf = self.field
        known = [(point, value) for point, value in enumerate(word) if value is not None]
        erasures = self.length - len(known)
        if len(known) < self.dimension:
            raise DecodingError(
                f"{erasures} erasures exceed the redundancy {self.redundancy}",
                {"erasures": erasures},
            )
        errors_budget = (len(known) - self.dimension) // 2
        solution = self._solve_key_equation(known, errors_budget)
        if solution is None:
            raise DecodingError("Key equation has no solution", {"erasures": erasures})
        q_poly, e_poly = solution
        quotient, remainder = poly_divmod(gf, q_poly, e_poly)
        if any(remainder) or any(quotient[self.dimension :]):
            raise DecodingError("Error locator does not divide", {"erasures": erasures})
        message_poly = (quotient + [0] * self.dimension)[: self.dimension]
        mismatches = sum(
            1 for point, value in known if poly_eval(gf, message_poly, point) != value
        )
        if mismatches > errors_budget:
            raise DecodingError(
                f"{mismatches} disagreements exceed the error budget {errors_budget}",
                {"erasures": erasures, "mismatches": mismatches},
            )
        if mismatches or erasures:
            logger.debug(f"RS corrected {mismatches} errors and {erasures} erasures")
        return [poly_eval(gf, message_poly, point) for point in range(self.dimension)]

    def _solve_key_equation(self, known, budget):  # type: ignore[no-untyped-def]
        """Find Q (deg < M + budget) and monic E (deg budget) with Q(a) = r E(a)"""
        gf = self.field
        q_terms = self.dimension + budget
        rows = []
        for point, value in known:
            powers = [gf.pow(point, j) for j in range(q_terms + 1)]
            row = powers[:q_terms]
            row += [gf.neg(gf.mul(value, powers[j])) for j in range(budget)]
            row.append(gf.mul(value, powers[budget]))
            rows.append(row)
        coefficients = solve_linear_system(gf, rows, q_terms + budget)
        if coefficients is None:
            return None
        return coefficients[:q_terms], coefficients[q_terms:] + [1]


def solve_linear_system(
    field: GaloisField, augmented: List[List[int]], unknowns: int
) -> Optional[List[int]]:
    """Gaussian elimination; free variables are set to zero, None if inconsistent"""
    rows = [list(row) for row in augmented]
    pivots = []
    rank = 0
    for column in range(unknowns):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][column]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        scale = field.inv(rows[rank][column])
        rows[rank] = [field.mul(scale, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][column]:
                factor = rows[i][column]
                rows[i] = [
                    field.sub(v, field.mul(factor, w)) for v, w in zip(rows[i], rows[rank])
                ]
        pivots.append(column)
        rank += 1
    if any(row[unknowns] for row in rows[rank:]):
        return None
    solution = [0] * unknowns
    for row_index, column in enumerate(pivots):
        solution[column] = rows[row_index][unknowns]
    return solution


def rs_encode(message: Sequence[int], length: int, field: GaloisField) -> List[int]:
    return ReedSolomonCode(field, length, len(message)).encode(message)


def rs_decode(word: Sequence[Optional[int]], dimension: int, field: GaloisField) -> List[int]:
    return ReedSolomonCode(field, len(word), dimension).decode(word)
