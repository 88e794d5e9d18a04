"""GF(2^m) arithmetic backed by log/antilog tables."""

from __future__ import annotations

import numpy as np

# One primitive polynomial per extension degree, from the standard published
# table used throughout the coding literature (Lin & Costello, appendix C).
# Bit i of the mask is the coefficient of x^i; bit m is always set.
PRIMITIVE_POLY = {
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10001001,           # x^7 + x^3 + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011, # x^16 + x^12 + x^3 + x + 1
}


class GaloisField:
    """GF(2^m) with elements represented as integers in [0, 2^m).

    Bit i of an element is the coefficient of alpha^i in the polynomial
    basis.  ``exp[i]`` is alpha^i for 0 <= i < 2^m - 1 and ``log[x]`` is
    the discrete log of a nonzero element x; ``log[0]`` is -1.
    """

    def __init__(self, m: int, primitive_poly: int | None = None):
        if primitive_poly is None:
            if m not in PRIMITIVE_POLY:
                raise ValueError(f"no primitive polynomial on file for m={m}")
            primitive_poly = PRIMITIVE_POLY[m]
        if not (primitive_poly >> m) & 1:
            raise ValueError(f"polynomial 0x{primitive_poly:x} does not have degree {m}")
        self.m = m
        self.order = 1 << m
        self.primitive_poly = primitive_poly
        self.exp = np.zeros(self.order - 1, dtype=np.int64)
        self.log = np.full(self.order, -1, dtype=np.int64)
        x = 1
        for i in range(self.order - 1):
            if self.log[x] >= 0:
                raise ValueError(
                    f"0x{primitive_poly:x} is not primitive over GF(2^{m}): "
                    f"alpha^{i} repeats alpha^{self.log[x]}"
                )
            self.exp[i] = x
            self.log[x] = i
            x <<= 1
            if x & self.order:
                x ^= primitive_poly
        if x != 1:
            raise ValueError(f"0x{primitive_poly:x} is not primitive over GF(2^{m})")

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-self.log[a]) % (self.order - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def alpha_pow(self, i: int) -> int:
        """alpha^i, exponent taken mod 2^m - 1."""
        return int(self.exp[i % (self.order - 1)])

    def __repr__(self) -> str:
        return f"GaloisField(m={self.m}, poly=0x{self.primitive_poly:x})"


def gf_build(m: int) -> GaloisField:
    """Build GF(2^m) tables for 2 <= m <= 16 using the fixed polynomial table."""
    if not 2 <= m <= 16:
        raise ValueError(f"extension degree must be in [2, 16], got {m}")
    return GaloisField(m)
