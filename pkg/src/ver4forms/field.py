"""Exact arithmetic in GF(2^k) for 1 <= k <= 16.

Elements are plain ints in [0, 2^k) encoding polynomial coefficients
little-endian: bit i is the coefficient of x^i.  Addition is XOR, so every
element is its own additive inverse.  Multiplication reduces modulo a fixed
Conway polynomial, which makes encodings bit-exact across runs and
implementations.  The degree-1 entry uses the convention x, so GF(2) is the
plain prime field with no reduction.

Because the field is perfect of characteristic 2, every element has a unique
square root, namely a^(2^(k-1)).

The exp/log tables built here also back the vectorised numpy helpers in
:mod:`ver4forms.linalg`.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Conway polynomials over GF(2) as little-endian bitmasks, degrees 1..16.
# Degree 1 is stored as x (prime-field convention) rather than x + 1.
CONWAY_POLY_BITS: dict[int, int] = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10001101111,
    11: 0b100000000101,
    12: 0b1000011101011,
    13: 0b10000000011011,
    14: 0b100000010101001,
    15: 0b1000000000110101,
    16: 0b10000000000101101,
}

MAX_DEGREE = 16


class Field:
    """Arithmetic context for GF(2^k), with scalar and numpy-array operations.

    Scalar operations take and return plain int encodings.  Array operations
    (`add_arr`, `mul_arr`) accept numpy int arrays of encodings and
    broadcast; they are the building blocks of the exact linear algebra
    layer.
    """

    __slots__ = ("k", "order", "modulus", "_gorder", "_exp", "_log", "_sqrt", "_logz", "_expz")

    # sentinel exponent for log(0); sums of two real logs stay below it
    _ZLOG = 1 << 17

    def __init__(self, k: int):
        if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= MAX_DEGREE:
            raise ValueError(f"field degree k must be an integer in 1..{MAX_DEGREE}, got {k!r}")
        self.k = k
        self.order = 1 << k
        self.modulus = CONWAY_POLY_BITS[k]
        self._gorder = self.order - 1
        self._build_tables()

    def _xtime(self, a: int) -> int:
        a <<= 1
        if a >> self.k:
            a ^= self.modulus
        return a

    def _build_tables(self):
        om = self._gorder
        exp = np.zeros(2 * om if om > 1 else 2, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        if om == 1:
            exp[:] = 1
        else:
            e = 1
            for i in range(om):
                exp[i] = e
                log[e] = i
                e = self._xtime(e)
            # x must generate the full multiplicative group (Conway moduli
            # are primitive); anything else means a bad constant.
            if e != 1 or np.count_nonzero(log) != om - 1:
                raise AssertionError(f"modulus for k={self.k} is not primitive")
            exp[om:] = exp[:om]
        self._exp = exp
        self._log = log
        # zero-aware tables: log(0) maps to a sentinel so that the summed
        # exponent of any product with 0 lands in a zero region of _expz
        logz = log.copy()
        logz[0] = self._ZLOG
        self._logz = logz
        expz = np.zeros(2 * self._ZLOG + 1, dtype=np.int64)
        expz[: exp.shape[0]] = exp
        self._expz = expz
        # sqrt via the inverse of the Frobenius bijection a -> a^2
        sq = np.zeros(self.order, dtype=np.int64)
        for a in range(self.order):
            sq[self.mul(a, a)] = a
        self._sqrt = sq

    # -- scalar operations -------------------------------------------------

    def check_element(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element encoding of GF(2^{self.k})")
        return int(a)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF(2^{self.k})")
        return int(self._exp[self._gorder - self._log[a]])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        return int(self._sqrt[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return int(self._exp[(int(self._log[a]) * e) % self._gorder])

    def elements(self) -> range:
        return range(self.order)

    # -- vectorised operations ---------------------------------------------

    def add_arr(self, a, b) -> np.ndarray:
        return np.bitwise_xor(a, b)

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return self._expz[self._logz[a] + self._logz[b]]

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and other.k == self.k

    def __hash__(self):
        return hash(("GF2", self.k))

    def __repr__(self):
        return f"GF(2^{self.k})"


@lru_cache(maxsize=None)
def make_field(k: int) -> Field:
    """Return the (cached) GF(2^k) context with its fixed modulus."""
    return Field(k)
