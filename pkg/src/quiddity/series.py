"""Truncated formal power series with exact integer coefficients.

A TruncSeries stores coefficients c_0..c_N for a fixed truncation order
N.  Binary operations insist that both operands share the same N: the
pipeline never mixes orders, so an order mismatch is a bug and raises
immediately instead of silently truncating.

Multiplication is the naive O(N^2) Cauchy product; it is the reference
implementation everything else must match bit for bit.
"""


class OrderMismatchError(ValueError):
    """Two series of different truncation orders were combined."""


class NotInvertibleError(ValueError):
    """Inversion needs constant term 1 or -1 to stay in integer series."""


def _check_int(value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"coefficients must be plain integers, got {value!r}")
    return value


class TruncSeries:
    """Immutable truncated series; coefficients indexed 0..order."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(_check_int(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "_coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def from_coeffs(cls, values):
        return cls(values)

    @classmethod
    def one(cls, order):
        return cls((1,) + (0,) * order)

    @classmethod
    def zero(cls, order):
        return cls((0,) * (order + 1))

    @classmethod
    def x(cls, order):
        if order < 1:
            return cls((0,) * (order + 1))
        return cls((0, 1) + (0,) * (order - 1))

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def order(self):
        return len(self._coeffs) - 1

    def coeff(self, j):
        if j < 0 or j > self.order:
            raise IndexError(f"coefficient index {j} outside 0..{self.order}")
        return self._coeffs[j]

    def _check_order(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {other!r}")
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders differ: {self.order} vs {other.order}"
            )

    def add(self, other):
        self._check_order(other)
        return TruncSeries(tuple(a + b for a, b in zip(self._coeffs, other._coeffs)))

    def sub(self, other):
        self._check_order(other)
        return TruncSeries(tuple(a - b for a, b in zip(self._coeffs, other._coeffs)))

    def mul(self, other):
        self._check_order(other)
        a, b = self._coeffs, other._coeffs
        n = len(a)
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                out[i + j] += ai * b[j]
        return TruncSeries(out)

    def pow(self, e):
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        result = TruncSeries.one(self.order)
        for _ in range(e):
            result = result.mul(self)
        return result

    def inverse(self):
        """Multiplicative inverse, via b_n = -a_0^{-1} * sum a_k b_{n-k}."""
        a = self._coeffs
        a0 = a[0]
        if a0 not in (1, -1):
            raise NotInvertibleError(f"constant term must be 1 or -1, got {a0}")
        # a0 is its own inverse
        b = [a0]
        for n in range(1, len(a)):
            acc = 0
            for k in range(1, n + 1):
                ak = a[k]
                if ak:
                    acc += ak * b[n - k]
            b.append(-a0 * acc)
        return TruncSeries(b)

    def shift(self, j):
        """Multiply by X^j, dropping coefficients past the order."""
        if j < 0 or j > self.order:
            raise IndexError(f"shift amount {j} outside 0..{self.order}")
        return TruncSeries((0,) * j + self._coeffs[: len(self._coeffs) - j])

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __mul__(self, other):
        return self.mul(other)

    def __neg__(self):
        return TruncSeries(tuple(-c for c in self._coeffs))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"TruncSeries({list(self._coeffs)!r})"

    def to_decimal_strings(self):
        """Coefficients as decimal strings (the JSON wire format)."""
        return [str(c) for c in self._coeffs]
