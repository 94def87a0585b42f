"""Closed-form coefficient and count formulas, evaluated exactly.

Each sum is accumulated as an exact rational and the final total must be
an integer; anything else raises NonIntegralSumError, because a
fractional total can only mean a transcription or convention bug.
Per-term integrality is deliberately not assumed.

Series letters used across the package (defined by what they count, all
for tuples of size n + 2):

    Q_n  solutions of the identity-target equation ("quiddities");
    P_n  the subfamily used as the algebraic workhorse: Q's generating
         series Q(X) and P(X) are linked by Q - 1 = V_1 * P;
    Ptilde_n  coefficients of the reciprocal series 1 / P(X);
    V1_n  identity-target solutions whose last component is 1;
    W11_n identity-target solutions whose first and last components are 1;
    D_n / C_n  dissections of an (n+2)-gon into sub-polygons with vertex
         counts divisible by 3 / plain triangulations (Catalan);
    E_n, F_n  the two marked-dissection counts derived from D_n.
"""

from fractions import Fraction
from math import comb


class NonIntegralSumError(ArithmeticError):
    """A formula that must produce an integer summed to a fraction."""


def binom_conv(top, k):
    """Binomial coefficient under the package's counting conventions.

    A negative top returns 1, and that rule is checked first; otherwise
    k outside 0..top returns 0; otherwise the standard value.
    """
    if top < 0:
        return 1
    if k < 0 or k > top:
        return 0
    return comb(top, k)


def _as_int(total, label):
    if total.denominator != 1:
        raise NonIntegralSumError(f"{label} summed to the non-integer {total}")
    return int(total)


def coeff_P(n):
    """n-th coefficient of the series P."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return 1
    total = Fraction(0)
    for k in range(n // 3 + 1):
        total += Fraction(
            binom_conv(n - 2 * k - 1, k) * binom_conv(2 * n - 4 * k, n - 3 * k),
            n - k + 1,
        )
    return _as_int(total, f"P_{n}")


def coeff_Q(n):
    """Number of identity-target solutions of size n + 2 (n >= 1); Q_0 = 1 is the formal seed."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return 1
    total = Fraction(0)
    for k in range(n // 3 + 1):
        for s in range(k + 1):
            total += Fraction(
                (3 * (k - s) + 2)
                * binom_conv(n - 3 * k + s - 2, s)
                * binom_conv(2 * n - 3 * k - s - 1, n - 3 * k - 1),
                n - s + 1,
            )
    return _as_int(total, f"Q_{n}")


def coeff_Ptilde(n):
    """n-th coefficient of 1/P, by the direct triple sum."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return 1
    total = Fraction(0)
    for j in range(n):
        for k in range((n - j - 1) // 2 + 1):
            sign = -1 if (j - k) % 2 else 1
            outer = sign * comb(j, k)
            for l in range((n - j - 2 * k - 1) // 3 + 1):
                total += outer * Fraction(
                    (2 * j + 2)
                    * binom_conv(n - j - 2 * k - 2 * l - 2, l)
                    * binom_conv(2 * n - 4 * k - 4 * l - 1, n - j - 2 * k - 3 * l - 1),
                    n + j - 2 * k - l + 1,
                )
    return -_as_int(total, f"Ptilde_{n}")


def coeff_V1(n):
    """Identity-target solutions of size n + 2 with last component 1 (n >= 1)."""
    if n < 1:
        raise ValueError("index must be at least 1")
    total = Fraction(0)
    for j in range((n - 1) // 3 + 1):
        for k in range((n - 3 * j - 1) // 3 + 1):
            total += Fraction(
                (3 * j + 1)
                * binom_conv(n - 3 * j - 2 * k - 2, k)
                * binom_conv(2 * n - 4 * k - 3 * j - 2, n - 3 * k - 3 * j - 1),
                n - k,
            )
    return _as_int(total, f"V1_{n}")


def coeff_W11(n):
    """Identity-target solutions of size n + 2 with first and last component 1."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return 0
    if n == 1:
        return 1
    total = Fraction(0)
    for j in range(1, (n - 1) // 3 + 1):
        for k in range((n - 3 * j - 1) // 3 + 1):
            total += Fraction(
                3 * j
                * binom_conv(n - 3 * j - 2 * k - 2, k)
                * binom_conv(2 * n - 3 * j - 4 * k - 3, n - 3 * j - 3 * k - 1),
                n - 1 - k,
            )
    return _as_int(total, f"W11_{n}")


def coeff_powP(e, n):
    """n-th coefficient of P(X)**e, by the closed form (no series product)."""
    if e < 1:
        raise ValueError("exponent must be at least 1")
    if n < 0:
        raise ValueError("index must be nonnegative")
    total = Fraction(0)
    for k in range(n // 3 + 1):
        total += Fraction(
            e
            * binom_conv(n - 2 * k - 1, k)
            * binom_conv(2 * n - 4 * k + e - 1, n - 3 * k),
            n - k + e,
        )
    return _as_int(total, f"[X^{n}]P^{e}")


def coeff_D(n):
    """Number of 3-divisible dissections of a convex (n+2)-gon."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    total = 0
    for k in range(n // 3 + 1):
        total += binom_conv(n - 2 * k - 1, k) * binom_conv(2 * n - 3 * k, n - 3 * k)
    return _as_int(Fraction(total, n + 1), f"D_{n}")


def coeff_catalan(n):
    """n-th Catalan number: triangulation count of an (n+2)-gon."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return _as_int(Fraction(comb(2 * n, n), n + 1), f"C_{n}")


def coeff_E(n):
    """Notched-dissection count: (n+2) * sum of D_{k-2} * D_{n-k}, k = 3..n-1."""
    if n < 3:
        raise ValueError("index must be at least 3")
    return (n + 2) * sum(coeff_D(k - 2) * coeff_D(n - k) for k in range(3, n))


def coeff_F(n):
    """Capped-dissection count: 2 * (n+2) * D_{n-2}."""
    if n < 3:
        raise ValueError("index must be at least 3")
    return 2 * (n + 2) * coeff_D(n - 2)
