"""Reference values computed without the engine: plain Fraction lists on the q^(1/2) grid.

A series is a list ``c`` with ``c[k]`` the coefficient of ``q^(k/2)``.
"""

from fractions import Fraction
from math import factorial


def mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def long_division_inverse(a, n):
    """1/a by schoolbook long division (a[0] != 0)."""
    out = []
    rem = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(n):
        c = rem[k] / a[0]
        out.append(c)
        for j in range(k, n):
            if j - k < len(a):
                rem[j] -= c * a[j - k]
    return out


def _log_cos_taylor(nmax):
    """Taylor coefficients of log cos x, from (log cos)' = -tan and tan via sin/cos."""
    sin = [Fraction((-1) ** (k // 2), factorial(k)) if k % 2 else Fraction(0) for k in range(nmax + 1)]
    cos = [Fraction((-1) ** (k // 2), factorial(k)) if k % 2 == 0 else Fraction(0) for k in range(nmax + 1)]
    tan = [Fraction(0)] * (nmax + 1)
    for k in range(nmax + 1):
        tan[k] = sin[k] - sum(cos[j] * tan[k - j] for j in range(1, k + 1))
    out = [Fraction(0)] * (nmax + 1)
    for k in range(1, nmax + 1):
        out[k] = -tan[k - 1] / k
    return out


def theta_quotient_taylor(nmax, n):
    """Taylor coefficients in v of theta1*theta3*theta2(0)^2 / (theta1(0)*theta3(0)*theta2^2).

    Each coefficient is a q^(1/2)-grid list of length ``n``.  The log of every
    product factor ``(1 + s w e^{2iv})(1 + s w e^{-2iv}) / (1 + s w)^2`` is summed
    as a Lambert-type double series, then exponentiated.
    """
    logc = [[Fraction(0)] * n for _ in range(nmax + 1)]
    lc = _log_cos_taylor(nmax)
    for k in range(nmax + 1):
        logc[k][0] += lc[k]
    for k in range(2, nmax + 1, 2):
        pre = Fraction(2 * (-1) ** (k // 2) * 2 ** k, factorial(k))
        for m in range(1, n):
            base = pre * (-1) ** (m + 1) * Fraction(m) ** (k - 1)
            # theta1 factors: w = q^j, sign +
            for j in range(1, n):
                e = 2 * j * m
                if e >= n:
                    break
                logc[k][e] += base
            # theta3 (sign +) and theta2 (sign -, squared in the denominator): w = q^(j-1/2)
            for j in range(1, n):
                e = (2 * j - 1) * m
                if e >= n:
                    break
                logc[k][e] += base * (1 - 2 * (-1) ** m)
    # exp of sum_k logc[k] v^k via n E_n = sum_k k A_k E_{n-k}
    E = [[Fraction(0)] * n for _ in range(nmax + 1)]
    E[0][0] = Fraction(1)
    for d in range(1, nmax + 1):
        acc = [Fraction(0)] * n
        for k in range(1, d + 1):
            if any(logc[k]):
                t = mul(logc[k], E[d - k], n)
                acc = [x + k * y for x, y in zip(acc, t)]
        E[d] = [x / d for x in acc]
    return E


def f_s_lambert(s, n):
    """f_s = (-1)^(s/2) * s! * [v^s] of the theta quotient."""
    E = theta_quotient_taylor(s, n)
    sign = (-1) ** (s // 2)
    return [sign * factorial(s) * c for c in E[s]]


def theta1_zero(n):
    """theta1(0) = sum_{k>=0} 2 q^((2k+1)^2/8); returned on the q^(1/8) grid."""
    out = [0] * n
    k = 0
    while (2 * k + 1) ** 2 < n:
        out[(2 * k + 1) ** 2] += 2
        k += 1
    return out


def theta_jacobi_sum_derivative(kind, deriv, n):
    """Derivative in the scaled variable of the Fourier (sum) form of a theta function, on the 1/8 grid."""
    out = [0] * n
    r = 0
    while True:
        if kind in ("theta2", "theta3"):
            e = 4 * r * r  # q^(r^2/2)
            if e >= n:
                break
            for sgn in ((1, -1) if r else (1,)):
                term = (2 * sgn * r) ** deriv if deriv else 1
                # d^k/dv e^{2 i r v} = (2 i r)^k; only even k survive the symmetric sum
                if deriv % 2:
                    term = 0
                else:
                    term *= (-1) ** (deriv // 2)
                if kind == "theta2":
                    term *= (-1) ** r
                out[e] += term
        else:
            e = (2 * r + 1) ** 2  # q^((2r+1)^2/8)
            if e >= n:
                break
            a = 2 * r + 1
            if kind == "theta1":  # 2 cos(a v)
                term = 0 if deriv % 2 else 2 * a ** deriv * (-1) ** (deriv // 2)
            else:  # 2 (-1)^r sin(a v)
                term = 0 if deriv % 2 == 0 else 2 * (-1) ** r * a ** deriv * (-1) ** ((deriv - 1) // 2)
            out[e] += term
        r += 1
    return out
