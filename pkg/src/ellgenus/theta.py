"""Jacobi theta functions as exact jets in the scaled variable ``vt = pi*v``.

The four kinds follow the product formulas

    theta (v,t) = 2 q^(1/8) sin(pi v) prod (1-q^j)(1-e^{2 pi i v} q^j)(1-e^{-2 pi i v} q^j)
    theta1(v,t) = 2 q^(1/8) cos(pi v) prod (1-q^j)(1+e^{2 pi i v} q^j)(1+e^{-2 pi i v} q^j)
    theta2(v,t) = prod (1-q^j)(1-e^{2 pi i v} q^(j-1/2))(1-e^{-2 pi i v} q^(j-1/2))
    theta3(v,t) = prod (1-q^j)(1+e^{2 pi i v} q^(j-1/2))(1+e^{-2 pi i v} q^(j-1/2))

Jets are in ``vt = pi*v``, so the ``n``-th jet derivative is
``theta^(n)(0, t) / pi**n`` and no transcendental constant enters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qcore import GaussianRational, Jet, QSeries, imag_part, real_part

VAR = "v"

SCALED_CONVENTION = "jet variable v~ = pi*v; derivatives are theta^(n)(0,tau)/pi^n"


class ThetaKind(enum.Enum):
    THETA = "theta"
    THETA1 = "theta1"
    THETA2 = "theta2"
    THETA3 = "theta3"

    @classmethod
    def parse(cls, name) -> "ThetaKind":
        if isinstance(name, cls):
            return name
        return cls(str(name).lower())


class RealityError(AssertionError):
    """An imaginary residue survived where the expansion must be real."""


def _exp_jet(sign: int, d: int) -> list:
    """Taylor coefficients of ``exp(sign * 2i * vt)`` up to degree ``d``."""
    z = GaussianRational(0, 2 * sign)
    out = []
    power = GaussianRational(1)
    for n in range(d + 1):
        out.append(power * Fraction(1, math.factorial(n)))
        power = power * z
    return out


def _trig_jet(kind: str, d: int) -> list:
    out = []
    for n in range(d + 1):
        if kind == "sin" and n % 2 == 1:
            out.append(Fraction((-1) ** (n // 2), math.factorial(n)))
        elif kind == "cos" and n % 2 == 0:
            out.append(Fraction((-1) ** (n // 2), math.factorial(n)))
        else:
            out.append(0)
    return out


def _pair_factor(exponent: Fraction, sign: int, d: int, grid: int) -> Jet:
    """``(1 + sign*e^{2i vt} w)(1 + sign*e^{-2i vt} w)`` with ``w = q**exponent``.

    Built from the two Gaussian-coefficient exponential jets; the product is
    real, and is handed back with rational coefficients only.
    """
    cut = grid
    factors = []
    for s in (1, -1):
        coeffs = []
        for n, e in enumerate(_exp_jet(s, d)):
            terms = {int(exponent * 2): sign * e}
            if n == 0:
                terms[0] = 1
            coeffs.append(QSeries(terms, cut, 2))
        factors.append(Jet.univariate(VAR, d, coeffs))
    prod = factors[0] * factors[1]
    for m, c in prod.coeffs.items():
        for e, x in c.items():
            if imag_part(x):
                raise RealityError(f"pair factor kept an imaginary part at q^{e}")
    return prod


@lru_cache(maxsize=None)
def _theta_jet(kind: ThetaKind, d: int, cutoff: Fraction) -> Jet:
    grid = math.ceil(cutoff * 2)
    if kind in (ThetaKind.THETA, ThetaKind.THETA1):
        shifts = [Fraction(j) for j in range(1, math.ceil(cutoff) + 2)]
        trig = _trig_jet("sin" if kind is ThetaKind.THETA else "cos", d)
        prefactor = QSeries({1: 2}, None, 8)
    else:
        shifts = [Fraction(2 * j - 1, 2) for j in range(1, math.ceil(cutoff) + 2)]
        trig = [1] + [0] * d
        prefactor = None
    sign = -1 if kind in (ThetaKind.THETA, ThetaKind.THETA2) else 1

    # every factor with exponent >= cutoff is 1 + O(q^cutoff); j <= ceil(N)+1 covers the rest
    result = Jet.univariate(VAR, d, [QSeries.constant(c, grid, 2) for c in trig])
    for j in range(1, math.ceil(cutoff) + 2):
        if j < cutoff:
            result = result * QSeries({0: 1, 2 * j: -1}, grid, 2)
    for w in shifts:
        if w < cutoff:
            result = result * _pair_factor(w, sign, d, grid)
    if prefactor is not None:
        result = result.map_coefficients(lambda c: (c * prefactor))
    else:
        result = result.map_coefficients(lambda c: c.regrade(8))
    return result.truncate(cutoff)


def theta_jet(kind, jet_cap: int, q_order) -> Jet:
    """Theta function of the given kind as a jet in ``vt`` of degree ``jet_cap``.

    Coefficients live on the ``q^(1/8)`` grid and are known below ``q**q_order``.
    """
    if jet_cap < 0:
        raise ValueError("jet cap must be non-negative")
    q_order = Fraction(q_order)
    if q_order <= 0:
        raise ValueError("q order must be positive")
    return _theta_jet(ThetaKind.parse(kind), int(jet_cap), q_order)


def theta_deriv0(kind, n: int, q_order) -> QSeries:
    """``n``-th ``vt``-derivative at ``vt = 0``, i.e. ``theta^(n)(0,tau)/pi**n``."""
    jet = theta_jet(kind, n, q_order)
    c = jet[n] * math.factorial(n)
    for e, x in c.items():
        if imag_part(x):
            raise RealityError(f"{ThetaKind.parse(kind).value}^({n})(0) has imaginary part at q^{e}")
    return c.map_coefficients(real_part)


def theta_ratio0(kind, n: int, q_order) -> QSeries:
    """``theta^(n)(0,tau) / (pi**n * theta(0,tau))``, on the half-integer grid."""
    return (theta_deriv0(kind, n, q_order) / theta_deriv0(kind, 0, q_order)).regrade(2)


# --------------------------------------------------------------------------
# transformation laws
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformRule:
    """How one kind transforms under a modular generator.

    For ``T`` the multiplier is ``exp(2*pi*i*phase)``.  For ``S`` it is
    ``extra * sqrt(tau/i) * exp(pi*i*tau*v**2)`` with the argument rescaled
    to ``tau*v``; ``extra`` is ``exp(2*pi*i*phase)`` as well.
    """

    kind: ThetaKind
    generator: str
    target: ThetaKind
    phase: Fraction
    multiplier: str


_T = ThetaKind
_TABLE = {
    (_T.THETA, "T"): (_T.THETA, Fraction(1, 8), "e^(pi i/4)"),
    (_T.THETA1, "T"): (_T.THETA1, Fraction(1, 8), "e^(pi i/4)"),
    (_T.THETA2, "T"): (_T.THETA3, Fraction(0), "1"),
    (_T.THETA3, "T"): (_T.THETA2, Fraction(0), "1"),
    (_T.THETA, "S"): (_T.THETA, Fraction(-1, 4), "(1/i) (tau/i)^(1/2) e^(pi i tau v^2)"),
    (_T.THETA1, "S"): (_T.THETA2, Fraction(0), "(tau/i)^(1/2) e^(pi i tau v^2)"),
    (_T.THETA2, "S"): (_T.THETA1, Fraction(0), "(tau/i)^(1/2) e^(pi i tau v^2)"),
    (_T.THETA3, "S"): (_T.THETA3, Fraction(0), "(tau/i)^(1/2) e^(pi i tau v^2)"),
}


def theta_transform_table(kind, generator: str) -> TransformRule:
    """Target kind and multiplier class for ``T: tau -> tau+1``, ``S: tau -> -1/tau``.

    ``generator="I"`` is the identity.  Rows are checked numerically by
    :func:`ellgenus.modcheck.validate_transform_rule`.
    """
    kind = ThetaKind.parse(kind)
    g = generator.upper()
    if g in ("I", "ID", "IDENTITY"):
        return TransformRule(kind, "I", kind, Fraction(0), "1")
    try:
        target, phase, mult = _TABLE[(kind, g)]
    except KeyError:
        raise ValueError(f"unknown generator {generator!r}") from None
    return TransformRule(kind, g, target, phase, mult)
