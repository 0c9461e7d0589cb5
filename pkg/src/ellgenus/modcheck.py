"""Numerical checks of modular transformation behaviour for truncated q-series.

Series are evaluated with mpmath at a configurable number of decimal digits;
exact coefficients are converted only at evaluation time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .qcore import GaussianRational, QSeries
from .theta import ThetaKind, TransformRule

DIGITS_ENV = "ELLGENUS_DIGITS"
DEFAULT_TAUS = (2j, 1 + 2j, 3j)
DEFAULT_TOL = 1e-6


def default_digits() -> int:
    try:
        return int(os.environ.get(DIGITS_ENV, "40"))
    except ValueError:
        return 40


@dataclass(frozen=True)
class GroupElement:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"({self.a},{self.b},{self.c},{self.d}) has determinant != 1")

    def act(self, tau):
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau, weight: int):
        return (self.c * tau + self.d) ** weight

    def __str__(self):
        return f"({self.a},{self.b},{self.c},{self.d})"

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        parts = [int(x) for x in text.replace("(", "").replace(")", "").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected a,b,c,d; got {text!r}")
        return cls(*parts)


IDENTITY = GroupElement(1, 0, 0, 1)
GENERATORS = (GroupElement(1, 2, 0, 1), GroupElement(1, 0, 1, 1), GroupElement(-1, 0, 0, -1))


def gamma0_2_contains(g) -> bool:
    """True iff ``g`` has determinant 1 and even upper-right entry."""
    if isinstance(g, GroupElement):
        a, b, c, d = g.a, g.b, g.c, g.d
    else:
        a, b, c, d = g
    return a * d - b * c == 1 and b % 2 == 0


def _mp(c):
    if isinstance(c, GaussianRational):
        return mpmath.mpc(_mp(c.real), _mp(c.imag))
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def eval_q(series: QSeries, tau, digits: int | None = None):
    """Sum ``coeff * q**(n/D)`` with ``q**(1/D) = exp(2*pi*i*tau/D)``."""
    return eval_q_with_tail(series, tau, digits)[0]


def eval_q_with_tail(series: QSeries, tau, digits: int | None = None):
    """Value and the heuristic truncation-tail bound ``|q|^N/(1-|q|^(1/D)) * max|c|``."""
    digits = default_digits() if digits is None else digits
    with mpmath.workdps(digits):
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        step = mpmath.exp(2j * mpmath.pi * tau / series.denom)
        total = mpmath.mpc(0)
        cmax = mpmath.mpf(0)
        for n, c in series.terms.items():
            x = _mp(c)
            total += x * step ** n
            cmax = max(cmax, abs(x))
        if series.order is None:
            tail = mpmath.mpf(0)
        else:
            r = abs(step)
            tail = r ** series.order / (1 - r) * cmax
        return +total, +tail


@dataclass(frozen=True)
class Sample:
    tau: complex
    gtau: complex
    lhs: object
    rhs: object
    relerr: float
    tail: float
    status: str  # "ok", "fail" or "rejected"


@dataclass(frozen=True)
class ModularCheckReport:
    element: GroupElement
    weight: int
    samples: tuple[Sample, ...]
    cutoff: Fraction | None
    tol: float
    verdict: str = field(default="")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def render_text(self) -> str:
        lines = [f"element: {self.element}", f"weight: {self.weight}",
                 f"truncation: O(q^({self.cutoff}))", f"tolerance: {self.tol:g}"]
        for s in self.samples:
            lines.append(f"  tau={_c(s.tau)} -> {_c(s.gtau)}  relerr={s.relerr:.3e}  "
                         f"tail={s.tail:.3e}  {s.status}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    def render_kv(self) -> str:
        return "\n".join(
            f"element={self.element} weight={self.weight} tau={_c(s.tau)} "
            f"relerr={s.relerr:.6e} verdict={s.status}" for s in self.samples
        ) + f"\nelement={self.element} weight={self.weight} verdict={self.verdict}"


def _c(z) -> str:
    z = complex(z)
    return f"{z.real:g}{z.imag:+g}i"


def check_modular_weight(series: QSeries, weight: int, g: GroupElement,
                         taus: Sequence = DEFAULT_TAUS, tol: float = DEFAULT_TOL,
                         digits: int | None = None) -> ModularCheckReport:
    """Compare ``f(g tau)`` against ``(c tau + d)**weight * f(tau)`` at each sample.

    A sample is rejected (not failed) when a truncation tail bound exceeds
    ``tol/10``: the fix is a longer series, not a different verdict.
    """
    if not gamma0_2_contains(g):
        raise ValueError(f"{g} is not in Gamma0(2)")
    digits = default_digits() if digits is None else digits
    samples = []
    with mpmath.workdps(digits):
        for tau in taus:
            t = mpmath.mpc(tau)
            gt = g.act(t)
            lhs, tail_l = eval_q_with_tail(series, gt, digits)
            val, tail_r = eval_q_with_tail(series, t, digits)
            factor = g.automorphy(t, weight)
            rhs = factor * val
            scale = abs(rhs) if abs(rhs) else mpmath.mpf(1)
            relerr = float(abs(lhs - rhs) / scale)
            tail = float(max(tail_l / scale, tail_r * abs(factor) / scale))
            if tail >= tol / 10:
                status = "rejected"
            elif relerr < tol:
                status = "ok"
            else:
                status = "fail"
            samples.append(Sample(complex(t), complex(gt), lhs, rhs, relerr, tail, status))
    statuses = {s.status for s in samples}
    if "fail" in statuses:
        verdict = "fail"
    elif "rejected" in statuses:
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return ModularCheckReport(g, weight, tuple(samples), series.cutoff, tol, verdict)


# --------------------------------------------------------------------------
# theta values and transformation-table validation
# --------------------------------------------------------------------------


def theta_value(kind, v, tau, digits: int | None = None, eps=None):
    """Numerical value of a theta product at ``(v, tau)``, same normalization as the q-expansions."""
    kind = ThetaKind.parse(kind)
    digits = default_digits() if digits is None else digits
    with mpmath.workdps(digits + 10):
        v = mpmath.mpc(v)
        tau = mpmath.mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        qh = mpmath.exp(1j * mpmath.pi * tau)
        e = mpmath.exp(2j * mpmath.pi * v)
        eps = mpmath.mpf(10) ** (-digits - 5) if eps is None else eps
        if kind in (ThetaKind.THETA, ThetaKind.THETA1):
            trig = mpmath.sin(mpmath.pi * v) if kind is ThetaKind.THETA else mpmath.cos(mpmath.pi * v)
            val = 2 * mpmath.exp(2j * mpmath.pi * tau / 8) * trig
            sign = -1 if kind is ThetaKind.THETA else 1
            half = False
        else:
            val = mpmath.mpc(1)
            sign = -1 if kind is ThetaKind.THETA2 else 1
            half = True
        j = 1
        while True:
            w = q ** (j - 1) * qh if half else q ** j
            val *= (1 - q ** j) * (1 + sign * e * w) * (1 + sign * w / e)
            if abs(w) < eps and abs(q ** j) < eps:
                break
            j += 1
        return +val


def validate_transform_rule(rule: TransformRule, taus: Iterable = (0.3 + 1.1j, -0.2 + 0.8j),
                            vs: Iterable = (0.13 + 0.07j, 0.31), digits: int = 30) -> float:
    """Largest relative error of the rule over sample points."""
    worst = 0.0
    with mpmath.workdps(digits):
        for tau in taus:
            tau = mpmath.mpc(tau)
            for v in vs:
                v = mpmath.mpc(v)
                mult = mpmath.exp(2j * mpmath.pi * _mp(rule.phase))
                if rule.generator == "I":
                    lhs = theta_value(rule.kind, v, tau, digits)
                    rhs = theta_value(rule.target, v, tau, digits)
                elif rule.generator == "T":
                    lhs = theta_value(rule.kind, v, tau + 1, digits)
                    rhs = mult * theta_value(rule.target, v, tau, digits)
                else:
                    lhs = theta_value(rule.kind, v, -1 / tau, digits)
                    auto = mpmath.sqrt(tau / 1j) * mpmath.exp(1j * mpmath.pi * tau * v * v)
                    rhs = mult * auto * theta_value(rule.target, tau * v, tau, digits)
                worst = max(worst, float(abs(lhs - rhs) / abs(rhs)))
    return worst


__all__ = [
    "GroupElement", "IDENTITY", "GENERATORS", "gamma0_2_contains", "eval_q", "eval_q_with_tail",
    "Sample", "ModularCheckReport", "check_modular_weight", "theta_value",
    "validate_transform_rule", "default_digits", "DEFAULT_TAUS", "DEFAULT_TOL",
]
