"""Elliptic genera, the twisted form P(TM, xi, tau), the forms f_s and eta representatives.

Two independent routes compute every genus:

* ``bundle``: Ahat times the Chern character of the Witten bundle, built from
  symmetric and exterior power operations (:mod:`ellgenus.charclass`);
* ``theta``: the multiplicative sequence of the theta-function quotient
  ``x theta'(0)/theta(x) * theta2(x)/theta2(0)`` (:mod:`ellgenus.theta`).

Normalization of the ``(CP^1)^s`` integral: ``f_s = (-1)**(s/2) * g^(s)(0)``
where ``g`` is the scaled-variable quotient ``theta1 theta3 / theta2**2``
normalized to ``g(0) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .charclass import (
    LineClass,
    ManifoldData,
    RootSystem,
    TRIVIAL_LINE,
    ahat,
    cosh_half,
    evaluate_top,
    line_series,
    multiplicative_sequence,
    witten_ch,
    witten_twisted_ch,
)
from .qcore import (
    QSeries,
    imag_part,
    jet_substitute_sum,
    qs_invert,
    qs_is_integral,
    qs_reduce_mod,
    real_part,
)
from .theta import VAR, RealityError, theta_jet, theta_ratio0

GROUP = "Gamma0(2)"
PIPELINES = ("bundle", "theta")


class ClaimViolation(AssertionError):
    """A structural claim (constant term, integrality, grid) failed."""


@dataclass(frozen=True)
class GenusResult:
    series: QSeries
    weight: int
    pipeline: str
    group: str = GROUP
    reduction: str = "none"

    def header(self) -> dict[str, str]:
        return {"weight": str(self.weight), "group": self.group,
                "pipeline": self.pipeline, "reduction": self.reduction}


@dataclass(frozen=True)
class FsForm:
    s: int
    series: QSeries
    pipeline: str = "jet"

    @property
    def weight(self) -> int:
        return self.s

    def header(self) -> dict[str, str]:
        return {"weight": str(self.s), "group": GROUP, "pipeline": self.pipeline,
                "reduction": "none"}


@dataclass(frozen=True)
class EtaRepresentative:
    series: QSeries
    reduction: str
    s: int
    weight: int | None = None

    def header(self) -> dict[str, str]:
        w = f"(boundary weight) - {self.s}" if self.weight is None else str(self.weight)
        return {"weight": w, "group": GROUP, "pipeline": f"f_{self.s}^-1 * boundary",
                "reduction": self.reduction}


def export(series: QSeries) -> QSeries:
    """Move a series to the ``q^(1/2)`` grid, asserting it is real and fits."""
    for e, c in series.items():
        if imag_part(c):
            raise RealityError(f"non-real coefficient at q^{e}")
    if not series.fits_grid(2):
        bad = next(e for e, _ in series.items() if (e * 2).denominator != 1)
        raise ClaimViolation(f"term q^{bad} is off the q^(1/2) grid")
    return series.map_coefficients(real_part).regrade(2)


def _cutoff(order) -> Fraction:
    order = Fraction(order)
    if order <= 0:
        raise ValueError("order must be positive")
    return order


# --------------------------------------------------------------------------
# theta-side building blocks
# --------------------------------------------------------------------------


def _even_coeffs(jet, cap: int, what: str) -> list[QSeries]:
    out = []
    for n in range(cap + 1):
        c = export(jet[n])
        if n % 2 and c:
            raise ClaimViolation(f"{what} has an odd coefficient at degree {n}")
        out.append(c)
    return out


@lru_cache(maxsize=None)
def quotient_jet(cap: int, order: Fraction):
    """``g(vt) = theta1(vt) theta3(vt) theta2(0)^2 / (theta1(0) theta3(0) theta2(vt)^2)``."""
    t1 = theta_jet("theta1", cap, order)
    t2 = theta_jet("theta2", cap, order)
    t3 = theta_jet("theta3", cap, order)
    num = t1 * t3 * (t2[0] * t2[0])
    den = t2 * t2 * (t1[0] * t3[0])
    return num / den


@lru_cache(maxsize=None)
def tangent_jet(cap: int, order: Fraction):
    """``vt theta'(0)/theta(vt) * theta2(vt)/theta2(0)`` as a jet of degree ``cap``."""
    th = theta_jet("theta", cap + 1, order).divide_by_variable(VAR)
    t2 = theta_jet("theta2", cap, order)
    return th.inverse() * th[0] * (t2 / t2[0])


def _imaginary_rescale(coeffs: list[QSeries]) -> list[QSeries]:
    """Coefficients of ``F(x / 2i)`` from those of an even ``F(vt)``."""
    return [c * Fraction(-1, 4) ** (k // 2) for k, c in enumerate(coeffs)]


def tangent_characteristic(half_dim: int, order) -> list[QSeries]:
    """Characteristic series in ``y = x**2`` for the theta-route genus.

    The divided root ``x/(2*pi*i)`` enters the theta quotient as
    ``vt = x/(2i)``, which leaves rational coefficients since it is even.
    """
    order = _cutoff(order)
    coeffs = _even_coeffs(tangent_jet(2 * half_dim, order), 2 * half_dim, "tangent quotient")
    resc = _imaginary_rescale(coeffs)
    return [resc[2 * k] for k in range(half_dim + 1)]


def line_characteristic(half_dim: int, order) -> list[QSeries]:
    """Coefficients in ``u`` of ``g(u/2i)`` up to ``u**(2*half_dim)``."""
    order = _cutoff(order)
    cap = 2 * half_dim
    coeffs = _even_coeffs(quotient_jet(cap, order), cap, "theta quotient")
    return _imaginary_rescale(coeffs)


# --------------------------------------------------------------------------
# genera
# --------------------------------------------------------------------------


def _check_dim(M: ManifoldData):
    if M.dim % 4:
        raise ValueError(f"dimension {M.dim} is not divisible by 4")


def elliptic_genus(M: ManifoldData, order, pipeline: str = "bundle") -> GenusResult:
    """``int_M Ahat ch(Theta_q(TM))`` below ``q**order``."""
    _check_dim(M)
    order = _cutoff(order)
    rs = M.root_system
    if pipeline == "bundle":
        cls = ahat(rs) * witten_ch(rs, order)
    elif pipeline == "theta":
        cls = multiplicative_sequence(tangent_characteristic(rs.half_dim, order), rs)
    else:
        raise ValueError(f"unknown pipeline {pipeline!r}")
    return GenusResult(export(evaluate_top(cls, M)).truncate(order), 2 * rs.half_dim, pipeline)


def p_form_class(rs: RootSystem, lc: LineClass, order, pipeline: str = "theta"):
    """The symmetric series whose top part is ``P(TM, xi, tau)``."""
    order = _cutoff(order)
    if pipeline == "bundle":
        cls = ahat(rs) * witten_twisted_ch(rs, lc, order)
        if lc.present:
            cls = cls * cosh_half(rs)
        return cls
    if pipeline == "theta":
        cls = multiplicative_sequence(tangent_characteristic(rs.half_dim, order), rs)
        if lc.present:
            cls = cls * line_series(line_characteristic(rs.half_dim, order), rs)
        return cls
    raise ValueError(f"unknown pipeline {pipeline!r}")


def p_form(M: ManifoldData, order, pipeline: str = "theta") -> GenusResult:
    """``int_M Ahat cosh(c/2) ch(Theta_q(TM, xi))``; trivial ``xi`` without line data."""
    _check_dim(M)
    lc = TRIVIAL_LINE if M.line_numbers is None else LineClass(True)
    cls = p_form_class(M.root_system, lc, order, pipeline)
    return GenusResult(export(evaluate_top(cls, M)).truncate(_cutoff(order)), M.dim // 2, pipeline)


# --------------------------------------------------------------------------
# the forms f_s
# --------------------------------------------------------------------------


def _check_s(s: int):
    if not isinstance(s, int) or s < 2 or s % 2:
        raise ValueError(f"s must be an even integer >= 2, got {s!r}")


def _assert_fs_claims(s: int, series: QSeries) -> None:
    if series.coeff(0) != 1:
        raise ClaimViolation(f"f_{s} has constant term {series.coeff(0)}, not 1")
    ok, where = qs_is_integral(series)
    if not ok:
        raise ClaimViolation(f"f_{s} has a non-integral coefficient at q^{where}")


def f_s(s: int, order) -> FsForm:
    """``int_{(CP^1)^s}`` of the theta quotient at ``z_1 + ... + z_s``, via jet extraction."""
    _check_s(s)
    order = _cutoff(order)
    g = quotient_jet(s, order)
    zs = [f"z{j + 1}" for j in range(s)]
    top = jet_substitute_sum(g, zs).coefficient((1,) * s)
    series = export(top * (-1) ** (s // 2)).truncate(order)
    _assert_fs_claims(s, series)
    return FsForm(s, series)


def f_s_closed(s: int, order) -> FsForm:
    """The closed theta-derivative formulas for ``f_2`` and ``f_4``."""
    order = _cutoff(order)
    if s not in (2, 4):
        raise ValueError(f"no closed formula for s = {s}")
    d1, d2, d3 = (theta_ratio0(k, 2, order) for k in ("theta1", "theta2", "theta3"))
    if s == 2:
        series = -(d1 - d2 * 2 + d3)
    else:
        t1, t2, t3 = (theta_ratio0(k, 4, order) for k in ("theta1", "theta2", "theta3"))
        series = (t1 - t2 * 2 + t3 + d2 * d2 * 18
                  - d1 * d2 * 12 - d3 * d2 * 12 + d1 * d3 * 6)
    series = export(series).truncate(order)
    _assert_fs_claims(s, series)
    return FsForm(s, series, pipeline="closed")


def f_s_inverse(s: int, order) -> QSeries:
    """``1/f_s``; integral because ``f_s`` is integral with constant term 1."""
    f = f_s(s, order).series
    inv = qs_invert(f, integral=True)
    ok, where = qs_is_integral(inv)
    if not ok:
        raise ClaimViolation(f"1/f_{s} is non-integral at q^{where}")
    return inv


# --------------------------------------------------------------------------
# eta-invariant representatives
# --------------------------------------------------------------------------


def _modulus_label(modulus) -> str:
    if modulus in (None, "none"):
        return "none"
    if modulus == "integers":
        return "mod Z[[q^(1/2)]], residues in [0,1)"
    return f"mod {int(modulus)}, residues in [0,{int(modulus)})"


def eta_representative(boundary: QSeries, s: int, order=None, modulus="none",
                       weight: int | None = None) -> EtaRepresentative:
    """``f_s^{-1} * boundary``, optionally reduced coefficient-wise.

    ``boundary`` is the characteristic integral over the bounding manifold
    (weight ``2m + s``); ``s = 0`` means the manifold bounds itself and
    ``f_0 = 1``.  ``modulus`` is ``"none"``, ``"integers"`` or a positive
    integer (``2k`` for the refined mod-``2k`` reductions).
    """
    if s < 0 or s % 2:
        raise ValueError(f"s must be an even non-negative integer, got {s!r}")
    if not boundary.fits_grid(2):
        raise ClaimViolation("boundary integral is not on the q^(1/2) grid")
    boundary = boundary.regrade(2)
    if order is None:
        if boundary.order is None:
            raise ValueError("exact boundary data needs an explicit order")
        order = boundary.cutoff
    order = _cutoff(order)
    boundary = boundary.truncate(order)
    if s == 0:
        series = boundary
    else:
        series = boundary * f_s_inverse(s, order)
    if modulus not in (None, "none"):
        series = qs_reduce_mod(series, modulus)
    rep_weight = None if weight is None else weight - s
    return EtaRepresentative(series, _modulus_label(modulus), s, rep_weight)


def fs_table(max_s: int, order) -> dict[int, FsForm]:
    """``f_s`` for every even ``s <= max_s``."""
    return {s: f_s(s, order) for s in range(2, max_s + 1, 2)}


__all__ = [
    "GenusResult", "FsForm", "EtaRepresentative", "ClaimViolation", "elliptic_genus",
    "p_form", "p_form_class", "f_s", "f_s_closed", "f_s_inverse", "eta_representative",
    "tangent_characteristic", "line_characteristic", "quotient_jet", "tangent_jet",
    "export", "fs_table", "GROUP", "PIPELINES",
]

