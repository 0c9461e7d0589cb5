"""Exact coefficients, truncated q-series and nilpotent jets.

Every value here is immutable once built and all arithmetic is exact:
coefficients are ``int``, :class:`fractions.Fraction` or
:class:`GaussianRational`.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

__all__ = [
    "GaussianRational",
    "QSeries",
    "Jet",
    "GridError",
    "NonUnitError",
    "NonIntegralError",
    "JetError",
    "qs_arith",
    "qs_invert",
    "qs_is_integral",
    "qs_reduce_mod",
    "jet_mul",
    "jet_substitute_sum",
    "render_series",
    "parse_series",
]


class GridError(ValueError):
    """Exponent grids cannot be brought to a common denominator."""


class NonUnitError(ArithmeticError):
    """Series inversion attempted on a non-unit constant term."""


class NonIntegralError(ArithmeticError):
    """An integer-only operation met a non-integral coefficient."""


class JetError(ValueError):
    """Incompatible jet variables or a nilpotency cap violation."""


# --------------------------------------------------------------------------
# coefficients
# --------------------------------------------------------------------------


class GaussianRational:
    """``real + imag*i`` with rational parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real: Number = 0, imag: Number = 0):
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x.real, x.imag
        if isinstance(x, (int, Fraction)):
            return x, 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return normalize(GaussianRational(self.real + p[0], self.imag + p[1]))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return normalize(GaussianRational(self.real - p[0], self.imag - p[1]))

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return normalize(GaussianRational(p[0] - self.real, p[1] - self.imag))

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.real, self.imag
        c, d = p
        return normalize(GaussianRational(a * c - b * d, a * d + b * c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(Fraction(c) / n, Fraction(-d) / n)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(*p) / self

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.real == p[0] and self.imag == p[1]

    def __hash__(self):
        if not self.imag:
            return hash(self.real)
        return hash((self.real, self.imag))

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        return f"({_fmt_rational(self.real)})+({_fmt_rational(self.imag)})*I"


I = GaussianRational(0, 1)


def normalize(c):
    """Demote a coefficient to the smallest type of the tower holding it."""
    if isinstance(c, GaussianRational):
        if c.imag:
            return c
        c = c.real
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def is_integer_coeff(c) -> bool:
    c = normalize(c)
    return isinstance(c, int)


def real_part(c):
    if isinstance(c, GaussianRational):
        return normalize(c.real)
    return c


def imag_part(c):
    if isinstance(c, GaussianRational):
        return normalize(c.imag)
    return 0


def _fmt_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_coeff(c) -> str:
    c = normalize(c)
    if isinstance(c, GaussianRational):
        return str(c)
    return _fmt_rational(c)


# --------------------------------------------------------------------------
# q-series
# --------------------------------------------------------------------------


def _as_exponent(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    """Truncated series in ``q**(1/denom)`` with exact coefficients.

    ``terms`` maps the grid index ``n`` (exponent ``n/denom``) to a non-zero
    coefficient.  ``order`` is the grid cutoff: indices ``>= order`` are
    unknown.  ``order=None`` marks an exact (finite, fully known) series.
    """

    __slots__ = ("denom", "_terms", "order")

    def __init__(self, terms: Mapping[int, object] | None = None, order: int | None = None,
                 denom: int = 8):
        if denom <= 0:
            raise GridError("grid denominator must be positive")
        clean = {}
        if terms:
            for n, c in terms.items():
                if order is not None and n >= order:
                    continue
                c = normalize(c)
                if c:
                    clean[int(n)] = c
        self.denom = denom
        self.order = order
        self._terms = dict(sorted(clean.items()))

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, c=1, order: int | None = None, denom: int = 8) -> "QSeries":
        return cls({0: c}, order, denom)

    @classmethod
    def zero(cls, order: int | None = None, denom: int = 8) -> "QSeries":
        return cls({}, order, denom)

    @classmethod
    def monomial(cls, exponent, coeff=1, cutoff=None, denom: int = 8) -> "QSeries":
        """``coeff * q**exponent``; ``cutoff`` is a q-exponent or None."""
        n = _as_exponent(exponent) * denom
        if n.denominator != 1:
            raise GridError(f"exponent {exponent} not on the 1/{denom} grid")
        return cls({int(n): coeff}, _grid_cut(cutoff, denom), denom)

    @classmethod
    def from_exponents(cls, items: Iterable[tuple[object, object]], cutoff=None,
                       denom: int = 8) -> "QSeries":
        terms: dict[int, object] = {}
        for e, c in items:
            n = _as_exponent(e) * denom
            if n.denominator != 1:
                raise GridError(f"exponent {e} not on the 1/{denom} grid")
            terms[int(n)] = terms.get(int(n), 0) + c
        return cls(terms, _grid_cut(cutoff, denom), denom)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, object]:
        return dict(self._terms)

    @property
    def cutoff(self) -> Fraction | None:
        """The truncation point as a q-exponent."""
        return None if self.order is None else Fraction(self.order, self.denom)

    @property
    def is_exact(self) -> bool:
        return self.order is None

    def valuation(self) -> int | None:
        """Smallest stored grid index, or the cutoff for a zero series."""
        if self._terms:
            return next(iter(self._terms))
        return self.order

    def items(self):
        """``(exponent, coeff)`` pairs in ascending exponent order."""
        for n, c in self._terms.items():
            yield Fraction(n, self.denom), c

    def coeff(self, exponent) -> object:
        n = _as_exponent(exponent) * self.denom
        if n.denominator != 1:
            return 0
        n = int(n)
        if self.order is not None and n >= self.order:
            raise ValueError(f"coefficient of q^{exponent} lies beyond the truncation")
        return self._terms.get(n, 0)

    def coefficients(self, step=Fraction(1, 2), stop=None) -> list:
        """Dense coefficient list on the grid ``step``, up to ``stop`` (exclusive)."""
        step = _as_exponent(step)
        stop = self.cutoff if stop is None else _as_exponent(stop)
        if stop is None:
            raise ValueError("exact series needs an explicit stop")
        out = []
        e = Fraction(0)
        while e < stop:
            out.append(self.coeff(e))
            e += step
        return out

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- grids ------------------------------------------------------------

    def regrade(self, denom: int) -> "QSeries":
        """Re-express on the ``1/denom`` grid; raises if a term falls off it."""
        if denom == self.denom:
            return self
        terms = {}
        for n, c in self._terms.items():
            m = Fraction(n * denom, self.denom)
            if m.denominator != 1:
                raise GridError(f"q^{Fraction(n, self.denom)} is not on the 1/{denom} grid")
            terms[int(m)] = c
        order = None
        if self.order is not None:
            order = math.ceil(Fraction(self.order * denom, self.denom))
        return QSeries(terms, order, denom)

    def fits_grid(self, denom: int) -> bool:
        return all((n * denom) % self.denom == 0 for n in self._terms)

    def _promote(self, other: "QSeries") -> tuple["QSeries", "QSeries"]:
        if self.denom == other.denom:
            return self, other
        d = math.lcm(self.denom, other.denom)
        return self.regrade(d), other.regrade(d)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return QSeries.constant(other, None, self.denom)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._promote(other)
        order = _min_order(a.order, b.order)
        terms = dict(a._terms)
        for n, c in b._terms.items():
            terms[n] = terms.get(n, 0) + c
        return QSeries(terms, order, a.denom)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({n: -c for n, c in self._terms.items()}, self.order, self.denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                return QSeries.zero(self.order, self.denom)
            return QSeries({n: c * other for n, c in self._terms.items()}, self.order, self.denom)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._promote(other)
        if (a.order is None and not a) or (b.order is None and not b):
            return QSeries.zero(None, a.denom)
        order = _product_order(a, b)
        terms: dict[int, object] = {}
        bt = list(b._terms.items())
        for n1, c1 in a._terms.items():
            for n2, c2 in bt:
                n = n1 + n2
                if order is not None and n >= order:
                    break
                prev = terms.get(n)
                terms[n] = c1 * c2 if prev is None else prev + c1 * c2
        return QSeries(terms, order, a.denom)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * _scalar_inverse(other)
        if isinstance(other, QSeries):
            return qs_div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return qs_div(other, self)

    def __pow__(self, k: int):
        if k < 0:
            return qs_invert(self) ** (-k)
        result = QSeries.constant(1, None, self.denom)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent) -> "QSeries":
        """Multiply by ``q**exponent``."""
        e = _as_exponent(exponent)
        d = math.lcm(self.denom, e.denominator)
        a = self.regrade(d)
        return a._shift_index(int(e * d))

    def _shift_index(self, n: int) -> "QSeries":
        order = None if self.order is None else self.order + n
        return QSeries({k + n: c for k, c in self._terms.items()}, order, self.denom)

    def truncate(self, cutoff) -> "QSeries":
        """Drop everything at q-exponent ``>= cutoff``."""
        n = _grid_cut(cutoff, self.denom)
        return QSeries(self._terms, _min_order(self.order, n), self.denom)

    def map_coefficients(self, fn) -> "QSeries":
        return QSeries({n: fn(c) for n, c in self._terms.items()}, self.order, self.denom)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, QSeries) else other
        if other is None:
            return NotImplemented
        a, b = self._promote(other)
        order = _min_order(a.order, b.order)
        ta = {n: c for n, c in a._terms.items() if order is None or n < order}
        tb = {n: c for n, c in b._terms.items() if order is None or n < order}
        return ta == tb

    __hash__ = None

    def identical(self, other: "QSeries") -> bool:
        """Strict equality: same grid, same cutoff, same terms."""
        return (self.denom == other.denom and self.order == other.order
                and self._terms == other._terms)

    def __repr__(self):
        body = " + ".join(f"{_fmt_coeff(c)}*q^({_fmt_rational(e)})" for e, c in self.items())
        tail = "" if self.order is None else f" + O(q^({_fmt_rational(self.cutoff)}))"
        return f"QSeries({body or '0'}{tail})"

    def __str__(self):
        return render_series(self)


def _grid_cut(cutoff, denom: int) -> int | None:
    if cutoff is None:
        return None
    return math.ceil(_as_exponent(cutoff) * denom)


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _product_order(a: QSeries, b: QSeries) -> int | None:
    cands = []
    if a.order is not None:
        cands.append(a.order + b.valuation())
    if b.order is not None:
        cands.append(b.order + a.valuation())
    return min(cands) if cands else None


# --------------------------------------------------------------------------
# named operations
# --------------------------------------------------------------------------


def qs_arith(a: QSeries, b: QSeries, op: str) -> QSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def qs_invert(a: QSeries, cutoff=None, integral: bool = False) -> QSeries:
    """Multiplicative inverse of a series with invertible constant term.

    Exact inputs need ``cutoff`` (a q-exponent) since the inverse is infinite.
    With ``integral=True`` the constant term must be +-1, so the inverse
    stays in ``Z[[q^(1/D)]]``.
    """
    a0 = a._terms.get(0, 0)
    if a.valuation() is not None and a.valuation() < 0:
        raise NonUnitError("series has negative valuation")
    if not a0:
        raise NonUnitError("constant term is zero")
    if integral and a0 not in (1, -1):
        raise NonUnitError(f"constant term {a0} is not a unit of Z")
    order = a.order
    if cutoff is not None:
        order = _min_order(order, _grid_cut(cutoff, a.denom))
    if order is None:
        raise ValueError("inverting an exact series requires a cutoff")
    inv0 = _scalar_inverse(a0)
    rest = [(n, c) for n, c in a._terms.items() if n > 0]
    out: dict[int, object] = {0: inv0}
    # out[n] = -inv0 * sum_{k>0} a[k] * out[n-k]
    for n in range(1, order):
        acc = 0
        for k, c in rest:
            if k > n:
                break
            prev = out.get(n - k)
            if prev:
                acc = acc + c * prev
        if acc:
            out[n] = -acc * inv0
    return QSeries(out, order, a.denom)


def qs_div(a: QSeries, b: QSeries) -> QSeries:
    """``a / b`` for ``b`` with any non-zero leading coefficient."""
    a, b = a._promote(b)
    if not b:
        raise NonUnitError("division by a zero series")
    v = b.valuation()
    b0 = b._shift_index(-v)
    a0 = a._shift_index(-v)
    if b0.order is None:
        if len(b0) == 1:
            return a0 * _scalar_inverse(b0._terms[0])
        if a0.order is None:
            raise ValueError("dividing exact series needs a truncation")
        inv = qs_invert(b0, Fraction(max(a0.order - (a0.valuation() or 0), 1), b.denom))
    else:
        inv = qs_invert(b0)
    return a0 * inv


def _scalar_inverse(c):
    if isinstance(c, GaussianRational):
        return normalize(1 / c)
    return normalize(Fraction(1) / c)


def qs_is_integral(a: QSeries) -> tuple[bool, Fraction | None]:
    """``(True, None)`` or ``(False, first offending exponent)``."""
    for e, c in a.items():
        if not is_integer_coeff(c):
            return False, e
    return True, None


def qs_reduce_mod(a: QSeries, modulus) -> QSeries:
    """Coefficient-wise residues in ``[0, k)``, or fractional parts for ``"integers"``."""
    terms = {}
    if modulus == "integers":
        for n, c in a._terms.items():
            if isinstance(c, GaussianRational):
                raise NonIntegralError("cannot reduce a non-real coefficient mod Z")
            c = Fraction(c)
            terms[n] = c - math.floor(c)
        return QSeries(terms, a.order, a.denom)
    k = int(modulus)
    if k <= 0:
        raise ValueError("modulus must be a positive integer")
    for e, c in a.items():
        if not is_integer_coeff(c):
            raise NonIntegralError(f"coefficient of q^{e} is {c}, not an integer")
    for n, c in a._terms.items():
        terms[n] = normalize(c) % k
    return QSeries(terms, a.order, a.denom)


# --------------------------------------------------------------------------
# canonical text rendering
# --------------------------------------------------------------------------


def render_series(a: QSeries) -> str:
    """One ``q^(e): c`` line per term, then ``O(q^(cutoff))`` when truncated."""
    lines = [f"q^({_fmt_rational(e)}): {_fmt_coeff(c)}" for e, c in a.items()]
    if a.order is not None:
        lines.append(f"O(q^({_fmt_rational(a.cutoff)}))")
    return "\n".join(lines)


_TERM_RE = re.compile(r"^q\^\((-?\d+(?:/\d+)?)\):\s*(-?\d+(?:/\d+)?)$")
_TAIL_RE = re.compile(r"^O\(q\^\((-?\d+(?:/\d+)?)\)\)$")


def parse_series(text: str, denom: int | None = None) -> QSeries:
    """Inverse of :func:`render_series` for real coefficients.

    Lines outside the term/tail syntax (headers, blanks, ``#`` comments) are
    skipped.  The grid is the smallest denominator fitting all exponents
    unless ``denom`` is given.
    """
    items = []
    cutoff = None
    for raw in text.splitlines():
        line = raw.strip()
        m = _TERM_RE.match(line)
        if m:
            items.append((Fraction(m.group(1)), Fraction(m.group(2))))
            continue
        m = _TAIL_RE.match(line)
        if m:
            cutoff = Fraction(m.group(1))
    if denom is None:
        denom = 1
        for e, _ in items:
            denom = math.lcm(denom, e.denominator)
        if cutoff is not None:
            denom = math.lcm(denom, cutoff.denominator)
    return QSeries.from_exponents(items, cutoff, denom)


# --------------------------------------------------------------------------
# jets: truncated polynomials in nilpotent variables, QSeries coefficients
# --------------------------------------------------------------------------


class Jet:
    """Polynomial in nilpotent variables with :class:`QSeries` coefficients.

    ``caps[i]`` is the largest exponent kept for ``vars[i]``; ``max_degree``
    bounds the total degree (None: only the individual caps).
    """

    __slots__ = ("vars", "caps", "max_degree", "_coeffs")

    def __init__(self, vars: Iterable[str], caps: Iterable[int],
                 coeffs: Mapping[tuple[int, ...], QSeries] | None = None,
                 max_degree: int | None = None):
        self.vars = tuple(vars)
        self.caps = tuple(int(c) for c in caps)
        if len(self.vars) != len(self.caps):
            raise JetError("one cap per variable required")
        if len(set(self.vars)) != len(self.vars):
            raise JetError("duplicate jet variable")
        self.max_degree = max_degree
        clean = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != len(self.vars):
                raise JetError("multi-index length does not match variables")
            if not self._admissible(m):
                continue
            if isinstance(c, QSeries):
                if c or c.order is not None:
                    clean[m] = c
            elif c:
                clean[m] = QSeries.constant(c)
        self._coeffs = clean

    def _admissible(self, m) -> bool:
        if any(e < 0 or e > cap for e, cap in zip(m, self.caps)):
            return False
        return self.max_degree is None or sum(m) <= self.max_degree

    @classmethod
    def univariate(cls, name: str, cap: int, coeffs: Iterable[QSeries]) -> "Jet":
        return cls((name,), (cap,), {(k,): c for k, c in enumerate(coeffs)})

    @classmethod
    def constant(cls, c, vars, caps, max_degree=None) -> "Jet":
        vars = tuple(vars)
        return cls(vars, caps, {(0,) * len(vars): c}, max_degree)

    @classmethod
    def variable(cls, name: str, vars, caps, max_degree=None, coeff=1) -> "Jet":
        vars = tuple(vars)
        m = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, caps, {m: coeff}, max_degree)

    # -- inspection -------------------------------------------------------

    def coefficient(self, monomial) -> QSeries:
        if isinstance(monomial, Mapping):
            monomial = tuple(monomial.get(v, 0) for v in self.vars)
        monomial = tuple(monomial)
        if monomial in self._coeffs:
            return self._coeffs[monomial]
        return QSeries.zero(self._min_order(), self._denom())

    def __getitem__(self, k: int) -> QSeries:
        """Coefficient of ``var**k`` in a univariate jet."""
        if len(self.vars) != 1:
            raise JetError("integer indexing is only for univariate jets")
        return self.coefficient((k,))

    @property
    def coeffs(self) -> dict[tuple[int, ...], QSeries]:
        return dict(self._coeffs)

    def _min_order(self):
        cut = None
        for c in self._coeffs.values():
            if c.order is not None:
                e = c.cutoff
                cut = e if cut is None else min(cut, e)
        return None if cut is None else math.ceil(cut * self._denom())

    def _denom(self) -> int:
        d = 1
        for c in self._coeffs.values():
            d = math.lcm(d, c.denom)
        return d if self._coeffs else 8

    def _check(self, other: "Jet"):
        if self.vars != other.vars or self.caps != other.caps:
            raise JetError(f"incompatible jets {self.vars}{self.caps} vs {other.vars}{other.caps}")

    def _like(self, coeffs) -> "Jet":
        return Jet(self.vars, self.caps, coeffs, self.max_degree)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.vars, self.caps, self.max_degree)
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out[m] + c if m in out else c
        return Jet(self.vars, self.caps, out, _min_deg(self.max_degree, other.max_degree))

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return self._like({m: c * other for m, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        if isinstance(other, QSeries):
            return self._like({m: c / other for m, c in self._coeffs.items()})
        return self * (Fraction(1) / other)

    def inverse(self) -> "Jet":
        """Inverse via the nilpotent geometric series around the constant term."""
        zero = (0,) * len(self.vars)
        c0 = self._coeffs.get(zero)
        if c0 is None or not c0:
            raise NonUnitError("jet constant term is zero")
        inv0 = 1 / c0
        r = self._like({m: c * inv0 for m, c in self._coeffs.items() if m != zero})
        depth = self._nil_depth()
        total = Jet.constant(QSeries.constant(1, None, inv0.denom), self.vars, self.caps,
                             self.max_degree)
        power = total
        for _ in range(depth):
            power = -(power * r)
            if not power._coeffs:
                break
            total = total + power
        return total * inv0

    def _nil_depth(self) -> int:
        d = sum(self.caps)
        return d if self.max_degree is None else min(d, self.max_degree)

    def divide_by_variable(self, name: str) -> "Jet":
        """Exact division by a variable; every term must contain it.

        The variable's cap drops by one since the top coefficient is lost.
        """
        i = self.vars.index(name)
        out = {}
        for m, c in self._coeffs.items():
            if m[i] == 0:
                if c:
                    raise JetError(f"jet is not divisible by {name}")
                continue
            out[m[:i] + (m[i] - 1,) + m[i + 1:]] = c
        caps = self.caps[:i] + (self.caps[i] - 1,) + self.caps[i + 1:]
        md = None if self.max_degree is None else self.max_degree - 1
        return Jet(self.vars, caps, out, md)

    def with_caps(self, caps, max_degree=None) -> "Jet":
        """Re-truncate to smaller (or equal) caps."""
        return Jet(self.vars, caps, self._coeffs, max_degree)

    def map_coefficients(self, fn) -> "Jet":
        return self._like({m: fn(c) for m, c in self._coeffs.items()})

    def truncate(self, cutoff) -> "Jet":
        return self.map_coefficients(lambda c: c.truncate(cutoff))

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        if self.vars != other.vars or self.caps != other.caps:
            return False
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    __hash__ = None

    def __repr__(self):
        parts = []
        for m, c in sorted(self._coeffs.items()):
            mono = "*".join(f"{v}^{e}" for v, e in zip(self.vars, m) if e) or "1"
            parts.append(f"[{mono}] {c!r}")
        return f"Jet({', '.join(parts) or '0'})"


def _min_deg(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def jet_mul(a: Jet, b: Jet) -> Jet:
    a._check(b)
    md = _min_deg(a.max_degree, b.max_degree)
    caps = a.caps
    out: dict[tuple[int, ...], QSeries] = {}
    bitems = list(b._coeffs.items())
    for m1, c1 in a._coeffs.items():
        for m2, c2 in bitems:
            m = tuple(x + y for x, y in zip(m1, m2))
            if any(e > cap for e, cap in zip(m, caps)):
                continue
            if md is not None and sum(m) > md:
                continue
            p = c1 * c2
            out[m] = out[m] + p if m in out else p
    return Jet(a.vars, caps, out, md)


def jet_substitute_sum(g: Jet, targets: Iterable[str]) -> Jet:
    """Evaluate univariate ``g`` at ``z_1 + ... + z_s`` with ``z_j**2 = 0``.

    With square-zero targets ``(z_1+...+z_s)**n = n! * e_n(z)``, so each
    subset monomial of size ``n`` picks up ``n! * g[n]``.
    """
    if len(g.vars) != 1:
        raise JetError("substitution source must be univariate")
    targets = tuple(targets)
    s = len(targets)
    if s > g.caps[0]:
        raise JetError(f"cap {g.caps[0]} too small for {s} square-zero summands")
    out: dict[tuple[int, ...], QSeries] = {}
    for n in range(0, s + 1):
        c = g.coefficient((n,))
        if not c and c.order is None:
            continue
        c = c * math.factorial(n)
        for subset in combinations(range(s), n):
            m = tuple(1 if j in subset else 0 for j in range(s))
            out[m] = c
    return Jet(targets, (1,) * s, out)
