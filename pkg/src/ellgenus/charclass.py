"""Characteristic classes in formal Chern roots.

Conventions:

* divided roots: the tangent roots ``x_i`` here are the topological Chern
  roots, so ``exp(x_i)`` in a Chern character needs no ``2*pi*i`` factor and
  every characteristic number is rational;
* ``p_j = e_j(x_1**2, ..., x_{2l}**2)``, so that ``Ahat = 1 - p_1/24 + ...``;
* the line class ``u`` is the Euler class ``c`` of the line bundle itself.

A :class:`SymmetricSeries` is a polynomial in ``u`` and the ``p_j`` with
:class:`~ellgenus.qcore.QSeries` coefficients, truncated at cohomological
degree ``4l`` (``deg p_j = 4j``, ``deg u = 2``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .qcore import Jet, QSeries

Partition = tuple[int, ...]
Key = tuple[int, Partition]

GRID = 2  # Witten bundles live on the q^(1/2) grid


class ConversionError(ValueError):
    """A root polynomial is odd in some root or not symmetric."""


class MissingLineData(ValueError):
    """A ``u``-power is needed that the manifold does not supply."""


class ManifoldFormatError(ValueError):
    """Malformed manifold description."""


def _partition(parts: Iterable[int]) -> Partition:
    return tuple(sorted((int(p) for p in parts if p), reverse=True))


def partitions(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``n`` as descending tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def _const(c, cutoff=None) -> QSeries:
    order = None if cutoff is None else math.ceil(Fraction(cutoff) * GRID)
    return QSeries.constant(c, order, GRID)


# --------------------------------------------------------------------------
# root data
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystem:
    """Formal roots ``x_1..x_{2l}`` of a ``4l``-manifold's tangent bundle."""

    half_dim: int

    def __post_init__(self):
        if self.half_dim < 1:
            raise ValueError("half_dim must be positive")

    @property
    def n_roots(self) -> int:
        return 2 * self.half_dim

    @property
    def dim(self) -> int:
        return 4 * self.half_dim

    @property
    def degree_cap(self) -> int:
        return 4 * self.half_dim

    @property
    def roots(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.n_roots))


@dataclass(frozen=True)
class LineClass:
    """A complex line bundle ``xi`` through its Euler class ``u``; or nothing."""

    present: bool = True

    @property
    def trivial(self) -> bool:
        return not self.present


TRIVIAL_LINE = LineClass(False)


@dataclass(frozen=True)
class VirtualBundle:
    """``tangent * T_C M + line * xi_C + trivial * C`` in K-theory."""

    tangent: int = 0
    line: int = 0
    trivial: int = 0

    def rank(self, rs: RootSystem) -> int:
        return self.tangent * rs.dim + 2 * self.line + self.trivial

    def reduced(self, rs: RootSystem) -> "VirtualBundle":
        """The rank-zero bundle ``E - rank(E)``."""
        return VirtualBundle(self.tangent, self.line, self.trivial - self.rank(rs))


# --------------------------------------------------------------------------
# symmetric series in the Pontryagin basis
# --------------------------------------------------------------------------


def key_degree(key: Key) -> int:
    a, lam = key
    return 2 * a + 4 * sum(lam)


class SymmetricSeries:
    """``sum coeff[(a, lam)] * u**a * p_lam`` truncated at degree ``4*half_dim``."""

    __slots__ = ("half_dim", "_terms")

    def __init__(self, half_dim: int, terms: Mapping[Key, QSeries] | None = None):
        self.half_dim = half_dim
        cap = 4 * half_dim
        clean: dict[Key, QSeries] = {}
        for (a, lam), c in (terms or {}).items():
            key = (int(a), _partition(lam))
            if key_degree(key) > cap:
                continue
            if not isinstance(c, QSeries):
                c = _const(c)
            if not c and c.order is None:
                continue
            clean[key] = clean[key] + c if key in clean else c
        self._terms = clean

    @classmethod
    def one(cls, half_dim: int) -> "SymmetricSeries":
        return cls(half_dim, {(0, ()): _const(1)})

    @classmethod
    def p(cls, half_dim: int, *parts: int, coeff=1) -> "SymmetricSeries":
        return cls(half_dim, {(0, _partition(parts)): coeff})

    @classmethod
    def u_power(cls, half_dim: int, a: int, coeff=1) -> "SymmetricSeries":
        return cls(half_dim, {(a, ()): coeff})

    @property
    def terms(self) -> dict[Key, QSeries]:
        return dict(self._terms)

    def coefficient(self, lam: Iterable[int] = (), a: int = 0) -> QSeries:
        return self._terms.get((a, _partition(lam)), _const(0))

    def component(self, degree: int) -> "SymmetricSeries":
        return SymmetricSeries(self.half_dim,
                               {k: c for k, c in self._terms.items() if key_degree(k) == degree})

    def top(self) -> "SymmetricSeries":
        return self.component(4 * self.half_dim)

    def rank(self) -> QSeries:
        """The degree-0 part."""
        return self._terms.get((0, ()), _const(0))

    @property
    def has_line_terms(self) -> bool:
        return any(a for a, _ in self._terms)

    def _check(self, other: "SymmetricSeries"):
        if self.half_dim != other.half_dim:
            raise ValueError("symmetric series of different dimensions")

    def __add__(self, other):
        if not isinstance(other, SymmetricSeries):
            return self + SymmetricSeries(self.half_dim, {(0, ()): other})
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return SymmetricSeries(self.half_dim, out)

    __radd__ = __add__

    def __neg__(self):
        return SymmetricSeries(self.half_dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SymmetricSeries):
            return SymmetricSeries(self.half_dim, {k: c * other for k, c in self._terms.items()})
        self._check(other)
        cap = 4 * self.half_dim
        out: dict[Key, QSeries] = {}
        for k1, c1 in self._terms.items():
            d1 = key_degree(k1)
            for k2, c2 in other._terms.items():
                if d1 + key_degree(k2) > cap:
                    continue
                k = (k1[0] + k2[0], _partition(k1[1] + k2[1]))
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return SymmetricSeries(self.half_dim, out)

    __rmul__ = __mul__

    def exp(self) -> "SymmetricSeries":
        """``exp`` of a series with no degree-0 part (a finite sum)."""
        if (0, ()) in self._terms and self._terms[(0, ())]:
            raise ValueError("exp needs a vanishing degree-0 part")
        total = SymmetricSeries.one(self.half_dim)
        power = total
        for m in range(1, 2 * self.half_dim + 1):
            power = power * self * Fraction(1, m)
            if not power._terms:
                break
            total = total + power
        return total

    def truncate(self, cutoff) -> "SymmetricSeries":
        return SymmetricSeries(self.half_dim, {k: c.truncate(cutoff) for k, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SymmetricSeries) or other.half_dim != self.half_dim:
            return NotImplemented
        keys = set(self._terms) | set(other._terms)
        return all(self.coefficient(k[1], k[0]) == other.coefficient(k[1], k[0]) for k in keys)

    __hash__ = None

    def __repr__(self):
        parts = []
        for (a, lam), c in sorted(self._terms.items()):
            mono = "*".join(([f"u^{a}"] if a else []) + [f"p{j}" for j in lam]) or "1"
            parts.append(f"[{mono}] {c!r}")
        return f"SymmetricSeries(l={self.half_dim}; {', '.join(parts) or '0'})"


# --------------------------------------------------------------------------
# power sums and multiplicative sequences
# --------------------------------------------------------------------------


def power_sum(k: int, half_dim: int) -> SymmetricSeries:
    """``sum_i x_i**(2k)`` in the Pontryagin basis, by Newton's identities."""
    sums: list[SymmetricSeries] = [SymmetricSeries(half_dim)]
    n = 2 * half_dim
    for m in range(1, k + 1):
        acc = SymmetricSeries(half_dim)
        for j in range(1, m):
            if j <= n:
                acc = acc + SymmetricSeries.p(half_dim, j) * sums[m - j] * (-1) ** (j - 1)
        if m <= n:
            acc = acc + SymmetricSeries.p(half_dim, m, coeff=(-1) ** (m - 1) * m)
        sums.append(acc)
    return sums[k]


def _log_coeffs(a: Sequence[QSeries]) -> list[QSeries]:
    """Coefficients of ``log(a(y))`` for ``a(0) = 1``."""
    b = [_const(0)]
    for k in range(1, len(a)):
        acc = a[k] * k
        for j in range(1, k):
            acc = acc - b[j] * a[k - j] * j
        b.append(acc * Fraction(1, k))
    return b


def multiplicative_sequence(coeffs: Sequence, rs: RootSystem) -> SymmetricSeries:
    """``prod_i Q(x_i**2)`` for ``Q(y) = sum coeffs[k] y**k`` over the tangent roots."""
    l = rs.half_dim
    coeffs = [c if isinstance(c, QSeries) else _const(c) for c in coeffs][: l + 1]
    coeffs += [_const(0)] * (l + 1 - len(coeffs))
    lead = coeffs[0]
    if not lead:
        raise ValueError("characteristic series must have non-zero constant term")
    if lead.is_exact and lead == 1:
        normed = coeffs
    else:
        normed = [c / lead for c in coeffs]
    logs = _log_coeffs(normed)
    s = SymmetricSeries(l)
    for k in range(1, l + 1):
        if logs[k] or logs[k].order is not None:
            s = s + power_sum(k, l) * logs[k]
    out = s.exp()
    if not (lead.is_exact and lead == 1):
        out = out * (lead ** rs.n_roots)
    return out


def line_series(coeffs: Sequence, rs: RootSystem) -> SymmetricSeries:
    """``sum coeffs[a] * u**a`` as a symmetric series."""
    return SymmetricSeries(rs.half_dim, {(a, ()): c for a, c in enumerate(coeffs) if 2 * a <= rs.degree_cap})


def _even_pair_exp(t: QSeries, sign: int, y_cap: int, order) -> list[QSeries]:
    """``(1 + sign*t*e^x)(1 + sign*t*e^-x)`` as coefficients in ``y = x**2``."""
    one = _const(1, order)
    out = [one + t * (2 * sign) + t * t]
    for k in range(1, y_cap + 1):
        out.append(t * Fraction(2 * sign, math.factorial(2 * k)))
    return out


def _y_jet(coeffs: Sequence[QSeries], cap: int) -> Jet:
    return Jet.univariate("y", cap, list(coeffs)[: cap + 1])


def _jet_coeffs(j: Jet, cap: int) -> list[QSeries]:
    return [j[k] for k in range(cap + 1)]


def _spread_even(coeffs: Sequence[QSeries]) -> list[QSeries]:
    """Coefficients in ``y = u**2`` re-indexed as coefficients in ``u``."""
    out: list[QSeries] = []
    for k, c in enumerate(coeffs):
        out.append(c)
        out.append(_const(0))
    return out[:-1] if out else out


def _weight(t_sign: int, t_exponent, order) -> QSeries:
    t_exponent = Fraction(t_exponent)
    if t_exponent <= 0:
        raise ValueError("the formal weight t needs a strictly positive q-exponent")
    return QSeries.monomial(t_exponent, t_sign, order, GRID)


def _pair_function(t: QSeries, op: str, cap: int, order) -> Jet:
    """Per root pair ``+-x``: ``ch`` of ``Lambda_t``/``S_t`` normalized to rank 0."""
    if op == "exterior":
        raw = _even_pair_exp(t, 1, cap, order)
        return _y_jet(raw, cap) * (1 / raw[0])
    if op == "symmetric":
        raw = _even_pair_exp(t, -1, cap, order)
        j = _y_jet(raw, cap)
        return j.inverse() * raw[0]
    raise ValueError(f"unknown power operation {op!r}")


def ch_power_ops(E: VirtualBundle, t_sign: int, t_exponent, op: str, rs: RootSystem,
                 order) -> SymmetricSeries:
    """``ch(Lambda_t E)`` or ``ch(S_t E)`` with ``t = t_sign * q**t_exponent``.

    ``order`` is the q-exponent cutoff.  Virtual summands with negative
    multiplicity divide; trivial summands contribute ``(1 + t)**rank`` for
    ``Lambda`` and ``(1 - t)**(-rank)`` for ``S``.
    """
    t = _weight(t_sign, t_exponent, order)
    l = rs.half_dim
    one = _const(1, order)
    out = SymmetricSeries.one(l)
    # per-pair functions are rank-normalized; the rank factor is restored below
    if E.tangent:
        f = _pair_function(t, op, l, order)
        if E.tangent < 0:
            f = f.inverse()
        ms = multiplicative_sequence(_jet_coeffs(f, l), rs)
        for _ in range(abs(E.tangent)):
            out = out * ms
    if E.line:
        f = _pair_function(t, op, l, order)
        if E.line < 0:
            f = f.inverse()
        ls = line_series(_spread_even(_jet_coeffs(f, l)), rs)
        for _ in range(abs(E.line)):
            out = out * ls
    rank = E.rank(rs)
    base = one + t if op == "exterior" else 1 / (one - t)
    return out * (base ** rank)


def _root_functions(rs: RootSystem, order, line: bool):
    """Per-root-pair tangent function and (optionally) line function of the Witten bundle."""
    order = Fraction(order)
    l = rs.half_dim
    one = _const(1, order)
    tangent = Jet.constant(one, ("y",), (l,))
    line_f = Jet.constant(one, ("y",), (l,))
    n = 1
    while n < order:
        tangent = tangent * _pair_function(_weight(1, n, order), "symmetric", l, order)
        if line:
            line_f = line_f * _pair_function(_weight(1, n, order), "exterior", l, order)
        n += 1
    h = Fraction(1, 2)
    while h < order:
        f = _pair_function(_weight(-1, h, order), "exterior", l, order)
        tangent = tangent * f
        if line:
            line_f = line_f * f.inverse() * f.inverse()
            line_f = line_f * _pair_function(_weight(1, h, order), "exterior", l, order)
        h += 1
    return tangent, line_f


def witten_ch(rs: RootSystem, order) -> SymmetricSeries:
    """``ch`` of the Witten bundle ``Theta_q(TX)`` below ``q**order``."""
    tangent, _ = _root_functions(rs, order, line=False)
    return multiplicative_sequence(_jet_coeffs(tangent, rs.half_dim), rs)


def witten_twisted_ch(rs: RootSystem, lc: LineClass, order) -> SymmetricSeries:
    """``ch`` of ``Theta_q(TM, xi)``; equals :func:`witten_ch` for trivial ``xi``."""
    if lc.trivial:
        return witten_ch(rs, order)
    tangent, line_f = _root_functions(rs, order, line=True)
    ms = multiplicative_sequence(_jet_coeffs(tangent, rs.half_dim), rs)
    ls = line_series(_spread_even(_jet_coeffs(line_f, rs.half_dim)), rs)
    return ms * ls


def ahat(rs: RootSystem) -> SymmetricSeries:
    """Ahat-class: the multiplicative sequence of ``(x/2) / sinh(x/2)``."""
    l = rs.half_dim
    # sinh(x/2)/(x/2) = sum y^k / (4^k (2k+1)!)
    sinhc = [_const(Fraction(1, 4 ** k * math.factorial(2 * k + 1))) for k in range(l + 1)]
    inv = _y_jet(sinhc, l).inverse()
    return multiplicative_sequence(_jet_coeffs(inv, l), rs)


def cosh_half(rs: RootSystem, scale: int = 1) -> SymmetricSeries:
    """``cosh(scale * u / 2)`` in the line class."""
    coeffs = []
    for a in range(rs.degree_cap // 2 + 1):
        coeffs.append(Fraction(scale ** a, 2 ** a * math.factorial(a)) if a % 2 == 0 else 0)
    return line_series(coeffs, rs)


# --------------------------------------------------------------------------
# explicit root polynomials and basis conversion
# --------------------------------------------------------------------------


class RootPolynomial:
    """Polynomial in ``n`` explicit roots, keyed by exponent tuples."""

    __slots__ = ("n_roots", "max_degree", "_terms")

    def __init__(self, n_roots: int, terms: Mapping[tuple[int, ...], object] | None = None,
                 max_degree: int | None = None):
        self.n_roots = n_roots
        self.max_degree = max_degree
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n_roots:
                raise ValueError("exponent tuple length does not match the number of roots")
            if max_degree is not None and sum(m) > max_degree:
                continue
            if c:
                clean[m] = clean[m] + c if m in clean else c
        self._terms = {m: c for m, c in clean.items() if c}

    @property
    def terms(self):
        return dict(self._terms)

    def __add__(self, other: "RootPolynomial") -> "RootPolynomial":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return RootPolynomial(self.n_roots, out, self.max_degree)

    def __neg__(self):
        return RootPolynomial(self.n_roots, {m: -c for m, c in self._terms.items()}, self.max_degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RootPolynomial):
            return RootPolynomial(self.n_roots, {m: c * other for m, c in self._terms.items()},
                                  self.max_degree)
        out: dict[tuple[int, ...], object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if self.max_degree is not None and sum(m) > self.max_degree:
                    continue
                p = c1 * c2
                out[m] = out[m] + p if m in out else p
        return RootPolynomial(self.n_roots, out, self.max_degree)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RootPolynomial):
            return NotImplemented
        keys = set(self._terms) | set(other._terms)
        return all(self._terms.get(k, 0) == other._terms.get(k, 0) for k in keys)

    __hash__ = None

    def __repr__(self):
        return f"RootPolynomial({self._terms!r})"


def elementary_in_roots(j: int, n_roots: int, max_degree=None, squared: bool = True) -> RootPolynomial:
    """``e_j(x_1**2, ...)`` (or ``e_j(x_1, ...)`` when ``squared=False``)."""
    step = 2 if squared else 1
    terms = {}
    for idx in _subsets(n_roots, j):
        terms[tuple(step if i in idx else 0 for i in range(n_roots))] = 1
    return RootPolynomial(n_roots, terms, max_degree)


def _subsets(n: int, k: int):
    from itertools import combinations
    return combinations(range(n), k)


def to_pontryagin(poly: RootPolynomial, half_dim: int | None = None) -> SymmetricSeries:
    """Rewrite an even symmetric root polynomial in the Pontryagin basis.

    Leading-term elimination: the lex-largest monomial ``y**alpha`` (``y = x**2``)
    is removed by ``c * prod_j e_j**(alpha_j - alpha_{j+1})``.
    """
    n = poly.n_roots
    if half_dim is None:
        half_dim = n // 2
    for m in poly.terms:
        if any(e % 2 for e in m):
            raise ConversionError(f"monomial {m} is odd in a root")
    rest = RootPolynomial(n, poly.terms)
    out: dict[Key, object] = {}
    guard = 0
    while rest.terms:
        guard += 1
        if guard > 100000:
            raise ConversionError("elimination did not terminate")
        lead = max(rest.terms)
        c = rest.terms[lead]
        alpha = tuple(e // 2 for e in lead)
        if list(alpha) != sorted(alpha, reverse=True):
            raise ConversionError(f"polynomial is not symmetric (leading monomial {lead})")
        lam: list[int] = []
        for j in range(n):
            nxt = alpha[j + 1] if j + 1 < n else 0
            lam += [j + 1] * (alpha[j] - nxt)
        key = (0, _partition(lam))
        out[key] = out[key] + c if key in out else c
        rest = rest - pontryagin_monomial_in_roots(lam, n) * c
    return SymmetricSeries(half_dim, out)


def pontryagin_monomial_in_roots(lam: Iterable[int], n_roots: int) -> RootPolynomial:
    mono = RootPolynomial(n_roots, {(0,) * n_roots: 1})
    for j in lam:
        mono = mono * elementary_in_roots(j, n_roots)
    return mono


def from_pontryagin(s: SymmetricSeries, n_roots: int | None = None) -> RootPolynomial:
    """Expand a ``u``-free Pontryagin-basis series into explicit roots."""
    if s.has_line_terms:
        raise ConversionError("line-class terms have no root expansion")
    n = 2 * s.half_dim if n_roots is None else n_roots
    out = RootPolynomial(n)
    for (a, lam), c in s.terms.items():
        out = out + pontryagin_monomial_in_roots(lam, n) * c
    return out


# --------------------------------------------------------------------------
# manifolds
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ManifoldData:
    """Characteristic numbers of a closed ``4m``-manifold.

    ``pontryagin_numbers[lam] = p_lam[M]``.  ``line_numbers[(a, lam)]`` is
    ``(u**a * p_lam)[M]`` for a line class, or None when no line bundle is given.
    """

    dim: int
    pontryagin_numbers: Mapping[Partition, Fraction] = field(default_factory=dict)
    line_numbers: Mapping[Key, Fraction] | None = None

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 4:
            raise ValueError(f"dimension {self.dim} is not a positive multiple of 4")
        m = self.dim // 4
        pn = {}
        for lam, v in self.pontryagin_numbers.items():
            lam = _partition(lam)
            if sum(lam) != m:
                raise ValueError(f"partition {lam} does not sum to {m}")
            if v:
                pn[lam] = Fraction(v)
        object.__setattr__(self, "pontryagin_numbers", pn)
        if self.line_numbers is not None:
            ln = {}
            for (a, lam), v in self.line_numbers.items():
                lam = _partition(lam)
                if a <= 0 or 2 * a + 4 * sum(lam) != self.dim:
                    raise ValueError(f"u^{a}.p{lam} is not a top-degree class")
                if v:
                    ln[(a, lam)] = Fraction(v)
            object.__setattr__(self, "line_numbers", ln)

    @property
    def half_dim(self) -> int:
        return self.dim // 4

    @property
    def root_system(self) -> RootSystem:
        return RootSystem(self.half_dim)

    def number(self, key: Key) -> Fraction:
        a, lam = key
        if a == 0:
            return self.pontryagin_numbers.get(_partition(lam), Fraction(0))
        if self.line_numbers is None:
            raise MissingLineData(f"no line-bundle data for u^{a}")
        return self.line_numbers.get((a, _partition(lam)), Fraction(0))


def evaluate_top(s: SymmetricSeries, M: ManifoldData) -> QSeries:
    """Pair the top-degree part of ``s`` with the fundamental class of ``M``."""
    if s.half_dim != M.half_dim:
        raise ValueError(f"series of degree cap {4 * s.half_dim} against a {M.dim}-manifold")
    total = None
    for key, c in s.top().terms.items():
        v = M.number(key)
        term = c * v
        total = term if total is None else total + term
    if total is None:
        # zero pairing, but keep the precision the inputs carried
        cut = None
        for c in s.terms.values():
            if c.order is not None:
                cut = c.cutoff if cut is None else min(cut, c.cutoff)
        return QSeries.zero(None if cut is None else math.ceil(cut * GRID), GRID)
    return total


# -- file format -----------------------------------------------------------

_P_KEY = re.compile(r"^p(\d+(?:,\d+)*)$")
_U_KEY = re.compile(r"^u\^(\d+)(?:\.p(\d+(?:,\d+)*))?$")


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(?:/\d+)?", text):
        raise ManifoldFormatError(f"malformed rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ManifoldFormatError(f"zero denominator in {text!r}") from None


def parse_manifold_text(text: str) -> ManifoldData:
    """Read the line-oriented manifold format (``dim:``, ``p1,1:``, ``u^2.p1:``)."""
    dim = None
    pn: dict[Partition, Fraction] = {}
    ln: dict[Key, Fraction] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ManifoldFormatError(f"line {lineno}: expected 'key: value'")
        key, value = (x.strip() for x in line.split(":", 1))
        if key == "dim":
            if not value.isdigit():
                raise ManifoldFormatError(f"line {lineno}: malformed dimension {value!r}")
            dim = int(value)
            continue
        m = _P_KEY.match(key)
        if m:
            lam = _partition(int(x) for x in m.group(1).split(","))
            pn[lam] = _parse_rational(value)
            continue
        m = _U_KEY.match(key)
        if m:
            lam = _partition(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
            ln = {} if ln is None else ln
            ln[(int(m.group(1)), lam)] = _parse_rational(value)
            continue
        raise ManifoldFormatError(f"line {lineno}: unknown key {key!r}")
    if dim is None:
        raise ManifoldFormatError("missing 'dim:' line")
    try:
        return ManifoldData(dim, pn, ln)
    except ValueError as exc:
        raise ManifoldFormatError(str(exc)) from None


def _fmt_frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_manifold(M: ManifoldData) -> str:
    lines = [f"dim: {M.dim}"]
    for lam in sorted(M.pontryagin_numbers):
        lines.append(f"p{','.join(map(str, lam))}: {_fmt_frac(M.pontryagin_numbers[lam])}")
    if M.line_numbers is not None:
        if not M.line_numbers:
            lines.append("# line bundle present, all numbers zero")
            lines.append(f"u^{M.dim // 2}: 0")
        for (a, lam) in sorted(M.line_numbers):
            suffix = f".p{','.join(map(str, lam))}" if lam else ""
            lines.append(f"u^{a}{suffix}: {_fmt_frac(M.line_numbers[(a, lam)])}")
    return "\n".join(lines) + "\n"


def all_top_keys(half_dim: int, with_line: bool = False) -> list[Key]:
    keys = [(0, lam) for lam in partitions(half_dim)]
    if with_line:
        for a in range(2, 2 * half_dim + 1, 2):
            keys += [(a, lam) for lam in partitions(half_dim - a // 2)]
    return keys


__all__ = [
    "RootSystem", "LineClass", "TRIVIAL_LINE", "VirtualBundle", "SymmetricSeries",
    "RootPolynomial", "ManifoldData", "ConversionError", "MissingLineData",
    "ManifoldFormatError", "partitions", "power_sum", "multiplicative_sequence",
    "line_series", "ch_power_ops", "witten_ch", "witten_twisted_ch", "ahat", "cosh_half",
    "to_pontryagin", "from_pontryagin", "elementary_in_roots", "evaluate_top",
    "parse_manifold_text", "format_manifold", "all_top_keys",
]
