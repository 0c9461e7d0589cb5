"""The identity and property suite behind ``ellgenus verify``.

Each check returns a :class:`CheckResult`; :func:`run_all` runs them in order.
Randomized checks draw from a seeded :class:`random.Random`, so two runs
print the same lines.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import charclass as cc
from .genus import (
    elliptic_genus,
    eta_representative,
    f_s,
    f_s_closed,
    f_s_inverse,
    p_form,
    quotient_jet,
)
from .modcheck import GroupElement, IDENTITY, check_modular_weight, eval_q_with_tail
from .qcore import Jet, QSeries, jet_mul, qs_invert, qs_is_integral, qs_reduce_mod
from .theta import ThetaKind, theta_deriv0, theta_jet


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self, timings: bool = False) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        clock = f"  [{self.seconds:.2f}s]" if timings else ""
        return f"[{mark}] {self.name}{extra}{clock}"


K3 = cc.ManifoldData(4, {(1,): -48})
S4 = cc.ManifoldData(4, {})
CP1xCP1_TWISTED = cc.ManifoldData(4, {}, {(2, ()): 8})


def random_series(rng: random.Random, cutoff=5, denom=2, unit=False, span=9) -> QSeries:
    n = int(cutoff * denom)
    terms = {k: Fraction(rng.randint(-span, span), rng.choice([1, 1, 2, 3])) for k in range(n)
             if rng.random() < 0.7}
    if unit:
        terms[0] = rng.choice([1, -1, 2, Fraction(-3, 2)])
    return QSeries(terms, n, denom)


def random_profile(rng: random.Random, half_dim: int) -> cc.ManifoldData:
    nums = {lam: rng.randint(-60, 60) for lam in cc.partitions(half_dim)}
    return cc.ManifoldData(4 * half_dim, nums)


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------


def check_f2_closed(cut) -> tuple[bool, str]:
    a, b = f_s(2, cut).series, f_s_closed(2, cut).series
    return a.identical(b), f"f_2 = {_head(a)}"


def check_f4_closed(cut) -> tuple[bool, str]:
    a, b = f_s(4, cut).series, f_s_closed(4, cut).series
    return a.identical(b), f"f_4 = {_head(a)}"


def check_fs_claims(cut) -> tuple[bool, str]:
    bad = []
    for s in (2, 4, 6):
        f = f_s(s, cut).series
        if f.coeff(0) != 1 or not qs_is_integral(f)[0]:
            bad.append(f"f_{s}")
        if not qs_is_integral(f_s_inverse(s, cut))[0]:
            bad.append(f"1/f_{s}")
    return not bad, "s in {2,4,6}" if not bad else ", ".join(bad)


def check_pipelines(cut=Fraction(13, 2), n_profiles=21, seed=1) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = 0
    for i in range(n_profiles):
        M = random_profile(rng, 1 + i % 3)
        if elliptic_genus(M, cut, "bundle").series != elliptic_genus(M, cut, "theta").series:
            bad += 1
    return bad == 0, f"{n_profiles} profiles, dims 4/8/12, {bad} mismatches"


def check_worked_values(cut) -> tuple[bool, str]:
    s4 = elliptic_genus(S4, cut).series
    k3 = elliptic_genus(K3, cut).series
    ok = (not s4 and k3.coeff(0) == 2 and k3.coeff(Fraction(1, 2)) == 48
          and qs_is_integral(k3)[0])
    return ok, f"K3 = {_head(k3)}"


def check_pform(cut=Fraction(7, 2)) -> tuple[bool, str]:
    ok = True
    for pipeline in ("theta", "bundle"):
        ok &= p_form(CP1xCP1_TWISTED, cut, pipeline).series == f_s(2, cut).series
    return ok, "(CP1)^2, xi = (H1 x H2)^2, both pipelines"


def check_modularity(order=80) -> tuple[bool, str]:
    taus = (2j, 1 + 2j)
    ok = True
    worst = 0.0
    for s in (2, 4):
        f = f_s(s, order).series
        for g in (GroupElement(1, 2, 0, 1), GroupElement(1, 0, 1, 1)):
            rep = check_modular_weight(f, s, g, taus)
            ok &= rep.passed
            worst = max([worst] + [x.relerr for x in rep.samples])
    neg = check_modular_weight(f_s(2, order).series, 4, GroupElement(1, 0, 1, 1), taus)
    ok &= all(x.status == "fail" for x in neg.samples)
    return ok, f"max relerr {worst:.1e}; wrong weight rejected"


def check_reduction(cut, seed=2) -> tuple[bool, str]:
    rng = random.Random(seed)
    ok = True
    for s in (2, 4):
        rep = eta_representative(f_s(s, cut).series, s, cut, "integers")
        ok &= not rep.series
    for k in (2, 3, 24):
        for _ in range(10):
            terms = {n: rng.randint(-500, 500) for n in range(20)}
            a = QSeries(terms, 20, 2)
            r = qs_reduce_mod(a, k)
            ok &= all(0 <= c < k for _, c in r.items())
            ok &= qs_is_integral((a - r) * Fraction(1, k))[0]
            ok &= qs_reduce_mod(r, k).identical(r)
    return ok, "f_s^-1 f_s = 0 mod Z; k in {2,3,24}"


# --------------------------------------------------------------------------
# property suites
# --------------------------------------------------------------------------


def prop_qcore(seed=3) -> tuple[bool, str]:
    rng = random.Random(seed)
    ok = True
    for _ in range(30):
        a, b, c = (random_series(rng) for _ in range(3))
        ok &= (a * b) * c == a * (b * c)
        ok &= a * b == b * a
        ok &= a * (b + c) == a * b + a * c
        ok &= a + QSeries.zero() == a
    for _ in range(100):
        a = random_series(rng, unit=True)
        ok &= a * qs_invert(a) == 1
    big = random_series(rng, cutoff=8)
    small = big.truncate(3)
    sq = small * small
    ok &= (big * big).truncate(3) == sq and sq.cutoff >= 3
    x = Jet.variable("z1", ("z1", "z2"), (1, 1))
    ok &= not jet_mul(x, x).coeffs
    return ok, "ring laws, 100 inversions, truncation, nilpotency"


def prop_theta(cut=Fraction(6)) -> tuple[bool, str]:
    ok = True
    for kind in ThetaKind:
        jet = theta_jet(kind, 8, cut)
        odd_kind = kind is ThetaKind.THETA
        for n in range(9):
            if (n % 2 == 0) == odd_kind:
                ok &= not jet[n]
        for n in range(0, 9):
            theta_deriv0(kind, n, cut)  # raises if an imaginary residue survives
    # theta'(0) = 2 q^(1/8) prod (1-q^j)^3, expanded independently
    prod = QSeries.constant(1, None, 8)
    for j in range(1, int(cut) + 1):
        prod = prod * QSeries({0: 1, 8 * j: -1}, 8 * int(cut), 8) ** 3
    ok &= theta_deriv0("theta", 1, cut) == prod.shift(Fraction(1, 8)) * 2
    wider = theta_jet("theta2", 4, cut + 3).truncate(cut)
    ok &= wider == theta_jet("theta2", 4, cut)
    return ok, "parity, reality, Jacobi derivative product, truncation"


def prop_charclass(seed=4) -> tuple[bool, str]:
    rng = random.Random(seed)
    ok = True
    for l in (1, 2, 3):
        rs = cc.RootSystem(l)
        for order in (1, 3, 6):
            w = cc.witten_ch(rs, order)
            ok &= w.rank() == 1
            ok &= cc.witten_twisted_ch(rs, cc.TRIVIAL_LINE, order) == w
    for _ in range(50):
        l = rng.choice((1, 2, 3))
        n = 2 * l
        s = cc.SymmetricSeries(l, {(0, lam): rng.randint(-5, 5)
                                   for d in range(l + 1) for lam in cc.partitions(d)})
        roots = cc.from_pontryagin(s, n)
        ok &= cc.to_pontryagin(roots, l) == s
    return ok, "rank 1, trivial twist, 50 basis round-trips"


def prop_genus(cut=Fraction(21, 2)) -> tuple[bool, str]:
    ok = True
    g = quotient_jet(8, cut)
    ok &= all(not g[n] for n in (1, 3, 5, 7))
    ok &= qs_is_integral(elliptic_genus(K3, cut).series)[0]
    rng = random.Random(5)
    for _ in range(5):
        b = random_series(rng, cutoff=cut, denom=2)
        rep = eta_representative(b, 2, cut, "none")
        ok &= rep.series * f_s(2, cut).series == b
    return ok, "odd jet terms vanish, K3 integral, eta multiplicative"


def prop_modcheck(seed=6) -> tuple[bool, str]:
    rng = random.Random(seed)
    ok = True
    for _ in range(5):
        a = random_series(rng, cutoff=20)
        rep = check_modular_weight(a, rng.randint(-4, 6), IDENTITY)
        ok &= all(s.relerr == 0 for s in rep.samples)
        rep = check_modular_weight(a, 2, GroupElement(1, 2, 0, 1))
        ok &= all(s.relerr < 1e-25 for s in rep.samples)
    f40, f80 = f_s(2, 40).series, f_s(2, 80).series
    for tau in (2j, 1 + 2j, 3j):
        v40, t40 = eval_q_with_tail(f40, tau)
        v80, _ = eval_q_with_tail(f80, tau)
        ok &= abs(v40 - v80) <= t40 + abs(v80) * 1e-35
    return ok, "identity exact, tau+2 invariance, truncation consistency"


def prop_cli() -> tuple[bool, str]:
    from .cli import render_manifold, run
    ok = cc.parse_manifold_text(render_manifold(K3)) == K3
    ok &= cc.parse_manifold_text(render_manifold(CP1xCP1_TWISTED)) == CP1xCP1_TWISTED
    a = run(["fs", "--s", "4", "--order", "10"])
    b = run(["fs", "--s", "4", "--order", "10"])
    ok &= a == b and a[0] == 0
    return ok, "manifold round-trip, deterministic output"


def checks(order_steps: int = 20) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    cut = Fraction(order_steps + 1, 2)
    return [
        ("1 closed theta form for f_2", lambda: check_f2_closed(cut)),
        ("2 closed theta form for f_4 (with cross terms)", lambda: check_f4_closed(cut)),
        ("3 f_s constant term 1, f_s and 1/f_s integral", lambda: check_fs_claims(cut)),
        ("4 bundle vs theta elliptic genus", check_pipelines),
        ("5 worked values S4, K3", lambda: check_worked_values(cut)),
        ("6 P-form on (CP1)^2 equals f_2", check_pform),
        ("7 Gamma0(2) modularity smoke test", check_modularity),
        ("8 reduction plumbing", lambda: check_reduction(cut)),
        ("9a properties: qcore", prop_qcore),
        ("9b properties: theta", prop_theta),
        ("9c properties: charclass", prop_charclass),
        ("9d properties: genus", lambda: prop_genus(cut)),
        ("9e properties: modcheck", prop_modcheck),
        ("9f properties: cli", prop_cli),
    ]


def run_all(order_steps: int = 20) -> list[CheckResult]:
    out = []
    for name, fn in checks(order_steps):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported as such
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return out


def _head(a: QSeries, n: int = 4) -> str:
    parts = [f"{c}q^{e}" if e else str(c) for e, c in list(a.items())[:n]]
    return " + ".join(parts) + " + ..."
