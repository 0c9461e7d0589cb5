"""Explore mod-2k reductions of eta-invariant representatives.

For a boundary integral b of weight 2m+s, the representative f_s^{-1} b is
only defined modulo Z[[q^(1/2)]]; reducing an integral representative mod 2k
asks how much finer information survives.  This script feeds products of the
forms f_t as synthetic boundary data and reports, per modulus, which q-powers
keep a non-zero residue.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from ellgenus.genus import eta_representative, f_s


@dataclass
class Config:
    s: int = 2
    boundary_forms: tuple[int, ...] = (4,)
    moduli: tuple[int, ...] = (2, 4, 8, 24)
    order: int = 16  # q^(1/2) steps
    scale: int = 1


def boundary(cfg: Config):
    cut = Fraction(cfg.order + 1, 2)
    b = f_s(cfg.boundary_forms[0], cut).series
    for t in cfg.boundary_forms[1:]:
        b = b * f_s(t, cut).series
    return b * cfg.scale, cut


def explore(cfg: Config) -> list[str]:
    b, cut = boundary(cfg)
    weight = sum(cfg.boundary_forms)
    lines = [f"boundary = {cfg.scale} * " + " * ".join(f"f_{t}" for t in cfg.boundary_forms)
             + f" (weight {weight}), divided by f_{cfg.s}"]
    for k in cfg.moduli:
        rep = eta_representative(b, cfg.s, cut, k, weight)
        support = [str(e) for e, _ in rep.series.items()]
        lines.append(f"mod {k:>3}: {len(support):>3} non-zero residues"
                     + (f"; first at q^{support[0]}" if support else ""))
    return lines


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--s", type=int, default=Config.s)
    p.add_argument("--forms", type=int, nargs="+", default=list(Config.boundary_forms))
    p.add_argument("--moduli", type=int, nargs="+", default=list(Config.moduli))
    p.add_argument("--order", type=int, default=Config.order)
    p.add_argument("--scale", type=int, default=Config.scale)
    a = p.parse_args()
    cfg = Config(a.s, tuple(a.forms), tuple(a.moduli), a.order, a.scale)
    print("\n".join(explore(cfg)))


if __name__ == "__main__":
    main()
