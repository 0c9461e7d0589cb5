"""Print f_s and 1/f_s side by side for even s, one column per form."""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from ellgenus.genus import f_s, f_s_inverse


@dataclass
class Config:
    max_s: int = 8
    order: int = 12  # q^(1/2) steps
    inverse: bool = False


def table(cfg: Config) -> str:
    cut = Fraction(cfg.order + 1, 2)
    ss = range(2, cfg.max_s + 1, 2)
    cols = {s: (f_s_inverse(s, cut) if cfg.inverse else f_s(s, cut).series) for s in ss}
    name = "1/f_{}" if cfg.inverse else "f_{}"
    width = max(len(str(c)) for col in cols.values() for c in col.coefficients()) + 2
    out = ["exp".rjust(6) + "".join(name.format(s).rjust(width) for s in ss)]
    for k in range(cfg.order + 1):
        e = Fraction(k, 2)
        out.append(str(e).rjust(6) + "".join(str(cols[s].coeff(e)).rjust(width) for s in ss))
    return "\n".join(out)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-s", type=int, default=Config.max_s)
    p.add_argument("--order", type=int, default=Config.order)
    p.add_argument("--inverse", action="store_true")
    a = p.parse_args()
    print(table(Config(a.max_s, a.order, a.inverse)))


if __name__ == "__main__":
    main()
