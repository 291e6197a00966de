"""Build the Carlitz torsion tower K_n and check the relation sigma(l_+) = (z - zeta) l_+."""

from __future__ import annotations

import argparse

from shtukas import BaseRingSpec, field_from_order, l_plus, tower_build, tower_valuation
from shtukas.tower import sigma_z


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=3)
    parser.add_argument("--level", type=int, default=2)
    args = parser.parse_args()

    F = field_from_order(args.q)
    base = BaseRingSpec(F, 16, args.level + 1)
    T = tower_build(base, args.level)
    print(f"[K_{args.level} : K] = {T.degree}")
    for i, g in enumerate(T.generators):
        print(f"  v(l_{i}) = {tower_valuation(g)}")

    lp = l_plus(T)
    zmz = lp.ring.make([T.from_K(base.K.monomial(F.neg(1), 1)), T.one], 0, None)
    residual = sigma_z(lp) - zmz * lp
    print(f"sigma(l_+) - (z - zeta) l_+ vanishes mod z^{residual.prec}: {residual.is_zero()}")

    sq = lp**2
    print(f"l_+^2: a_0 = {sq.coeff(0)!r}")
    if args.level >= 1:
        print(f"       a_1 = {sq.coeff(1)!r}")


if __name__ == "__main__":
    main()
