"""Tensor, dual, internal hom, pullback and pushforward of local shtukas."""

from __future__ import annotations

from shtukas import (
    BaseRingSpec,
    adjunction_check,
    carlitz,
    field_create,
    pullback,
    pushforward,
    shtuka_dim,
    shtuka_dual,
    shtuka_hom_structure,
    shtuka_tensor,
)


def main():
    base = BaseRingSpec(field_create(3), 16, 6)
    c1, c2 = carlitz(base, 1), carlitz(base, 2)
    print(f"dim C(1) (x) C(2)   = {shtuka_dim(shtuka_tensor(c1, c2))}")
    print(f"dim dual C(2)       = {shtuka_dim(shtuka_dual(c2))}")
    print(f"dim Hom(C(2), C(5)) = {shtuka_dim(shtuka_hom_structure(c2, carlitz(base, 5)))}")

    c_prime = carlitz(base, 1, zeta_power=3)
    f_star = pullback(c_prime, 3)
    print(f"pullback of z' - zeta^3 along z' = z^3: tau = {f_star.tau[0][0]!r}, dim {shtuka_dim(f_star)}")
    f_lower = pushforward(c1, 3)
    print(f"pushforward of C(1): rank {f_lower.rank}, dim {shtuka_dim(f_lower)}")
    report = adjunction_check(c_prime, c1, 3)
    print(f"unit/counit commute and triangle identities hold: {report.ok}")


if __name__ == "__main__":
    main()
