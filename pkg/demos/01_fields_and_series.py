"""Finite fields and truncated series: the arithmetic everything else runs on."""

from __future__ import annotations

from shtukas import BaseRingSpec, field_create, frobenius, z_minus_zeta_valuation


def main():
    F9 = field_create(3, 2)
    x = F9.element([0, 1])
    print(f"{F9!r}: x * x = {x * x!r}, x^3 = {frobenius(x)!r}")

    base = BaseRingSpec(field_create(3), zeta_prec=12, z_prec=6)
    f = base.z**3 - base.Rz.const(base.zeta**3)
    d, cofactor = z_minus_zeta_valuation(f)
    print(f"z^3 - zeta^3 = (z - zeta)^{d} * ({cofactor!r})")

    unit = base.Rz.one + base.z
    print(f"1/(1 + z) = {unit.inverse()!r}")


if __name__ == "__main__":
    main()
