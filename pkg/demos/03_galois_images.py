"""Images of d-th powers of the cyclotomic character at finite level.

For p | d the image lies in the units supported on z^(p^e) and its index in
the full unit group keeps growing with the level; for p not dividing d the
index stays bounded by d.
"""

from __future__ import annotations

from shtukas import BaseRingSpec, cyclotomic_char, field_create, openness_report, tower_build, unit_group


def main():
    F = field_create(3)
    print(f"{'d':>3} {'n':>2} {'full index':>10} {'ambient index':>13} {'open':>5}")
    for d in (1, 2, 3, 6, 9):
        for n in range(5):
            r = openness_report(F, d, n)
            print(f"{d:>3} {n:>2} {r.full_index:>10} {r.index:>13} {str(r.open_in_full):>5}")

    T = tower_build(BaseRingSpec(F, 12, 3), 2)
    ok = all(cyclotomic_char(chi, T, cross_check=True) == chi for chi in unit_group(F, 2))
    print(f"character recomputed through the tower for all 18 units of level 2: {ok}")


if __name__ == "__main__":
    main()
