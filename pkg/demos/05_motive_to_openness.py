"""From an F_q[t]-motive file to its local shtuka, normal form and openness verdict."""

from __future__ import annotations

import argparse
from pathlib import Path

from shtukas import associate_local_shtuka, det_criterion, load_motive, rank_one_normalize, tate_generator_rank_one

DATA = Path(__file__).resolve().parent / "data"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("files", nargs="*", type=Path, default=sorted(DATA.iterdir()))
    args = parser.parse_args()

    for path in args.files:
        m = associate_local_shtuka(load_motive(path), zeta_prec=24, z_prec=4)
        line = f"{path.name}: F_v of size {m.base.field.q}, rank {m.rank}, dim {m.dim()}, {det_criterion(m)}"
        if m.rank == 1:
            nf = rank_one_normalize(m)
            gen = tate_generator_rank_one(m, n=2)
            line += f"; tau = u-twist of (z - zeta)^{nf.d}, Tate generator verified: {gen.verified}"
        print(line)


if __name__ == "__main__":
    main()
