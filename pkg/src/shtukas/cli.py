"""Command-line front end: ``shtukas {tower,openness,motive,selftest}``.

Exit codes: 0 success, 1 an internal check failed, 2 bad input, 3 size cap hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import lcm

from .errors import ShtukaError, SizeLimit
from .field import field_from_order
from .galois import (
    DEFAULT_SIZE_CAP,
    REPORT_FIELDS,
    det_criterion,
    openness_report,
    unit_group,
)
from .selftest import run_selftest
from .series import BaseRingSpec
from .shtuka import LocalShtuka, associate_local_shtuka, load_motive, rank_one_normalize
from .tower import l_plus, sigma_z, tower_build, tower_valuation

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_range(text):
    """``"3"`` -> [3]; ``"1..9"`` -> [1, ..., 9]; ``"1,4,7"`` -> [1, 4, 7]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise InputError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise InputError(f"empty range {text!r}")
    return out


def _field(q):
    try:
        return field_from_order(q)
    except ShtukaError as exc:
        raise InputError(f"--q {q}: q must be an odd prime power ({exc})") from exc


def _emit(payload, args, rows=None):
    if args.format == "csv":
        buf = io.StringIO()
        if rows is None:
            rows = [{k: v for k, v in payload.items() if not isinstance(v, (dict, list))}]
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()) if rows else [], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- tower -------------------------------------------------------------------------------

def tower_report(q, level, zeta_prec=32, z_prec=None):
    F = _field(q)
    if level < 0:
        raise InputError("--level must be >= 0")
    z_prec = z_prec or level + 1
    base = BaseRingSpec(F, zeta_prec, z_prec)
    T = tower_build(base, level)
    vals = [tower_valuation(g) for g in T.generators]
    lp = l_plus(T, z_prec)
    zmz = lp.ring.make([T.from_K(base.K.monomial(F.neg(1), 1)), T.one], 0, None)
    residual_zero = (sigma_z(lp) - zmz * lp).is_zero()
    denominators = [T.mono_valuation(e).denominator for e in T.basis]
    value_group_index = lcm(*denominators)
    expected = [Fraction(1, (T.q - 1) * T.q**i) for i in range(level + 1)]
    ok = (
        residual_zero
        and vals == expected
        and T.degree == (T.q - 1) * T.q**level
        and value_group_index == T.degree
    )
    return {
        "command": "tower",
        "field": F.to_json(),
        "q_v": F.q,
        "level": level,
        "precision": {"zeta": zeta_prec, "z": z_prec},
        "degree": T.degree,
        "valuations": [f"{v.numerator}/{v.denominator}" for v in vals],
        "carlitz_residual_zero": residual_zero,
        "value_group_index": value_group_index,
        "ok": ok,
    }


def cmd_tower(args):
    report = tower_report(args.q, args.level, args.zeta_prec, args.z_prec)
    _emit(report, args)
    return EXIT_OK if report["ok"] else EXIT_CHECK


# -- openness ------------------------------------------------------------------------------

def openness_run(q, ds, levels, cap=DEFAULT_SIZE_CAP):
    F = _field(q)
    if any(d < 1 for d in ds):
        raise InputError("--d values must be >= 1")
    if any(n < 0 for n in levels):
        raise InputError("--level values must be >= 0")
    reports, error = [], None
    for n in levels:
        try:
            group = unit_group(F, n, cap)
        except SizeLimit as exc:
            error = str(exc)
            break
        for d in ds:
            reports.append(openness_report(F, d, n, group=group).to_json())
    ok = error is None and all(r["contained"] and r["index"] <= r["d_prime"] for r in reports)
    payload = {
        "command": "openness",
        "field": F.to_json(),
        "reports": reports,
        "partial": error is not None,
        "ok": ok,
    }
    if error:
        payload["error"] = error
    return payload


def summary_table(reports):
    lines = [f"{'d':>4} {'n':>3} {'e':>3} {'d_prime':>8} {'index':>6} {'full_index':>11} {'open':>6}"]
    for r in reports:
        lines.append(
            f"{r['d']:>4} {r['n']:>3} {r['e']:>3} {r['d_prime']:>8} {r['index']:>6} "
            f"{r['full_index']:>11} {str(r['open_in_full']):>6}"
        )
    return "\n".join(lines)


def cmd_openness(args):
    payload = openness_run(args.q, parse_range(args.d), parse_range(args.level), args.cap)
    _emit(payload, args, rows=[{k: r[k] for k in REPORT_FIELDS} for r in payload["reports"]])
    if args.summary:
        print(summary_table(payload["reports"]), file=sys.stderr)
    if payload["partial"]:
        print(f"error: {payload['error']} (output is partial)", file=sys.stderr)
        return EXIT_SIZE
    return EXIT_OK if payload["ok"] else EXIT_CHECK


# -- motive ---------------------------------------------------------------------------------

def motive_report(path, zeta_prec=32, z_prec=8, residue_bound=8):
    try:
        mot = load_motive(path)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    m = associate_local_shtuka(mot, zeta_prec, z_prec)
    dim = m.dim()
    verdict = det_criterion(m)
    normal = None
    ok = True
    if m.rank == 1:
        s = 1
        while True:
            try:
                nf = rank_one_normalize(m, s, search_bound=residue_bound)
                break
            except ShtukaError as exc:
                ext = getattr(exc, "minimal_ext", None)
                if ext is None:
                    raise
                s = ext
        normal = {"d": nf.d, "residue_ext": nf.residue_ext, "verified": nf.verified}
        ok = nf.verified and nf.d == dim
    F = m.base.field
    return {
        "command": "motive",
        "source": str(path),
        "place": {"q": mot.q, "v": [c % mot.q for c in mot.v], "f_v": F.m, "field": F.to_json()},
        "rank": m.rank,
        "dim": dim,
        "verdict": verdict,
        "precision": {"zeta": zeta_prec, "z": z_prec},
        "shtuka": _truncated(m, z_prec).to_json(),
        "normal_form": normal,
        "ok": ok,
    }


def _truncated(m, z_prec):
    """The shtuka with tau cut to the reported z-precision."""
    tau = [[x.with_prec(z_prec) for x in row] for row in m.tau]
    return LocalShtuka(m.base, tau, m.twist, m.zeta_power)


def cmd_motive(args):
    report = motive_report(args.file, args.zeta_prec, args.z_prec, args.residue_bound)
    _emit(report, args)
    return EXIT_OK if report["ok"] else EXIT_CHECK


def cmd_selftest(args):
    results = run_selftest(out=sys.stdout)
    return EXIT_OK if all(ok for _, ok, _, _ in results) else EXIT_CHECK


# -- entry point -------------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="shtukas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = sub.add_parser("tower", help="build K_n and check degree, valuations and the Carlitz relation")
    p.add_argument("--q", type=int, required=True, help="q_v, an odd prime power")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--zeta-prec", type=int, default=32)
    p.add_argument("--z-prec", type=int, default=None, help="default: level + 1")
    common(p)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("openness", help="d-th power images of unit groups at finite level")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", required=True, help="value, list (1,2,5) or range (1..9)")
    p.add_argument("--level", required=True, help="value, list or range")
    p.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP, help="largest unit group to enumerate")
    p.add_argument("--summary", action="store_true", help="print an index table on stderr")
    common(p)
    p.set_defaults(func=cmd_openness)

    p = sub.add_parser("motive", help="local shtuka of an F_q[t]-motive and its openness verdict")
    p.add_argument("file", help="motive description (.json or .toml)")
    p.add_argument("--zeta-prec", type=int, default=32)
    p.add_argument("--z-prec", type=int, default=8)
    p.add_argument("--residue-bound", type=int, default=8, help="largest residue extension to search")
    common(p)
    p.set_defaults(func=cmd_motive)

    p = sub.add_parser("selftest", help="run the exhaustive invariant suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("zeta_prec", "z_prec"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            print(f"error: --{name.replace('_', '-')} must be >= 1", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ShtukaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc, ValueError) else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
