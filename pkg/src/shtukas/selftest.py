"""Exhaustive invariant checks at desk scale, used by ``shtukas selftest``."""

from __future__ import annotations

import itertools
import time
from fractions import Fraction

import numpy as np

from .field import field_create
from .galois import openness_report, p_adic_split, unit_group
from .series import BaseRingSpec
from .shtuka import (
    adjunction_check,
    carlitz,
    pullback,
    pushforward,
    shtuka_dual,
    shtuka_tensor,
)
from .tower import GaloisAction, l_plus, sigma_z, tower_build, tower_valuation


def check_field_axioms():
    for p, m in [(3, 1), (5, 1), (3, 2), (5, 2)]:
        F = field_create(p, m)
        xs = np.arange(F.q, dtype=np.int64)
        a, b = np.meshgrid(xs, xs, indexing="ij")
        a, b = a.ravel(), b.ravel()
        if not np.array_equal(F.vadd(a, b), F.vadd(b, a)):
            return False, f"addition not commutative in {F!r}"
        if not np.array_equal(F._vmul(a, b), F._vmul(b, a)):
            return False, f"multiplication not commutative in {F!r}"
        for c in range(F.q):
            cv = np.full_like(a, c)
            if not np.array_equal(F._vmul(F._vmul(a, b), cv), F._vmul(a, F._vmul(b, cv))):
                return False, f"multiplication not associative in {F!r}"
            if not np.array_equal(F._vmul(F.vadd(a, b), cv), F.vadd(F._vmul(a, cv), F._vmul(b, cv))):
                return False, f"distributivity fails in {F!r}"
        frob = lambda v: F.vfrobenius(v, p)
        if not np.array_equal(frob(F.vadd(a, b)), F.vadd(frob(a), frob(b))):
            return False, f"Frobenius not additive in {F!r}"
        if any(F.power(x, F.q - 1) != 1 for x in range(1, F.q)):
            return False, f"Fermat fails in {F!r}"
    return True, "F_3, F_5, F_9, F_25 exhaustive"


def check_tower():
    for q in (3, 5):
        F = field_create(q)
        base = BaseRingSpec(F, 16, 4)
        for n in range(4):
            T = tower_build(base, n)
            if T.degree != (q - 1) * q**n or len(T.basis) != T.degree:
                return False, f"degree wrong for q={q}, n={n}"
            for i, g in enumerate(T.generators):
                if tower_valuation(g) != Fraction(1, (q - 1) * q**i):
                    return False, f"v(l_{i}) wrong for q={q}, n={n}"
            lp = l_plus(T)
            zr = lp.ring
            zmz = zr.make([T.from_K(base.K.monomial(F.neg(1), 1)), T.one], 0, None)
            if not (sigma_z(lp) - zmz * lp).is_zero():
                return False, f"sigma(l_+) != (z - zeta) l_+ for q={q}, n={n}"
    return True, "q in {3,5}, n <= 3"


def check_galois_action():
    F = field_create(3)
    base = BaseRingSpec(F, 12, 4)
    for n in range(3):
        T = tower_build(base, n)
        zeta = T.from_K(base.K.gen)
        group = list(unit_group(F, n))
        actions = {chi: GaloisAction(T, chi) for chi in group}
        seen = set()
        for chi, g in actions.items():
            imgs = g.images
            if not imgs[0] ** (T.q - 1) == T.from_K(base.K.monomial(F.neg(1), 1)):
                return False, f"Kummer relation broken by chi={chi}"
            for i in range(1, n + 1):
                if not imgs[i] ** T.q + zeta * imgs[i] == imgs[i - 1]:
                    return False, f"relation {i} broken by chi={chi}"
            key = tuple(repr(x) for x in imgs)
            if key in seen:
                return False, "character action not injective"
            seen.add(key)
        if n <= 1:
            grp = unit_group(F, n)
            for c1, c2 in itertools.product(group, repeat=2):
                prod = tuple(int(x) for x in grp.mul(np.array(c1), np.array(c2)))
                composed = [actions[c1](x) for x in actions[c2].images]
                if any(not a == b for a, b in zip(composed, actions[prod].images)):
                    return False, f"g_{c1} g_{c2} != g_{prod}"
    return True, "q = 3, n <= 2 (composition n <= 1)"


def check_unit_groups():
    for q in (3, 5):
        F = field_create(q)
        for n in range(4):
            G = unit_group(F, n)
            if G.order != (q - 1) * q**n or len(np.unique(G.codes(G.elements))) != G.order:
                return False, f"order wrong for q={q}, n={n}"
            for d in range(1, 13):
                r = openness_report(F, d, n, group=G)
                e, dp = p_adic_split(d, q)
                if not r.contained:
                    return False, f"u^{d} not supported on z^{q**e} (q={q}, n={n})"
                if r.index > dp or r.kernel_order > dp:
                    return False, f"index/kernel bound fails for q={q}, n={n}, d={d}"
                ker_d = int(np.count_nonzero(np.all(G.power(G.elements, d) == G.identity(), axis=1)))
                if ker_d != r.full_index:
                    return False, f"kernel order != index for q={q}, n={n}, d={d}"
    return True, "q in {3,5}, n <= 3, d <= 12"


def check_functors():
    F = field_create(3)
    base = BaseRingSpec(F, 16, 6)
    C = carlitz(base, 1)
    for d1, d2 in itertools.product(range(-2, 3), repeat=2):
        a, b = carlitz(base, d1), carlitz(base, d2)
        if shtuka_tensor(a, b).dim() != d1 + d2 or shtuka_dual(a).dim() != -d1:
            return False, f"tensor/dual dims wrong for {d1}, {d2}"
    for e in (0, 1):
        P = 3**e
        Cp = carlitz(base, 1, zeta_power=P)
        if pullback(Cp, P).dim() != P or pushforward(C, P).rank != P:
            return False, f"functor bookkeeping wrong for e={e}"
        if not adjunction_check(Cp, C, P).ok:
            return False, f"adjunction fails for e={e}"
    return True, "Carlitz powers, e in {0,1}"


SUITES = [
    ("field axioms", check_field_axioms),
    ("tower degrees/valuations/Carlitz relation", check_tower),
    ("Galois action by units", check_galois_action),
    ("unit groups and power maps", check_unit_groups),
    ("shtuka functors and adjunction", check_functors),
]


def run_selftest(out=None):
    """Run every suite; returns a list of ``(name, passed, detail, seconds)``."""
    results = []
    for name, func in SUITES:
        start = time.perf_counter()
        try:
            ok, detail = func()
        except Exception as exc:  # a crash counts as a failed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail, time.perf_counter() - start))
        if out is not None:
            print(f"{'PASS' if ok else 'FAIL'}  {name:<45} {detail} ({results[-1][3]:.2f}s)", file=out)
    return results
