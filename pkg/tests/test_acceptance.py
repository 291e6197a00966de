"""The ten acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line with its runtime
and fails if the runtime limit is exceeded.  Criterion 6 as literally stated
does not hold; it is kept as a strict expected failure (see the docstring of
``test_criterion_6_non_openness``).
"""

from __future__ import annotations

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from shtukas import (
    BaseRingSpec,
    GaloisAction,
    LocalShtuka,
    adjunction_check,
    associate_local_shtuka,
    carlitz,
    cyclotomic_char,
    det_criterion,
    field_create,
    load_motive,
    openness_report,
    pullback,
    pushforward,
    rank_one_normalize,
    shtuka_dim,
    shtuka_dual,
    shtuka_hom_structure,
    shtuka_tensor,
    tate_generator_rank_one,
    tower_build,
    tower_valuation,
    unit_group,
)
from shtukas.galois import p_adic_split
from shtukas.tower import l_plus, sigma_z

import oracles
from test_shtuka import DATA, random_shtuka

F3, F5 = field_create(3), field_create(5)


@contextmanager
def criterion(number, title, limit, capsys):
    """Time the block, print one PASS/FAIL line, enforce the runtime limit."""
    start = time.perf_counter()
    status, detail = "PASS", ""
    try:
        yield
    except AssertionError as exc:
        status, detail = "FAIL", f" ({str(exc).splitlines()[0]})" if str(exc) else ""
        raise
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and elapsed > limit:
            status, detail = "FAIL", f" (runtime {elapsed:.2f}s over the {limit}s limit)"
        with capsys.disabled():
            print(f"\ncriterion {number}: {status}  {title} [{elapsed:.2f}s / {limit}s]{detail}")
    assert elapsed <= limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def test_criterion_1_tower_ramification(capsys):
    with criterion(1, "tower degree and generator valuations", 10, capsys):
        for q in (3, 5):
            base = BaseRingSpec(field_create(q), 16, 4)
            for n in range(4):
                T = tower_build(base, n)
                assert T.degree == (q - 1) * q**n == len(T.basis)
                vals = [tower_valuation(g) for g in T.generators]
                assert vals == [Fraction(1, (q - 1) * q**i) for i in range(n + 1)]
                assert vals == oracles.tower_generator_valuations(q, n)


def test_criterion_2_carlitz_relation(capsys):
    with criterion(2, "sigma(l_+) = (z - zeta) l_+ mod z^(n+1)", 5, capsys):
        for q in (3, 5):
            base = BaseRingSpec(field_create(q), 16, 4)
            for n in range(4):
                T = tower_build(base, n)
                lp = l_plus(T)
                zmz = lp.ring.make([T.from_K(base.K.monomial(q - 1, 1)), T.one], 0, None)
                residual = sigma_z(lp) - zmz * lp
                assert residual.prec == n + 1 and residual.is_zero()


def test_criterion_3_character_isomorphism(capsys):
    with criterion(3, "chi -> g_chi injective homomorphism, cross-check on all units", 30, capsys):
        base = BaseRingSpec(F3, 12, 4)
        for n in range(3):
            T = tower_build(base, n)
            zeta = T.from_K(base.K.gen)
            minus_zeta = T.from_K(base.K.monomial(2, 1))
            G = unit_group(F3, n)
            actions = {chi: GaloisAction(T, chi) for chi in G}
            images = set()
            for chi, g in actions.items():
                imgs = g.images
                assert imgs[0] ** 2 == minus_zeta
                for i in range(1, n + 1):
                    assert imgs[i] ** 3 + zeta * imgs[i] == imgs[i - 1]
                images.add(tuple(repr(x) for x in imgs))
                assert cyclotomic_char(chi, T, cross_check=True) == chi
            assert len(images) == G.order
            for c1, c2 in itertools.product(G, repeat=2):
                prod = tuple(int(x) for x in G.mul(np.array(c1), np.array(c2)))
                g1, g2 = actions[c1], actions[c2]
                assert all(g1(x) == y for x, y in zip(g2.images, actions[prod].images))


def test_criterion_4_squared_carlitz_index(capsys):
    with criterion(4, "q = 3, d = 2: index 2, open", 5, capsys):
        for n in range(4):
            r = openness_report(F3, 2, n)
            assert r.full_index == 2 and r.open_in_full


def test_criterion_5_containment_and_bounds(capsys):
    with criterion(5, "u^d supported on z^(p^e), index and kernel <= d'", 60, capsys):
        for q, F in ((3, F3), (5, F5)):
            for n in range(4):
                G = unit_group(F, n)
                for d in range(1, 13):
                    e, dp = p_adic_split(d, q)
                    powers = G.power(G.elements, d)
                    assert np.all(G.supported_on(powers, q**e))
                    r = openness_report(F, d, n, group=G)
                    assert r.contained
                    assert r.index <= dp, (q, n, d, r.index)
                    assert r.kernel_order <= dp, (q, n, d, r.kernel_order)


@pytest.mark.xfail(strict=True, reason="full index is constant from n = 2 to n = 3 for d = 3, 6")
def test_criterion_6_non_openness(capsys):
    """The literal criterion: open_in_full false and strictly increasing full index over n = 1, 2, 3.

    Exhaustive enumeration (and the closed form gcd(d', q-1) q^(n - floor(n/p^e)))
    gives full indices 3, 9, 9 for d = 3 and 6, 18, 18 for d = 6 at n = 1, 2, 3:
    at n = 3 the cube map gains the new image z^3 coefficient, so the image
    grows by the same factor q as the group.  Only d = 9 increases at every
    step.  The failure is therefore a property of the groups, not of the
    code; the true statement is checked by the next test.
    """
    with criterion(6, "q = 3, d in {3,6,9}: not open, index strictly increasing in n", 10, capsys):
        observed = {}
        for d in (3, 6, 9):
            idx = []
            for n in (1, 2, 3):
                r = openness_report(F3, d, n)
                assert not r.open_in_full
                assert r.full_index == oracles.full_index(3, n, d)
                idx.append(r.full_index)
            observed[d] = idx
        assert all(a < b < c for a, b, c in observed.values()), f"full indices {observed}"


def test_criterion_6_non_openness_as_it_holds(capsys):
    """Not open, index non-decreasing and unbounded in n, strictly up from n = 1 to 2."""
    for d in (3, 6, 9):
        idx = [openness_report(F3, d, n).full_index for n in range(1, 7)]
        assert all(not openness_report(F3, d, n).open_in_full for n in (1, 2, 3))
        assert idx[0] < idx[1]
        assert all(a <= b for a, b in zip(idx, idx[1:]))
        assert idx[-1] >= 9 * idx[0]


def test_criterion_7_functor_bookkeeping(capsys):
    with criterion(7, "pullback/pushforward, tensor/dual/hom dims, adjunction", 30, capsys):
        base = BaseRingSpec(F3, 32, 16)
        rng = random.Random(20261017)
        for e in (0, 1):
            P = 3**e
            for d in (-1, 1, 2):
                mp = carlitz(base, d, zeta_power=P)
                assert shtuka_dim(pullback(mp, P)) == P * shtuka_dim(mp)
                assert pushforward(carlitz(base, d), P).rank == P
        for _ in range(100):
            m, dm = random_shtuka(rng, base)
            n, dn = random_shtuka(rng, base)
            assert shtuka_dim(m) == dm
            assert shtuka_dim(shtuka_tensor(m, n)) == n.rank * dm + m.rank * dn
            assert shtuka_dim(shtuka_dual(m)) == -dm
            assert shtuka_dim(shtuka_hom_structure(m, n)) == m.rank * dn - n.rank * dm
            P = 3
            mp = LocalShtuka(base, m.tau, m.twist, P)
            assert shtuka_dim(pullback(mp, P)) == P * shtuka_dim(mp)
            assert pushforward(m, P).rank == P * m.rank
        small = BaseRingSpec(F3, 16, 6)
        for e in (0, 1):
            P = 3**e
            report = adjunction_check(carlitz(small, 1, zeta_power=P), carlitz(small, 1), P)
            assert report.unit_commutes and report.counit_commutes
            assert report.triangle_left and report.triangle_right


def test_criterion_8_motive_ingestion(capsys):
    with criterion(8, "Carlitz motive at places of degree 1 and 2", 10, capsys):
        for name, f_v in (("carlitz_t.json", 1), ("carlitz_t2p1.toml", 2)):
            m = associate_local_shtuka(load_motive(DATA / name), 32, 8)
            assert m.base.field.m == f_v
            assert m.rank == 1 and shtuka_dim(m) == 1
            nf = rank_one_normalize(m)
            assert nf.d == 1 and nf.verified


def test_criterion_9_determinant_criterion(capsys):
    with criterion(9, "det criterion verdicts", 5, capsys):
        base = BaseRingSpec(F3, 16, 6)
        zmz = base.z_minus_zeta()
        rank2 = LocalShtuka(base, [[zmz, base.Rz.zero], [base.Rz.zero, zmz**2]])
        assert shtuka_dim(rank2) == 3 and det_criterion(rank2) == "NotOpen"
        assert det_criterion(carlitz(base, 2)) == "Open"
        cube = LocalShtuka(base, [[base.z**3 - base.Rz.const(base.zeta**3)]])
        assert det_criterion(cube) == "NotOpen"


def test_criterion_10_tate_generator(capsys):
    with criterion(10, "sigma(a) = tau a for Carlitz powers and 2(z - zeta)", 30, capsys):
        base = BaseRingSpec(F3, 24, 4)
        for d in range(-1, 5):
            gen = tate_generator_rank_one(carlitz(base, d))
            assert gen.verified, d
        twice = LocalShtuka(base, [[base.z_minus_zeta().scale(base.R.const(2))]])
        gen = tate_generator_rank_one(twice, s=2)
        assert gen.verified
