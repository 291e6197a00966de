"""Finite-level Galois images: unit groups of F_v[z]/(z^(n+1)), power maps,
openness reports, the determinant criterion and rank-one Tate generators.

Units are stored as rows of a numpy array; row ``(u_0, ..., u_n)`` is the
unit ``sum u_i z^i`` with encoded field elements.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from .errors import NonUnit, PrecisionExhausted, SizeLimit
from .shtuka import rank_one_normalize
from .tower import GaloisAction, TowerSpec, l_plus, tower_frobenius

DEFAULT_SIZE_CAP = 10**6


def p_adic_split(d, p):
    """``(e, d')`` with ``d = p^e d'`` and ``p`` not dividing ``d'``."""
    if d == 0:
        raise ValueError("0 has no p-adic factorisation")
    e = 0
    while d % p == 0:
        d //= p
        e += 1
    return e, d


class UnitGroupLevel:
    """The group ``(F_v[z]/(z^(n+1)))^x`` enumerated in lexicographic order."""

    def __init__(self, field, n, cap=DEFAULT_SIZE_CAP):
        if n < 0:
            raise ValueError("level must be >= 0")
        q = field.q
        order = (q - 1) * q**n
        if order > cap:
            raise SizeLimit(f"unit group of order {order} exceeds the cap {cap}")
        self.field = field
        self.n = n
        self.order = order
        rows = itertools.product(range(1, q), *[range(q)] * n)
        self.elements = np.array(list(rows), dtype=np.int64).reshape(order, n + 1)

    def __len__(self):
        return self.order

    def __iter__(self):
        for row in self.elements:
            yield tuple(int(x) for x in row)

    def codes(self, arr):
        """Injective integer codes for rows (base-q digits)."""
        q = self.field.q
        weights = q ** np.arange(self.n + 1, dtype=np.int64)
        return arr @ weights

    def mul(self, a, b):
        """Row-wise product of two arrays of truncated polynomials."""
        F = self.field
        n1 = self.n + 1
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for i in range(n1):
            for j in range(n1 - i):
                prod = F._vmul(a[..., i], b[..., j]) if F.m > 1 else (a[..., i] * b[..., j]) % F.p
                out[..., i + j] = F.vadd(out[..., i + j], prod)
        return out

    def power(self, a, d):
        result = np.zeros_like(a)
        result[..., 0] = 1
        base = a.copy()
        while d:
            if d & 1:
                result = self.mul(result, base)
            d >>= 1
            if d:
                base = self.mul(base, base)
        return result

    def identity(self):
        out = np.zeros(self.n + 1, dtype=np.int64)
        out[0] = 1
        return out

    def supported_on(self, arr, step):
        """Rows whose nonzero z-coefficients sit at multiples of ``step``."""
        mask = np.ones(self.n + 1, dtype=bool)
        mask[::step] = False
        return ~np.any(arr[:, mask] != 0, axis=1)

    def ambient_order(self, step):
        """Order of the subgroup of units supported on multiples of ``step``."""
        q = self.field.q
        return (q - 1) * q ** (self.n // step)


def unit_group(field, n, cap=DEFAULT_SIZE_CAP):
    return UnitGroupLevel(field, n, cap)


@dataclass
class PowerImage:
    d: int
    e: int
    d_prime: int
    image_order: int
    full_index: int
    kernel_order: int
    supported: bool
    image: np.ndarray


def power_image(group, d):
    """Image of ``u -> u^d`` with its order, index and support certificate."""
    if d < 1:
        raise ValueError("d must be >= 1")
    p = group.field.p
    e, d_prime = p_adic_split(d, p)
    powers = group.power(group.elements, d)
    codes, first = np.unique(group.codes(powers), return_index=True)
    image = powers[np.sort(first)]
    kernel = int(np.count_nonzero(np.all(powers == group.identity(), axis=1)))
    supported = bool(np.all(group.supported_on(powers, p**e)))
    return PowerImage(
        d=d,
        e=e,
        d_prime=d_prime,
        image_order=len(codes),
        full_index=group.order // len(codes),
        kernel_order=kernel,
        supported=supported,
        image=image,
    )


@dataclass
class OpennessReport:
    q_v: int
    n: int
    d: int
    e: int
    d_prime: int
    image_order: int
    ambient_order: int
    index: int
    open_in_full: bool
    open_in_ambient: bool
    kernel_order: int
    full_order: int
    full_index: int
    contained: bool

    def to_json(self):
        return asdict(self)


REPORT_FIELDS = list(OpennessReport.__dataclass_fields__)


def openness_report(field, d, n, cap=DEFAULT_SIZE_CAP, group=None):
    """Finite-level openness data for the d-th power of the Carlitz character.

    ``index`` is the index of the image in the ambient group of units
    supported on ``z^(p^e)``-multiples; ``full_index`` the index in the full
    unit group.  ``kernel_order`` counts the units killed by ``u -> u^d'``.
    """
    group = group or unit_group(field, n, cap)
    img = power_image(group, d)
    P = field.p**img.e
    ambient = group.ambient_order(P)
    kernel = int(np.count_nonzero(
        np.all(group.power(group.elements, img.d_prime) == group.identity(), axis=1)
    ))
    index = ambient // img.image_order if img.supported else 0
    open_in_ambient = img.supported and ambient % img.image_order == 0 and index <= img.d_prime
    return OpennessReport(
        q_v=field.q,
        n=n,
        d=d,
        e=img.e,
        d_prime=img.d_prime,
        image_order=img.image_order,
        ambient_order=ambient,
        index=index,
        open_in_full=img.e == 0 and open_in_ambient,
        open_in_ambient=open_in_ambient,
        kernel_order=kernel,
        full_order=group.order,
        full_index=img.full_index,
        contained=img.supported,
    )


def cyclotomic_char(chi, tower, cross_check=False):
    """The character value of the automorphism attached to ``chi``.

    By construction this is ``chi`` itself.  With ``cross_check`` the value is
    recomputed through the tower as ``l_+ * g(l_+^{-1})`` mod ``z^(n+1)`` and
    compared coefficientwise.
    """
    n = tower.level
    chi = [int(c) for c in chi][: n + 1]
    chi += [0] * (n + 1 - len(chi))
    if chi[0] == 0:
        raise NonUnit("chi must have a nonzero constant term")
    if cross_check:
        value = character_through_tower(chi, tower)
        if value != chi:
            raise PrecisionExhausted(
                f"tower recomputation gave {value} instead of {chi}"
            )
    return tuple(chi)


def character_through_tower(chi, tower):
    """``l_+ * g(l_+^{-1})`` read off as constants of F_v, coefficient by coefficient."""
    g = GaloisAction(tower, chi)
    lp = l_plus(tower)
    inv = lp.inverse()
    image = inv.map_coeffs(g)
    rho = (lp * image).with_prec(tower.level + 1)
    out = []
    unit = tower.unit_exps()
    for i in range(tower.level + 1):
        c = rho.coeff(i)
        if not c.in_K():
            raise PrecisionExhausted(f"coefficient {i} of the character is not in K")
        k = c.coeff(unit)
        if k.is_zero():
            out.append(0)
            continue
        if k.low != 0 or not k.shift(0).__sub__(k.ring.const(k.coeffs[0])).is_zero():
            raise PrecisionExhausted(f"coefficient {i} of the character is not a constant")
        out.append(int(k.coeffs[0]))
    return out


def det_criterion(m):
    """Openness verdict from the dimension: NotOpen if p | d, Open in rank one otherwise."""
    d = m.dim()
    p = m.base.field.p
    if d % p == 0:
        return "NotOpen"
    return "Open" if m.rank == 1 else "Inconclusive"


@dataclass
class TateGenerator:
    a: object
    d: int
    e: int
    d_prime: int
    u: object
    tower: TowerSpec
    verified: bool


def tate_generator_rank_one(m, s=1, n=None, search_bound=8):
    """``a = u * f^*(l'_+^{d'})`` with ``sigma(a) = tau a`` mod ``z^(n+1)``.

    ``l'_+`` is the Carlitz generator in ``z' = z^(p^e)`` (tower with
    ``zeta_power = p^e`` at level ``n // p^e``) and u the unit found by the
    rank-one normalisation.
    """
    base = m.base
    n = base.z_prec - 1 if n is None else n
    nf = rank_one_normalize(m, s, search_bound=search_bound)
    d = nf.d
    p = base.field.p
    e, d_prime = p_adic_split(d, p) if d else (0, 0)
    P = p**e
    big, emb = base.extend(s)
    tower = TowerSpec(big, n // P, q=base.q_v, zeta_power=P)
    zr = tower.z_ring(n + 1)
    if d:
        lp = l_plus(tower, n // P + 1)
        ld = lp ** d_prime if d_prime > 0 else lp.inverse() ** (-d_prime)
        a_pulled = ld.dilate(P, ring=zr).with_prec(n + 1)
    else:
        a_pulled = zr.one.with_prec(n + 1)
    u = nf.u.with_prec(n + 1).map_coeffs(tower.from_K, ring=zr)
    a = (u * a_pulled).with_prec(n + 1)
    # sigma(a) = tau a with tau = tau_eff (z - zeta)^(-k), cleared of denominators
    tau_eff = base.embed(m.tau[0][0], big, emb).map_coeffs(tower.from_K, ring=zr)
    zmz = big.z_minus_zeta(m.zeta_power).map_coeffs(tower.from_K, ring=zr)
    lhs = a.map_coeffs(tower_frobenius)
    rhs = tau_eff * a
    if m.twist >= 0:
        lhs = lhs * zmz**m.twist
    else:
        rhs = rhs * zmz ** (-m.twist)
    verified = (lhs - rhs).with_prec(n + 1).is_zero()
    return TateGenerator(a=a, d=d, e=e, d_prime=d_prime, u=nf.u, tower=tower, verified=verified)
