"""The Carlitz-Tate tower K_n = K(l_0, ..., l_n) over K = F_v((zeta)).

The generators satisfy

    l_0^(q-1) = -zeta^k,    l_i^q + zeta^k l_i = l_(i-1)   (1 <= i <= n),

with ``k = 1`` for the tower itself; other values of ``k`` give the same tower
written in the variable ``zeta^k`` and are used when a shtuka has been pulled
back along ``z' -> z^k``.  Elements are K-linear combinations of the
monomials ``l_0^e_0 ... l_n^e_n`` with ``e_0 < q - 1`` and ``e_i < q``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .errors import PrecisionExhausted, SpecMismatch, ZeroInput, NonUnit
from .ring import Ring
from .series import SeriesRing


class TowerSpec(Ring):
    """Presentation of K_n.

    ``q`` is the exponent of the Frobenius (``q_v``) and defaults to the size
    of the base field; it may be smaller when the coefficients have been
    extended to a larger residue field.
    """

    def __init__(self, base, level, q=None, zeta_power=1):
        if level < 0:
            raise ValueError("level must be >= 0")
        self.base = base
        self.level = level
        self.q = base.q_v if q is None else q
        self.zeta_power = zeta_power
        self.K = base.K
        self.field = base.field
        self.degree = (self.q - 1) * self.q**level
        self.bounds = (self.q - 1,) + (self.q,) * level
        self.basis = [tuple(e) for e in itertools.product(*[range(b) for b in self.bounds])]
        self._index = {e: i for i, e in enumerate(self.basis)}
        self._reduce_cache = {}
        self.zero = TowerElement(self, {})
        self.one = TowerElement(self, {self.unit_exps(): self.K.one})
        # -zeta^k as an exact element of K
        self._minus_zeta_k = self.K.monomial(self.field.neg(1), zeta_power)

    def _key(self):
        return (self.base, self.level, self.q, self.zeta_power)

    def __eq__(self, other):
        return isinstance(other, TowerSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"TowerSpec(q={self.q}, level={self.level}, zeta_power={self.zeta_power}, {self.field!r})"

    @property
    def characteristic(self):
        return self.field.p

    @property
    def q_v(self):
        return self.q

    def unit_exps(self):
        return (0,) * (self.level + 1)

    # -- elements -------------------------------------------------------------
    def generator(self, i):
        """The generator l_i."""
        if not 0 <= i <= self.level:
            raise IndexError(f"generator index {i} outside 0..{self.level}")
        e = [0] * (self.level + 1)
        e[i] = 1
        return TowerElement(self, {tuple(e): self.K.one})

    @property
    def generators(self):
        return [self.generator(i) for i in range(self.level + 1)]

    def from_K(self, c):
        c = self.K.coerce(c)
        return TowerElement(self, {self.unit_exps(): c}) if not _dead(c) else self.zero

    def from_field(self, c):
        return self.from_K(self.K.const(c))

    def monomial(self, exps, c=None):
        c = self.K.one if c is None else c
        return TowerElement(self, {tuple(exps): c}).reduced()

    def mono_valuation(self, exps):
        """v(l_0^e_0 ... l_n^e_n) with v(zeta) = 1."""
        if self.zeta_power != 1:
            raise ValueError("valuations are only defined for the tower with zeta_power 1")
        return sum((Fraction(e, (self.q - 1) * self.q**i) for i, e in enumerate(exps)), Fraction(0))

    # -- reduction --------------------------------------------------------------
    def reduce_exps(self, exps):
        """Express an arbitrary monomial in the basis: dict basis exps -> exact K element."""
        exps = tuple(exps)
        hit = self._reduce_cache.get(exps)
        if hit is not None:
            return hit
        top = None
        for i in range(self.level, -1, -1):
            if exps[i] >= self.bounds[i]:
                top = i
                break
        if top is None:
            out = {exps: self.K.one}
        elif top == 0:
            e = list(exps)
            e[0] -= self.q - 1
            out = {m: c * self._minus_zeta_k for m, c in self.reduce_exps(e).items()}
        else:
            e = list(exps)
            e[top] -= self.q
            a = list(e)
            a[top - 1] += 1
            b = list(e)
            b[top] += 1
            out = dict(self.reduce_exps(a))
            for m, c in self.reduce_exps(b).items():
                term = c * self._minus_zeta_k
                out[m] = out[m] + term if m in out else term
            out = {m: c for m, c in out.items() if not _dead(c)}
        self._reduce_cache[exps] = out
        return out

    # -- ring contract ----------------------------------------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        return not a.is_zero()

    def inv(self, a):
        return tower_inv(a)

    def from_int(self, k):
        return self.from_field(self.field.from_int(k))

    def qth_power(self, a, q):
        return a ** q

    def encode(self, a):
        return a.to_json()

    def decode(self, data):
        if int(data.get("level", self.level)) != self.level:
            raise SpecMismatch("tower level mismatch")
        terms = {}
        for t in data["terms"]:
            terms[tuple(int(e) for e in t["exps"])] = self.K.decode(t["coeff"])
        return TowerElement(self, terms).reduced()

    def z_ring(self, prec=None):
        """Power series in z over this tower, by default to precision level + 1."""
        return SeriesRing(self, "z", prec or self.level + 1)


def _dead(c):
    """True for a coefficient that is exactly zero (zero-to-precision is kept)."""
    return c.is_zero() and c.prec is None


class TowerElement:
    """A K-linear combination of basis monomials of a :class:`TowerSpec`."""

    __slots__ = ("spec", "terms")
    __hash__ = None

    def __init__(self, spec, terms):
        self.spec = spec
        self.terms = terms

    def reduced(self):
        """Rewrite arbitrary exponent vectors in the monomial basis."""
        spec = self.spec
        out = {}
        for e, c in self.terms.items():
            if e in spec._index:
                out[e] = out[e] + c if e in out else c
                continue
            for m, s in spec.reduce_exps(e).items():
                t = c * s
                out[m] = out[m] + t if m in out else t
        return TowerElement(spec, {m: c for m, c in out.items() if not _dead(c)})

    # -- inspection ---------------------------------------------------------------
    def is_zero(self):
        return all(c.is_zero() for c in self.terms.values())

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.spec.K.zero)

    def coordinates(self):
        """Coefficient vector in the ordered basis."""
        K = self.spec.K
        return [self.terms.get(e, K.zero) for e in self.spec.basis]

    def in_K(self):
        """True when only the monomial 1 occurs."""
        unit = self.spec.unit_exps()
        return all(e == unit or c.is_zero() for e, c in self.terms.items())

    # -- arithmetic -----------------------------------------------------------------
    def _other(self, other):
        if isinstance(other, TowerElement):
            if other.spec != self.spec:
                raise SpecMismatch("tower elements from different towers")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        return self.spec.from_K(other)

    def __add__(self, other):
        other = self._other(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TowerElement(self.spec, {e: c for e, c in out.items() if not _dead(c)})

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        spec = self.spec
        prods = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                t = ca * cb
                prods[e] = prods[e] + t if e in prods else t
        return TowerElement(spec, prods).reduced()

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by an element of K."""
        return TowerElement(self.spec, {e: x * c for e, x in self.terms.items()}).reduced()

    def __pow__(self, n):
        if n < 0:
            return tower_inv(self) ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        return self * tower_inv(self._other(other))

    def __eq__(self, other):
        try:
            other = self._other(other)
        except SpecMismatch:
            return False
        return (self - other).is_zero()

    def with_prec(self, prec):
        return TowerElement(self.spec, {e: c.with_prec(prec) for e, c in self.terms.items()})

    def to_json(self):
        return {
            "level": self.spec.level,
            "terms": [
                {"exps": list(e), "coeff": self.terms[e].to_json()}
                for e in sorted(self.terms)
                if not _dead(self.terms[e])
            ],
        }

    def __repr__(self):
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                (f"l{i}" if x == 1 else f"l{i}^{x}") for i, x in enumerate(e) if x
            )
            cs = repr(c)
            if not mono:
                parts.append(f"({cs})")
            else:
                parts.append(mono if cs == "1" else f"({cs})*{mono}")
        return " + ".join(parts) if parts else "0"


# -- operations -----------------------------------------------------------------------

def tower_build(base, n, q=None, zeta_power=1):
    return TowerSpec(base, n, q=q, zeta_power=zeta_power)


def tower_arith(a, b, op):
    if a.spec != b.spec:
        raise SpecMismatch("tower elements from different towers")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def tower_frobenius(a):
    """``a ** q`` by square-and-multiply in the quotient ring."""
    return a ** a.spec.q


def tower_valuation(a):
    """The valuation extending v(zeta) = 1, as an exact fraction.

    Distinct basis monomials have distinct fractional valuations, so the
    valuation of a sum is the minimum over its terms.  Terms only known to be
    ``O(zeta^P)`` contribute a lower bound; if such a bound undercuts the
    minimum the result cannot be certified.
    """
    spec = a.spec
    best = None
    bound = None
    for e, c in a.terms.items():
        mv = spec.mono_valuation(e)
        if c.is_zero():
            if c.prec is not None:
                b = c.prec + mv
                bound = b if bound is None else min(bound, b)
            continue
        v = c.low + mv
        best = v if best is None else min(best, v)
    if best is None:
        if bound is None:
            raise ZeroInput("valuation of zero")
        raise PrecisionExhausted("element is zero to the available precision")
    if bound is not None and bound <= best:
        raise PrecisionExhausted("valuation not certified at this precision")
    return best


def multiplication_matrix(a):
    """Matrix of ``x -> a x`` on the monomial basis (columns are images of basis vectors)."""
    spec = a.spec
    cols = []
    for e in spec.basis:
        cols.append((a * TowerElement(spec, {e: spec.K.one})).coordinates())
    return linalg.transpose(cols)


def tower_inv(a):
    """Inverse by solving the K-linear system ``(mult. by a) x = 1``.

    Pivots are chosen by smallest zeta-valuation so that truncated
    coefficients lose as little precision as possible.
    """
    spec = a.spec
    if a.is_zero():
        raise ZeroInput("inverse of zero")
    K = spec.K
    if len(a.terms) == 1:
        (e, c), = a.terms.items()
        if e == spec.unit_exps():
            return TowerElement(spec, {e: K.inv(c)})
    mat = multiplication_matrix(a)
    rhs = spec.one.coordinates()
    try:
        x = linalg.solve(K, mat, rhs, pivot_key=lambda c: c.low)
    except NonUnit as exc:
        raise PrecisionExhausted(f"cannot invert at this precision: {exc}") from exc
    return TowerElement(spec, {e: c for e, c in zip(spec.basis, x) if not _dead(c)})


def l_plus(spec, prec=None):
    """``l_+ = sum_i l_i z^i`` as a z-series over the tower, to precision level + 1."""
    ring = spec.z_ring(prec)
    n = ring.default_prec
    coeffs = [spec.generator(i) if i <= spec.level else spec.zero for i in range(n)]
    return ring.make(coeffs, 0, n)


def sigma_z(f):
    """Apply the q-Frobenius to each coefficient of a z-series over the tower."""
    return f.map_coeffs(tower_frobenius)


def galois_apply(chi, a):
    """Apply the automorphism g with ``g(l_+) = chi^{-1} l_+`` to ``a``.

    ``chi`` is a sequence of field elements ``u_0, u_1, ...`` (the unit
    ``sum u_i z^i``); only its first level + 1 coefficients matter.
    """
    return GaloisAction(a.spec, chi)(a)


class GaloisAction:
    """The K-automorphism of K_n attached to a unit of F_v[z]/(z^(n+1))."""

    def __init__(self, spec, chi):
        self.spec = spec
        F = spec.field
        chi = [int(c) for c in chi][: spec.level + 1]
        chi += [0] * (spec.level + 1 - len(chi))
        if chi[0] == 0:
            raise NonUnit("chi must have a nonzero constant term")
        self.chi = chi
        w = [int(x) for x in F.vinv(F.vec(chi), spec.level + 1)]
        self.w = w
        gens = spec.generators
        images = []
        for i in range(spec.level + 1):
            img = spec.zero
            for j in range(i + 1):
                if w[j]:
                    img = img + gens[i - j].scale(spec.K.const(w[j]))
            images.append(img)
        self.images = images
        self._mono = {}

    def _monomial_image(self, e):
        hit = self._mono.get(e)
        if hit is None:
            hit = self.spec.one
            for img, k in zip(self.images, e):
                if k:
                    hit = hit * img**k
            self._mono[e] = hit
        return hit

    def __call__(self, a):
        out = self.spec.zero
        for e, c in a.terms.items():
            out = out + self._monomial_image(e).scale(c)
        return out
