"""Truncated power and Laurent series in one variable over a pluggable ring.

A series ``f = sum_{i >= low} c_i x^i + O(x^prec)`` stores the coefficients
for ``low <= i < prec``.  ``prec=None`` marks an exact series (a Laurent
polynomial).  Arithmetic only ever reports digits it can prove from its
inputs: sums keep the smaller absolute precision and products the smaller
relative precision.

Series rings are rings themselves, so they nest: the base ring
``R = F_v[[zeta]]`` is a series ring over a finite field and ``R[[z]]`` is a
series ring over ``R``.
"""

from __future__ import annotations

from .errors import (
    DivisionByZero,
    NonUnit,
    NonUnitLeadingCoefficient,
    PrecisionExhausted,
    SpecMismatch,
    VarMismatch,
    ZeroInput,
)
from .ring import Ring


def _pmin(a, b):
    """Minimum where ``None`` stands for +infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _padd(a, k):
    return None if a is None else a + k


class SeriesRing(Ring):
    """Series in ``var`` over ``base``.

    ``default_prec`` is the relative precision used when an exact series that
    is not a monomial has to be inverted.  ``laurent`` only affects what counts
    as a unit: in a power-series ring the unit group is the set of series with
    unit constant term, in a Laurent ring every nonzero series with unit leading
    coefficient is invertible.
    """

    def __init__(self, base, var, default_prec, laurent=False):
        if default_prec < 1:
            raise ValueError("precision must be >= 1")
        self.base = base
        self.var = var
        self.default_prec = default_prec
        self.laurent = laurent
        self.zero = self.make(base.vzeros(0), 0, None)
        self.one = self.make(base.vec([base.one]), 0, None)

    def __repr__(self):
        kind = "Laurent" if self.laurent else "power"
        return f"SeriesRing({self.var}, {kind}, over {self.base!r}, prec={self.default_prec})"

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and self.var == other.var
            and self.base == other.base
            and self.default_prec == other.default_prec
            and self.laurent == other.laurent
        )

    def __hash__(self):
        return hash((self.var, self.base, self.default_prec, self.laurent))

    @property
    def characteristic(self):
        return self.base.characteristic

    def as_laurent(self, laurent=True):
        return SeriesRing(self.base, self.var, self.default_prec, laurent)

    # -- construction ----------------------------------------------------------
    def make(self, coeffs, low=0, prec=None):
        """Build a normalised series from a base-ring vector."""
        base = self.base
        if prec is not None:
            if prec <= low:
                return TruncSeries(self, prec, base.vzeros(0), prec)
            coeffs = base.vpad(coeffs, prec - low)
        first = base.vfirst_nonzero(coeffs)
        if first is None:
            low = prec if prec is not None else 0
            return TruncSeries(self, low, base.vzeros(0), prec)
        if prec is None:
            last = base.vlast_nonzero(coeffs)
            coeffs = coeffs[first : last + 1]
        else:
            coeffs = coeffs[first:]
        return TruncSeries(self, low + first, coeffs, prec)

    def from_coeffs(self, coeffs, low=0, prec=None):
        return self.make(self.base.vec(coeffs), low, prec)

    def const(self, c, prec=None):
        return self.make(self.base.vec([c]), 0, prec)

    def monomial(self, c=None, e=1):
        c = self.base.one if c is None else c
        return self.make(self.base.vec([c]), e, None)

    @property
    def gen(self):
        return self.monomial(self.base.one, 1)

    def from_int(self, k):
        return self.const(self.base.from_int(k))

    def zero_to(self, prec):
        """The series ``O(x^prec)``."""
        return self.make(self.base.vzeros(0), prec, prec)

    def coerce(self, x):
        if isinstance(x, TruncSeries):
            if x.ring.var != self.var:
                raise VarMismatch(f"series in {x.ring.var} used where {self.var} expected")
            if x.ring.base != self.base:
                raise SpecMismatch("series over a different coefficient ring")
            if x.ring is not self:
                return TruncSeries(self, x.low, x.coeffs, x.prec)
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return self.const(x)

    # -- ring contract -----------------------------------------------------------
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
        if a.is_zero():
            return False
        if not self.laurent and a.low != 0:
            return False
        return self.base.is_unit(a.coeffs[0])

    def inv(self, a):
        if not self.is_unit(a):
            if a.is_zero():
                raise DivisionByZero(f"inverse of a zero series in {self.var}")
            raise NonUnit(f"{a!r} is not a unit of {self!r}")
        return a.inverse()

    def qth_power(self, a, q):
        p = self.characteristic
        k = q
        while k % p == 0:
            k //= p
        if k != 1:
            return self.power(a, q)
        return a.frobenius(q)

    def encode(self, a):
        return a.to_json()

    def decode(self, data):
        if data.get("var", self.var) != self.var:
            raise VarMismatch(f"expected a series in {self.var}")
        coeffs = [self.base.decode(c) for c in data["coeffs"]]
        return self.make(self.base.vec(coeffs) if coeffs else self.base.vzeros(0),
                         int(data.get("low", 0)), data.get("prec"))


class TruncSeries:
    """A truncated Laurent series; see :class:`SeriesRing`."""

    __slots__ = ("ring", "low", "coeffs", "prec")
    __hash__ = None

    def __init__(self, ring, low, coeffs, prec):
        self.ring = ring
        self.low = low
        self.coeffs = coeffs
        self.prec = prec

    # -- inspection ------------------------------------------------------------
    @property
    def var(self):
        return self.ring.var

    @property
    def base(self):
        return self.ring.base

    def is_exact(self):
        return self.prec is None

    def is_zero(self):
        return len(self.coeffs) == 0

    @property
    def high(self):
        """One past the last stored exponent."""
        return self.low + len(self.coeffs)

    def valuation(self):
        """Exponent of the lowest nonzero term, or ``None`` for (known) zero."""
        return None if self.is_zero() else self.low

    def degree(self):
        """Highest exponent of an exact series."""
        if self.prec is not None:
            raise PrecisionExhausted("degree of a truncated series is unknown")
        return None if self.is_zero() else self.high - 1

    def coeff(self, i):
        if self.prec is not None and i >= self.prec:
            raise PrecisionExhausted(f"coefficient of {self.var}^{i} is beyond precision {self.prec}")
        if self.low <= i < self.high:
            return self.coeffs[i - self.low]
        return self.base.zero

    def leading(self):
        if self.is_zero():
            raise ZeroInput("zero series has no leading coefficient")
        return self.coeffs[0]

    def terms(self):
        for i, c in enumerate(self.base.vtolist(self.coeffs)):
            if not self.base.is_zero(c):
                yield self.low + i, c

    def coeff_list(self, start, stop):
        """Coefficients for exponents ``start..stop-1`` as a base-ring vector."""
        base = self.base
        if self.prec is not None and stop > self.prec:
            raise PrecisionExhausted(f"coefficients up to {stop} requested, precision is {self.prec}")
        if stop <= start:
            return base.vzeros(0)
        lo = max(start, self.low)
        hi = min(stop, self.high)
        if hi <= lo:
            return base.vzeros(stop - start)
        head = base.vzeros(lo - start)
        body = self.coeffs[lo - self.low : hi - self.low]
        return base.vpad(base.vconcat(head, body), stop - start)

    # -- arithmetic ---------------------------------------------------------------
    def _other(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._other(other)
        return _combine(self, other, self.base.vadd)

    def __radd__(self, other):
        return self._other(other) + self

    def __sub__(self, other):
        other = self._other(other)
        return _combine(self, other, self.base.vsub)

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return TruncSeries(self.ring, self.low, self.base.vneg(self.coeffs), self.prec)

    def __mul__(self, other):
        other = self._other(other)
        ring, base = self.ring, self.base
        f, g = self, other
        if f.is_zero() and f.prec is None or g.is_zero() and g.prec is None:
            return ring.zero
        low = f.low + g.low
        prec = _pmin(_padd(g.prec, f.low), _padd(f.prec, g.low))
        if f.is_zero() or g.is_zero():
            return ring.zero_to(prec)
        n = None if prec is None else prec - low
        return ring.make(base.vconv(f.coeffs, g.coeffs, n), low, prec)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply every coefficient by the base-ring element ``c``."""
        return self.ring.make(self.base.vscale(c, self.coeffs), self.low, self.prec)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return self.ring.power(self, n) if n else self.ring.one

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def inverse(self, rel_prec=None):
        """Multiplicative inverse; the lowest coefficient must be a unit of the base."""
        if self.is_zero():
            raise DivisionByZero(f"inverse of a zero series in {self.var}")
        base = self.base
        lead = self.coeffs[0]
        if not base.is_unit(lead):
            raise NonUnitLeadingCoefficient(
                f"lowest coefficient of the series in {self.var} is not a unit"
            )
        if self.prec is None and len(self.coeffs) == 1:
            return self.ring.make(base.vec([base.inv(lead)]), -self.low, None)
        rel = self.prec - self.low if self.prec is not None else self.ring.default_prec
        if rel_prec is not None:
            rel = min(rel, rel_prec)
        return self.ring.make(base.vinv(self.coeffs, rel), -self.low, rel - self.low)

    def __eq__(self, other):
        try:
            other = self._other(other)
        except (VarMismatch, SpecMismatch):
            return False
        return (self - other).is_zero()

    # -- structural maps ----------------------------------------------------------
    def with_prec(self, prec):
        """Forget everything from ``x^prec`` on (never raises precision)."""
        prec = _pmin(self.prec, prec)
        return self.ring.make(self.coeffs, self.low, prec)

    def shift(self, k):
        """Multiply by ``x^k``."""
        return TruncSeries(self.ring, self.low + k, self.coeffs, _padd(self.prec, k))

    def dilate(self, k, ring=None):
        """Substitute ``x -> x^k`` (k >= 1)."""
        if k < 1:
            raise ValueError("dilation factor must be >= 1")
        ring = ring or self.ring
        base = self.base
        if k == 1 or self.is_zero():
            return ring.make(self.coeffs, self.low * k, None if self.prec is None else self.prec * k)
        n = (len(self.coeffs) - 1) * k + 1
        out = base.vzeros(n)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return ring.make(out, self.low * k, None if self.prec is None else self.prec * k)

    def map_coeffs(self, func, ring=None):
        """Apply ``func`` to each coefficient; ``func`` must send zero to zero."""
        ring = ring or self.ring
        return ring.make(ring.base.vec(func(c) for c in self.coeffs) if len(self.coeffs) else ring.base.vzeros(0),
                         self.low, self.prec)

    def frobenius(self, q):
        """``f**q`` for q a power of the characteristic: raise coefficients and dilate."""
        base = self.base
        if hasattr(base, "vfrobenius"):
            coeffs = base.vfrobenius(self.coeffs, q)
        else:
            coeffs = base.vmap(lambda c: base.qth_power(c, q), self.coeffs)
        return TruncSeries(self.ring, self.low, coeffs, self.prec).dilate(q)

    # -- output --------------------------------------------------------------------
    def to_json(self):
        return {
            "var": self.var,
            "low": int(self.low),
            "prec": self.prec,
            "coeffs": [self.base.encode(c) for c in self.base.vtolist(self.coeffs)],
        }

    def __repr__(self):
        parts = []
        for e, c in self.terms():
            mono = "1" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            cs = repr(c)
            if mono == "1":
                parts.append(cs if " " not in cs else f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs if ' ' not in cs else '(' + cs + ')'}*{mono}")
        if self.prec is not None:
            parts.append(f"O({self.var}^{self.prec})")
        return " + ".join(parts) if parts else "0"


def _combine(f, g, vop):
    ring, base = f.ring, f.base
    prec = _pmin(f.prec, g.prec)
    if f.is_zero() and g.is_zero():
        return ring.zero_to(prec) if prec is not None else ring.zero
    lows = [s.low for s in (f, g) if not s.is_zero()]
    low = min(lows)
    if prec is not None:
        low = min(low, prec)
        end = prec
    else:
        end = max(s.high for s in (f, g))
    return ring.make(vop(f.coeff_list(low, end), g.coeff_list(low, end)), low, prec)


# -- module-level operations ---------------------------------------------------------

def series_arith(f, g, op):
    """``op`` in {'add', 'sub', 'mul'} on two series in the same variable."""
    if f.var != g.var:
        raise VarMismatch(f"{f.var} vs {g.var}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def series_inv(f):
    return f.inverse()


def split_by_residue(f, k, ring=None):
    """Return ``g_0..g_{k-1}`` with ``f(x) = sum_j x^j g_j(x^k)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ring = ring or f.ring
    base = f.base
    out = []
    for j in range(k):
        if f.prec is None:
            prec_j = None
        else:
            prec_j = -((j - f.prec) // k)
        exps = range(f.low, f.high)
        first = next((e for e in exps if e % k == j), None)
        if first is None:
            out.append(ring.zero_to(prec_j) if prec_j is not None else ring.zero)
            continue
        picked = f.coeffs[first - f.low :: k]
        out.append(ring.make(picked, first // k, prec_j))
    return out


def reassemble(parts, k, ring):
    """Inverse of :func:`split_by_residue`."""
    total = ring.zero
    for j, g in enumerate(parts):
        total = total + g.dilate(k, ring).shift(j)
    return total


def z_minus_zeta_valuation(f, zeta_power=1, zeta_prec=None):
    """Write ``f = (z - zeta^k)^d * cofactor`` with ``d`` maximal.

    ``f`` is a power series in z over a zeta-series ring and ``k`` is
    ``zeta_power``.  The remainder of each division is the value ``f(zeta^k)``.
    A remainder that vanishes is accepted when it is exactly zero or zero to
    ``min(zeta_prec, k * N)`` digits, where ``zeta_prec`` defaults to the
    coefficient ring's working precision and N is the z-precision of the
    current quotient (the tail ``O(z^N)`` only affects digits from ``k * N``
    on).  If it vanishes to fewer digits the multiplicity cannot be certified
    and :class:`PrecisionExhausted` is raised.
    """
    zring = f.ring
    R = zring.base
    M = R.default_prec if zeta_prec is None else zeta_prec
    if f.is_zero():
        raise ZeroInput("the series is zero to its precision")
    if f.low < 0:
        raise ValueError("expected a power series in z")
    k = zeta_power
    c = R.monomial(R.base.one, k)
    d = 0
    while True:
        N = f.prec
        rem = R.zero
        for j in range(f.low, f.high):
            rem = rem + f.coeff(j).shift(k * j)
        if N is not None:
            rem = rem.with_prec(k * N)
        if not rem.is_zero():
            return d, f
        budget = M if N is None else min(M, k * N)
        if rem.prec is not None and rem.prec < budget:
            raise PrecisionExhausted(
                f"(z - zeta^{k})-divisibility only visible to zeta-precision {rem.prec} < {budget} "
                f"after {d} division(s)"
            )
        f = _divide_by_z_minus_c(f, k)
        d += 1
        if f.is_zero():
            raise PrecisionExhausted(f"precision exhausted after {d} division(s) by (z - zeta^{k})")


def _divide_by_z_minus_c(f, k):
    """Quotient of ``f - f(zeta^k)`` by ``z - zeta^k``.

    Top-down synthetic division: ``g_i = f_{i+1} + zeta^k g_{i+1}``.  When f
    is truncated at ``z^N`` the unknown tail enters ``g_i`` multiplied by
    ``zeta^(k(N-1-i))``, which bounds the zeta-precision of ``g_i``.
    """
    zring = f.ring
    R = zring.base
    N = f.prec
    top = f.high if N is None else N
    coeffs = []
    acc = R.zero
    for i in range(top - 2, -1, -1):
        acc = acc.shift(k) + f.coeff(i + 1)
        if N is not None:
            acc = acc.with_prec(k * (N - 1 - i))
        coeffs.append(acc)
    coeffs.reverse()
    new_prec = None if N is None else N - 1
    return zring.make(coeffs, 0, new_prec)


class BaseRingSpec:
    """Working rings over F_v: ``R = F_v[[zeta]]``, ``K = F_v((zeta))`` and ``R[[z]]``.

    ``zeta_prec`` (M) is the relative zeta-precision for inverses, ``z_prec``
    (N) the default z-precision.  ``q_v`` is the exponent of the Frobenius
    sigma; it equals ``#F_v`` unless the coefficients were extended to a
    bigger residue field (see :meth:`extend`).
    """

    def __init__(self, field, zeta_prec=32, z_prec=8, q_v=None):
        if zeta_prec < 1 or z_prec < 1:
            raise ValueError("precisions must be >= 1")
        self.field = field
        self.q_v = field.q if q_v is None else q_v
        self.zeta_prec = zeta_prec
        self.z_prec = z_prec
        self.R = SeriesRing(field, "zeta", zeta_prec, laurent=False)
        self.K = SeriesRing(field, "zeta", zeta_prec, laurent=True)
        self.Rz = SeriesRing(self.R, "z", z_prec, laurent=False)

    @property
    def zeta(self):
        return self.R.gen

    @property
    def z(self):
        return self.Rz.gen

    def z_minus_zeta(self, k=1):
        """The exact polynomial ``z - zeta^k`` in ``R[[z]]``."""
        R = self.R
        return self.Rz.make([R.monomial(self.field.neg(1), k), R.one], 0, None)

    def sigma(self, f):
        """The Frobenius on R[[z]] (or R): q_v-th power on R, identity on z."""
        if f.ring.var == "zeta":
            return self.R.qth_power(f, self.q_v)
        R = self.R
        return f.map_coeffs(lambda c: R.qth_power(c, self.q_v))

    def extend(self, s):
        """The same rings over the degree-s extension of F_v, with the embedding."""
        from .field import field_extension

        emb = field_extension(self.field, s)
        return BaseRingSpec(emb.big, self.zeta_prec, self.z_prec, q_v=self.q_v), emb

    def embed(self, f, big, emb):
        """Transport a zeta-series or a z-series over R into ``big`` along ``emb``."""
        if f.ring.var == "zeta":
            ring = big.K if f.ring.laurent else big.R
            return ring.make(emb.vec(f.coeffs), f.low, f.prec)
        return f.map_coeffs(lambda c: self.embed(c, big, emb), ring=big.Rz)

    def with_precision(self, zeta_prec=None, z_prec=None):
        return BaseRingSpec(self.field, zeta_prec or self.zeta_prec, z_prec or self.z_prec, self.q_v)

    def _key(self):
        return (self.field, self.zeta_prec, self.z_prec, self.q_v)

    def __eq__(self, other):
        return isinstance(other, BaseRingSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"BaseRingSpec({self.field!r}, zeta_prec={self.zeta_prec}, z_prec={self.z_prec})"

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "q_v": self.q_v,
            "zeta_prec": self.zeta_prec,
            "z_prec": self.z_prec,
        }
