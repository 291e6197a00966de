"""Finite fields F_{p^m} of odd characteristic in a polynomial basis.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coordinates with respect to ``1, x, ..., x^(m-1)``; the prime subfield is
therefore ``0..p-1``.  Arithmetic goes through exp/log tables of a primitive
element, and coefficient vectors are numpy ``int64`` arrays.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    NotPrime,
    ReducibleModulus,
    SpecMismatch,
)
from .ring import Ring

_ADD_TABLE_LIMIT = 1024


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q):
    """Return ``(p, m)`` with ``q == p**m`` or ``None`` if q is not a prime power."""
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


# -- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a, b, p):
    a, b = _trim(a), _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b):
        c = rem[-1] * inv_lead % p
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % p
        rem = _trim(rem)
    return _trim(quot), rem


def poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [x * inv_lead % p for x in a]
    return a


def poly_powmod(base, e, mod, p):
    result = [1]
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
    return result


def poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly, p):
    """Rabin's irreducibility test for a polynomial over F_p."""
    f = _trim(c % p for c in poly)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if poly_sub(poly_powmod(x, p**m, f, p), x, p):
        return False
    for r in _prime_factors(m):
        h = poly_sub(poly_powmod(x, p ** (m // r), f, p), x, p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return True


def find_irreducible(p, m):
    """Least monic irreducible of degree m, ordering by ``sum(c_i p^i)`` over the lower coefficients."""
    for value in range(p**m):
        coeffs = [(value // p**i) % p for i in range(m)] + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over F_{p}")


class FieldSpec(Ring):
    """The finite field F_p[x]/(modulus).

    Use :func:`field_create` rather than instantiating directly; it validates
    the input and caches instances.
    """

    def __init__(self, p, m, modulus):
        self.p = p
        self.m = m
        self.modulus = tuple(int(c) % p for c in modulus)
        self.q = p**m
        self.zero = 0
        self.one = 1
        self._weights = np.array([p**i for i in range(m)], dtype=np.int64)
        idx = np.arange(self.q, dtype=np.int64)
        self._digits = np.stack([(idx // p**i) % p for i in range(m)], axis=1)
        self._build_tables()

    # -- table construction ------------------------------------------------
    def _mul_coords(self, a, b):
        prod = poly_mul(a, b, self.p)
        rem = poly_divmod(prod, self.modulus, self.p)[1]
        return rem + [0] * (self.m - len(rem))

    def _encode(self, coords):
        return int(sum(int(c) * self.p**i for i, c in enumerate(coords)))

    def _build_tables(self):
        q = self.q
        order = q - 1
        for g in range(2 if q > 2 else 1, q):
            g_coords = [int(c) for c in self._digits[g]]
            powers, cur = [1], [1] + [0] * (self.m - 1)
            while True:
                cur = self._mul_coords(cur, g_coords)
                enc = self._encode(cur)
                if enc == 1:
                    break
                powers.append(enc)
            if len(powers) == order:
                break
        else:
            powers = [1]
        self.generator = powers[1] if order > 1 else 1
        self._exp = np.array(powers + powers, dtype=np.int64)
        self._log = np.zeros(q, dtype=np.int64)
        self._log[np.array(powers, dtype=np.int64)] = np.arange(order, dtype=np.int64)
        self._exp_list = [int(v) for v in self._exp]
        self._log_list = [int(v) for v in self._log]
        self._neg = self._encode_array((-self._digits) % self.p)
        self._neg_list = [int(v) for v in self._neg]
        if q <= _ADD_TABLE_LIMIT:
            d = self._digits
            s = (d[:, None, :] + d[None, :, :]) % self.p
            self._add = (s * self._weights).sum(axis=2)
        else:
            self._add = None

    def _encode_array(self, digits):
        return (digits * self._weights).sum(axis=-1).astype(np.int64)

    # -- identity ------------------------------------------------------------
    def _key(self):
        return (self.p, self.m, self.modulus if self.m > 1 else None)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    @property
    def characteristic(self):
        return self.p

    def to_json(self):
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def encode(self, a):
        return int(a)

    def decode(self, data):
        value = int(data)
        if not 0 <= value < self.q:
            raise ValueError(f"encoded value {value} out of range for {self!r}")
        return value

    # -- element construction ------------------------------------------------
    def from_int(self, k):
        return int(k) % self.p

    def from_coords(self, coords):
        coords = list(coords)
        if len(coords) > self.m:
            raise ValueError("too many coordinates")
        return self._encode([int(c) % self.p for c in coords])

    def coords(self, a):
        return tuple(int(c) for c in self._digits[a])

    def element(self, value):
        """Wrap an encoded integer (or a coordinate list) as a :class:`FieldElement`."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coords(value))
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"encoded value {value} out of range for {self!r}")
        return FieldElement(self, value)

    @property
    def gen(self):
        """The class of x; for m == 1 this is the root of the linear modulus."""
        if self.m > 1:
            return self.from_coords([0, 1])
        return (-self.modulus[0]) % self.p

    def elements(self):
        return range(self.q)

    # -- scalar ring contract ------------------------------------------------
    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self._add is not None:
            return int(self._add[a, b])
        return int(self._encode_array((self._digits[a] + self._digits[b]) % self.p))

    def neg(self, a):
        return self._neg_list[a]

    def sub(self, a, b):
        return self.add(a, self._neg_list[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero in a finite field")
        return self._exp_list[(-self._log_list[a]) % (self.q - 1)]

    def power(self, a, n):
        if a == 0:
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if n == 0 else 0
        return self._exp_list[(self._log_list[a] * n) % (self.q - 1)]

    def qth_power(self, a, q):
        return self.power(a, q)

    def frobenius(self, a, k=1):
        """``a ** (p ** k)``."""
        return self.power(a, self.p**k)

    # -- vector contract (numpy) ---------------------------------------------
    def vec(self, seq):
        return np.asarray(list(seq), dtype=np.int64)

    def vzeros(self, n):
        return np.zeros(max(n, 0), dtype=np.int64)

    def vpad(self, a, n):
        a = np.asarray(a[:n], dtype=np.int64)
        if len(a) < n:
            a = np.concatenate([a, np.zeros(n - len(a), dtype=np.int64)])
        return a

    def vconcat(self, a, b):
        return np.concatenate([np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)])

    def vadd(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a, b]
        return self._encode_array((self._digits[a] + self._digits[b]) % self.p)

    def vneg(self, a):
        return self._neg[a]

    def vsub(self, a, b):
        return self.vadd(a, self._neg[b])

    def _vmul(self, a, b):
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vscale(self, c, a):
        if c == 0:
            return np.zeros(len(a), dtype=np.int64)
        if self.m == 1:
            return (a * c) % self.p
        return self._vmul(a, np.full(len(a), c, dtype=np.int64))

    def vmap(self, func, a):
        return np.asarray([func(int(x)) for x in a], dtype=np.int64)

    def vfrobenius(self, a, q):
        """Apply ``x -> x**q`` elementwise."""
        if self.m == 1:
            return a.copy()
        e = (self._log[a] * (q % (self.q - 1))) % (self.q - 1)
        return np.where(a == 0, 0, self._exp[e])

    def vconv(self, a, b, n=None):
        la, lb = len(a), len(b)
        if n is None:
            n = la + lb - 1 if la and lb else 0
        if n <= 0 or la == 0 or lb == 0:
            return np.zeros(max(n, 0), dtype=np.int64)
        a, b = a[:n], b[:n]
        p, m = self.p, self.m
        if m == 1:
            out = np.convolve(a, b)[:n] % p
        else:
            da, db = self._digits[a], self._digits[b]
            acc = np.zeros((len(a) + len(b) - 1, 2 * m - 1), dtype=np.int64)
            for i in range(m):
                for j in range(m):
                    acc[:, i + j] += np.convolve(da[:, i], db[:, j])
            acc %= p
            for k in range(2 * m - 2, m - 1, -1):
                top = acc[:, k]
                for i, c in enumerate(self.modulus[:m]):
                    if c:
                        acc[:, k - m + i] -= c * top
                acc[:, k] = 0
                acc %= p
            out = self._encode_array(acc[:n, :m])
        if len(out) < n:
            out = np.concatenate([out, np.zeros(n - len(out), dtype=np.int64)])
        return out

    def vinv(self, a, n):
        if n <= 0:
            return np.zeros(0, dtype=np.int64)
        b = np.array([self.inv(int(a[0]))], dtype=np.int64)
        two = self.from_int(2)
        while len(b) < n:
            k = min(2 * len(b), n)
            e = self.vconv(a, b, k)
            b = self.vsub(self.vscale(two, self.vpad(b, k)), self.vconv(b, e, k))
        return b[:n]

    def vfirst_nonzero(self, a):
        nz = np.flatnonzero(a)
        return int(nz[0]) if len(nz) else None

    def vlast_nonzero(self, a):
        nz = np.flatnonzero(a)
        return int(nz[-1]) if len(nz) else None

    def vtolist(self, a):
        return [int(x) for x in a]

    # -- root finding (small fields) -----------------------------------------
    def nth_roots(self, c, k):
        """All ``y`` with ``y**k == c``, in increasing encoded order."""
        if c == 0:
            return [0]
        order = self.q - 1
        g = math.gcd(k, order)
        log_c = self._log_list[c]
        if log_c % g:
            return []
        sub = order // g
        base = (log_c // g) * pow(k // g, -1, sub) % sub if sub > 1 else 0
        return sorted(self._exp_list[base + j * sub] for j in range(g))

    def artin_schreier_roots(self, b, q):
        """All ``x`` with ``x**q - x == b``."""
        table = _artin_schreier_table(self, q)
        return [int(x) for x in np.flatnonzero(table == b)]


@functools.lru_cache(maxsize=None)
def _artin_schreier_table(spec, q):
    xs = np.arange(spec.q, dtype=np.int64)
    return spec.vsub(spec.vfrobenius(xs, q), xs)


class FieldElement:
    """An element of a :class:`FieldSpec`, stored as its encoded integer."""

    __slots__ = ("spec", "value")

    def __init__(self, spec, value):
        self.spec = spec
        self.value = int(value)

    @property
    def coords(self):
        return self.spec.coords(self.value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec!r} vs {other.spec!r}")
            return other.value
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(o, self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(self.value, self.spec.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(o, self.spec.inv(self.value)))

    def __pow__(self, n):
        return FieldElement(self.spec, self.spec.power(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = str(c) if (c != 1 or i == 0) else ""
                terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(reversed(terms)) if terms else "0"


@functools.lru_cache(maxsize=None)
def _create(p, m, modulus):
    return FieldSpec(p, m, modulus)


def field_create(p, m=1, modulus=None):
    """Validate ``(p, m, modulus)`` and return the (cached) field F_{p^m}.

    Without a modulus the least monic irreducible polynomial of degree m is
    used, so repeated runs always agree on the presentation.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        modulus = find_irreducible(p, m)
    else:
        modulus = [int(c) % p for c in modulus]
        if len(_trim(modulus)) != m + 1:
            raise ReducibleModulus(f"modulus must have degree {m}")
        if modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
    return _create(p, m, tuple(_trim(modulus)))


def field_from_order(q):
    """The field with q elements for an odd prime power q."""
    pm = prime_power(q)
    if pm is None:
        raise NotPrime(f"{q} is not a prime power")
    return field_create(*pm)


def field_arith(a, b, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two elements of the same field."""
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec!r} vs {b.spec!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.value == 0:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a, k=1):
    """``a ** (p ** k)``."""
    if k < 0:
        raise ValueError("iterate count must be >= 0")
    return FieldElement(a.spec, a.spec.frobenius(a.value, k))


def unit_enumerate(spec):
    """All q - 1 nonzero elements, ordered by encoded value."""
    return [FieldElement(spec, v) for v in range(1, spec.q)]


class Embedding:
    """A field embedding ``small -> big`` given by a lookup table."""

    def __init__(self, small, big, table):
        self.small = small
        self.big = big
        self.table = np.asarray(table, dtype=np.int64)
        self._list = [int(v) for v in self.table]

    def __call__(self, a):
        return self._list[a]

    def vec(self, a):
        return self.table[a]

    def __repr__(self):
        return f"Embedding({self.small!r} -> {self.big!r})"


@functools.lru_cache(maxsize=None)
def field_extension(spec, s):
    """The degree-s extension of ``spec`` together with the embedding of ``spec`` into it."""
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    if s == 1:
        return Embedding(spec, spec, np.arange(spec.q))
    big = field_create(spec.p, spec.m * s)
    if spec.m == 1:
        return Embedding(spec, big, np.arange(spec.p))
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(spec.modulus):
            acc = big.add(big.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    powers = [big.power(root, i) for i in range(spec.m)]
    table = []
    for a in range(spec.q):
        acc = 0
        for c, rp in zip(spec.coords(a), powers):
            acc = big.add(acc, big.mul(c, rp))
        table.append(acc)
    return Embedding(spec, big, table)
