"""Ring-operations contract used by the series engine.

A coefficient ring supplies scalar operations on its elements plus a small
set of *vector* operations on coefficient sequences.  The defaults below work
on Python lists through the scalar operations; :class:`~shtukas.field.FieldSpec`
overrides them with numpy kernels.
"""

from __future__ import annotations


class Ring:
    zero = None
    one = None

    # -- scalar contract ---------------------------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        raise NotImplementedError

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, k):
        k = int(k)
        result = self.zero
        term = self.one if k >= 0 else self.neg(self.one)
        for _ in range(abs(k)):
            result = self.add(result, term)
        return result

    def power(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def qth_power(self, a, q):
        """The power map ``a -> a**q``; subclasses specialise it in characteristic p."""
        return self.power(a, q)

    # -- vector contract ---------------------------------------------------
    def vec(self, seq):
        return list(seq)

    def vzeros(self, n):
        return [self.zero] * n

    def vlen(self, a):
        return len(a)

    def vpad(self, a, n):
        """Return ``a`` truncated or zero-padded to length ``n``."""
        a = list(a[:n])
        return a + [self.zero] * (n - len(a))

    def vconcat(self, a, b):
        return list(a) + list(b)

    def vadd(self, a, b):
        return [self.add(x, y) for x, y in zip(a, b)]

    def vsub(self, a, b):
        return [self.sub(x, y) for x, y in zip(a, b)]

    def vneg(self, a):
        return [self.neg(x) for x in a]

    def vscale(self, c, a):
        return [self.mul(c, x) for x in a]

    def vmap(self, func, a):
        return [func(x) for x in a]

    def vconv(self, a, b, n=None):
        """First ``n`` coefficients of the Cauchy product (all of them if ``n`` is None)."""
        if n is None:
            n = len(a) + len(b) - 1 if len(a) and len(b) else 0
        out = [self.zero] * max(n, 0)
        for i, x in enumerate(a[:n]):
            if self.is_zero(x):
                continue
            for j, y in enumerate(b[: n - i]):
                out[i + j] = self.add(out[i + j], self.mul(x, y))
        return out

    def vinv(self, a, n):
        """First ``n`` coefficients of ``1/a``; ``a[0]`` must be a unit."""
        b0 = self.inv(a[0])
        out = [b0]
        for k in range(1, n):
            acc = self.zero
            for j in range(1, min(k, len(a) - 1) + 1):
                acc = self.add(acc, self.mul(a[j], out[k - j]))
            out.append(self.neg(self.mul(b0, acc)))
        return out

    def vfirst_nonzero(self, a):
        for i, x in enumerate(a):
            if not self.is_zero(x):
                return i
        return None

    def vlast_nonzero(self, a):
        for i in range(len(a) - 1, -1, -1):
            if not self.is_zero(a[i]):
                return i
        return None

    def vtolist(self, a):
        return list(a)

    # -- serialization -------------------------------------------------------
    def encode(self, a):
        """JSON-friendly form of an element."""
        return a

    def decode(self, data):
        return data
