"""Independent reference computations used to derive and check frozen values.

Nothing here imports the package: the oracles work with sympy polynomials
over GF(p) or with plain Python integers and sets.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy
from sympy import GF, Poly, symbols

X, Z, ZETA, W = symbols("x z zeta w")


# -- finite fields --------------------------------------------------------------------------

def irreducible(coeffs, p):
    """Irreducibility of ``sum c_i x^i`` over GF(p), via sympy."""
    return Poly(list(reversed(coeffs)), X, modulus=p).is_irreducible


def irreducible_by_roots(coeffs, p):
    """Degree <= 3 only: irreducible iff no root in GF(p)."""
    assert len(coeffs) - 1 <= 3
    return all(sum(c * r**i for i, c in enumerate(coeffs)) % p for r in range(p))


def digits(value, p, m):
    return [(value // p**i) % p for i in range(m)]


def field_mul(a, b, p, modulus):
    """Product of two encoded elements of GF(p)[x]/(modulus) through sympy."""
    m = len(modulus) - 1
    pa = Poly(list(reversed(digits(a, p, m))), X, domain=GF(p))
    pb = Poly(list(reversed(digits(b, p, m))), X, domain=GF(p))
    pm = Poly(list(reversed(modulus)), X, domain=GF(p))
    r = (pa * pb).rem(pm)
    cs = [int(c) % p for c in reversed(r.all_coeffs())]
    return sum(c * p**i for i, c in enumerate(cs))


def field_pow(a, n, p, modulus):
    out = 1
    for _ in range(n):
        out = field_mul(out, a, p, modulus)
    return out


# -- polynomials in z and zeta ---------------------------------------------------------------

def poly_in_z_zeta(terms, p):
    """``terms`` maps (i, j) to the coefficient of z^i zeta^j; returns a sympy Poly."""
    expr = sum(c * Z**i * ZETA**j for (i, j), c in terms.items())
    return Poly(expr, Z, ZETA, domain=GF(p))


def z_minus_zeta_multiplicity(terms, p, k=1):
    """Order of vanishing along ``z = zeta^k``: substitute ``z = w + zeta^k`` and take
    the least w-degree carrying a nonzero zeta-polynomial."""
    expr = sum(c * Z**i * ZETA**j for (i, j), c in terms.items())
    shifted = Poly(sympy.expand(expr.subs(Z, W + ZETA**k)), W, ZETA, domain=GF(p))
    degrees = [mon[0] for mon, c in shifted.terms() if c % p]
    return min(degrees)


def mul_truncated(a, b, p, n):
    """Product of coefficient lists over GF(p), truncated to n terms."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] = (out[i + j] + x * y) % p
    return out


# -- valuations --------------------------------------------------------------------------------

def newton_slopes(points):
    """Slopes of the lower convex hull of ``[(i, v_i)]``, as (slope, length) pairs.

    For ``sum a_i x^i`` with ``v(a_i) = v_i``, a root valuation equals minus
    a slope, with multiplicity the segment length.
    """
    pts = sorted((Fraction(i), Fraction(v)) for i, v in points)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return [((y2 - y1) / (x2 - x1), x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:])]


def tower_generator_valuations(q, n):
    """v(l_i) from the Newton polygons of ``x^(q-1) + zeta`` and ``x^q + zeta x - l_{i-1}``."""
    vals = []
    slopes = newton_slopes([(0, 1), (q - 1, 0)])
    vals.append(-slopes[0][0])
    for _ in range(n):
        slopes = newton_slopes([(0, vals[-1]), (1, 1), (q, 0)])
        # the roots of l_i's polynomial: the smallest-valuation segment has length q
        vals.append(min(-s for s, _ in slopes))
    return vals


# -- unit groups -------------------------------------------------------------------------------

def units(p, n):
    """Units of GF(p)[z]/(z^(n+1)) as coefficient tuples (prime fields only)."""
    for u0 in range(1, p):
        for rest in itertools.product(range(p), repeat=n):
            yield (u0,) + rest


def unit_mul(a, b, p):
    return tuple(mul_truncated(list(a), list(b), p, len(a)))


def unit_pow(a, d, p):
    out = (1,) + (0,) * (len(a) - 1)
    for _ in range(d):
        out = unit_mul(out, a, p)
    return out


def power_image(p, n, d):
    return {unit_pow(u, d, p) for u in units(p, n)}


def full_index(p, n, d):
    return (p - 1) * p**n // len(power_image(p, n, d))
