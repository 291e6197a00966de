"""Local shtukas given by tau-matrices over R[[z]], R = F_v[[zeta]].

A shtuka is stored as an effective matrix ``tau_eff`` and an integer twist
``k``; the structure map is ``tau = tau_eff * (z - zeta^c)^(-k)``.  The
exponent ``c`` (``zeta_power``) is 1 for shtukas in the variable z and equals
``p^e`` for shtukas written in ``z' = z^(p^e)``, where the characteristic
element becomes ``z' - zeta^(p^e)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import (
    BaseMismatch,
    CharacteristicMismatch,
    NonUnit,
    NotPPower,
    ReducibleModulus,
    ReduciblePlace,
    ResidueNotSolvable,
    SpecMismatch,
)
from .field import field_create, is_prime, poly_divmod
from .series import BaseRingSpec, split_by_residue, z_minus_zeta_valuation


class LocalShtuka:
    """A rank-r local shtuka ``(R[[z]]^r, tau_eff * (z - zeta^c)^(-twist))``."""

    def __init__(self, base, tau, twist=0, zeta_power=1):
        r = len(tau)
        if r < 1 or any(len(row) != r for row in tau):
            raise ValueError("tau must be a nonempty square matrix")
        self.base = base
        self.tau = [[base.Rz.coerce(x) for x in row] for row in tau]
        self.twist = int(twist)
        self.zeta_power = int(zeta_power)
        self._det_val = None

    @property
    def rank(self):
        return len(self.tau)

    def det_eff(self):
        return linalg.det(self.base.Rz, self.tau)

    def det_valuation(self):
        """``(d_eff, cofactor)`` with ``det tau_eff = (z - zeta^c)^d_eff * cofactor``."""
        if self._det_val is None:
            self._det_val = z_minus_zeta_valuation(self.det_eff(), zeta_power=self.zeta_power)
        return self._det_val

    def dim(self):
        return shtuka_dim(self)

    def char_element(self):
        """``z - zeta^c``."""
        return self.base.z_minus_zeta(self.zeta_power)

    def to_json(self):
        return {
            "rank": self.rank,
            "twist": self.twist,
            "zeta_power": self.zeta_power,
            "tau": [[x.to_json() for x in row] for row in self.tau],
        }

    def __repr__(self):
        return f"LocalShtuka(rank={self.rank}, twist={self.twist}, zeta_power={self.zeta_power}, tau={self.tau!r})"


def _check_same(m, n):
    if m.base != n.base:
        raise BaseMismatch("shtukas over different base rings")
    if m.zeta_power != n.zeta_power:
        raise BaseMismatch("shtukas in different variables (zeta powers differ)")


def carlitz(base, d=1, zeta_power=1):
    """The d-th tensor power of the Carlitz shtuka, ``tau = (z - zeta^c)^d``."""
    if d >= 0:
        tau = base.z_minus_zeta(zeta_power) ** d
        return LocalShtuka(base, [[tau]], 0, zeta_power)
    return LocalShtuka(base, [[base.Rz.one]], -d, zeta_power)


def shtuka_dim(m):
    """``v_{z - zeta}(det tau_eff) - rank * twist``."""
    d_eff, _ = m.det_valuation()
    return d_eff - m.rank * m.twist


def shtuka_tensor(m, n):
    _check_same(m, n)
    tau = linalg.kron(m.base.Rz, m.tau, n.tau)
    return LocalShtuka(m.base, tau, m.twist + n.twist, m.zeta_power)


def shtuka_dual(m):
    """Dual shtuka: ``tau^vee = (tau^{-1})^T``.

    With ``det tau_eff = (z - zeta)^d c`` the inverse is ``adj(tau_eff) / (c (z - zeta)^d)``,
    so the dual has effective part ``adj(tau_eff)^T c^{-1}`` and twist ``d - k``.
    """
    Rz = m.base.Rz
    d_eff, cof = m.det_valuation()
    if not Rz.is_unit(cof):
        raise NonUnit("determinant cofactor is not a unit of R[[z]]; not a local shtuka")
    cinv = cof.inverse()
    adj = linalg.adjugate(Rz, m.tau)
    tau = [[x * cinv for x in row] for row in linalg.transpose(adj)]
    return LocalShtuka(m.base, tau, d_eff - m.twist, m.zeta_power)


def shtuka_hom_structure(m, n):
    """Internal hom: ``h -> tau_N h tau_M^{-1}`` on row-major vec(h), i.e. ``tau_N (x) (tau_M^{-1})^T``."""
    _check_same(m, n)
    return shtuka_tensor(n, shtuka_dual(m))


def sigma_matrix(base, mat):
    return [[base.sigma(x) for x in row] for row in mat]


# -- rank one: trivialising units -------------------------------------------------------

def _kummer_root(R, c0, alpha, q):
    """Lift the residue root ``alpha`` of ``x^(q-1) = c0`` to R by Newton iteration."""
    F = R.base
    M = R.default_prec
    c0 = c0.with_prec(M)
    M = c0.prec
    x = R.const(alpha, prec=M)
    deriv_scalar = F.from_int(q - 1)
    for _ in range(M.bit_length() + 2):
        err = x ** (q - 1) - c0
        if err.is_zero():
            break
        x = (x - err * (x ** (q - 2)).scale(deriv_scalar).inverse(rel_prec=M)).with_prec(M)
    return x


def _artin_schreier(R, b, q, M):
    """Solve ``x^q - x = b`` in R digit by digit; returns None if the residue step fails."""
    F = R.base
    b = b.with_prec(M)
    M = M if b.prec is None else b.prec
    roots = F.artin_schreier_roots(int(b.coeff(0)), q)
    if not roots:
        return None
    x = [roots[0]]
    for mdig in range(1, M):
        bm = int(b.coeff(mdig))
        prev = F.power(x[mdig // q], q) if mdig % q == 0 else 0
        x.append(F.sub(prev, bm))
    return R.from_coeffs(x, 0, M)


def _try_trivialize(base, c, s):
    big, emb = base.extend(s)
    R = big.R
    F = big.field
    q = base.q_v
    M = base.zeta_prec
    cz = base.embed(c, big, emb)
    N = cz.prec if cz.prec is not None else base.z_prec
    N = min(N, base.z_prec)
    c0 = cz.coeff(0)
    gamma = int(c0.coeff(0))
    roots = F.nth_roots(gamma, q - 1)
    if not roots:
        return None
    u0 = _kummer_root(R, c0, roots[0], q)
    u = [u0]
    u0q_inv = (u0 ** q).inverse(rel_prec=M)
    for i in range(1, N):
        b = R.zero
        for j in range(1, i + 1):
            b = b + cz.coeff(j) * u[i - j]
        x = _artin_schreier(R, (b * u0q_inv).with_prec(M), q, M)
        if x is None:
            return None
        u.append((u0 * x).with_prec(M))
    return big.Rz.make(u, 0, N)


def trivialize_unit(c, s=1, base=None, search_bound=8):
    """Find ``u`` over ``F_{q_v^s}[[zeta]][[z]]`` with ``sigma(u) = c u``.

    Degree 0 is the Kummer equation ``u_0^(q-1) = c_0``; every higher degree is
    an Artin-Schreier equation ``x^q - x = b`` for ``x = u_i / u_0``.  If the
    residue equations have no solution over the requested extension, the
    smallest working degree up to ``search_bound`` is reported.
    """
    base = base or _base_of(c)
    Rz = base.Rz
    c = Rz.coerce(c)
    if c.is_zero() or c.low != 0 or not base.R.is_unit(c.coeff(0)):
        raise NonUnit("c must be a unit of R[[z]]")
    u = _try_trivialize(base, c, s)
    if u is not None:
        return u
    minimal = None
    for t in range(s + 1, search_bound + 1):
        if _try_trivialize(base, c, t) is not None:
            minimal = t
            break
    raise ResidueNotSolvable(
        f"residue equations not solvable over the degree-{s} extension"
        + (f"; smallest working degree is {minimal}" if minimal else f" (searched up to {search_bound})"),
        minimal_ext=minimal,
    )


def minimal_residue_extension(c, base=None, search_bound=8):
    base = base or _base_of(c)
    for t in range(1, search_bound + 1):
        if _try_trivialize(base, c, t) is not None:
            return t
    raise ResidueNotSolvable(f"no extension of degree <= {search_bound} works")


def _base_of(c):
    R = c.ring.base
    return BaseRingSpec(R.base, R.default_prec, c.ring.default_prec)


@dataclass
class NormalForm:
    d: int
    u: object
    cofactor: object
    residue_ext: int
    verified: bool


def rank_one_normalize(m, s=1, search_bound=8):
    """Write ``tau = c (z - zeta)^d`` and trivialise c: returns d and the witness u."""
    if m.rank != 1:
        raise ValueError("rank_one_normalize needs a rank-one shtuka")
    base = m.base
    d_eff, cof = m.det_valuation()
    d = d_eff - m.twist
    u = trivialize_unit(cof, s, base=base, search_bound=search_bound)
    big, emb = base.extend(s)
    tau_big = base.embed(m.tau[0][0], big, emb)
    lhs = big.sigma(u) * big.z_minus_zeta(m.zeta_power) ** d_eff
    verified = (lhs - tau_big * u).is_zero()
    return NormalForm(d, u, cof, s, verified)


# -- pullback and pushforward along z' -> z^P ------------------------------------------

def _check_p_power(base, degree):
    p = base.field.p
    k = degree
    if k < 1:
        raise NotPPower(f"degree {degree} must be a positive power of {p}")
    while k % p == 0:
        k //= p
    if k != 1:
        raise NotPPower(f"z' -> z^{degree} is not a p-power substitution (p = {p})")


def _degree(base, degree, e):
    if degree is None:
        degree = base.field.p ** (0 if e is None else e)
    _check_p_power(base, degree)
    return degree


def pullback(m, degree=None, *, e=None):
    """Extension of scalars along ``z' -> z^P``; ``P = p^e``."""
    P = _degree(m.base, degree, e)
    if m.zeta_power % P:
        raise BaseMismatch(
            f"the shtuka lives over zeta' = zeta^{m.zeta_power}, not a power of zeta^{P}"
        )
    tau = [[x.dilate(P) for x in row] for row in m.tau]
    return LocalShtuka(m.base, tau, m.twist * P, m.zeta_power // P)


def pushforward_matrix(base, mat, P):
    """Rewrite a matrix over R[[z]] as a matrix over R[[z']] on the basis ``e_i z^b``.

    Row/column index ``i * P + b``; column ``(j, b)`` holds the z'-coordinates
    of ``z^b * mat[.][j]``.
    """
    Rz = base.Rz
    rows, cols = len(mat), len(mat[0])
    out = linalg.zeros(Rz, rows * P, cols * P)
    zb = [Rz.monomial(base.R.one, b) for b in range(P)]
    for i in range(rows):
        for j in range(cols):
            for b in range(P):
                parts = split_by_residue(zb[b] * mat[i][j], P)
                for b2 in range(P):
                    out[i * P + b2][j * P + b] = parts[b2]
    return out


def pushforward(m, degree=None, *, e=None):
    """Restriction of scalars along ``z' -> z^P``: rank multiplies by P."""
    P = _degree(m.base, degree, e)
    base = m.base
    t = m.twist
    t_new = -((-t) // P)
    extra = P * t_new - t
    eff = m.tau
    if extra:
        factor = m.char_element() ** extra
        eff = [[x * factor for x in row] for row in eff]
    tau = pushforward_matrix(base, eff, P)
    return LocalShtuka(base, tau, t_new, m.zeta_power * P)


@dataclass
class AdjunctionReport:
    degree: int
    unit: list
    counit: list
    unit_commutes: bool
    counit_commutes: bool
    triangle_left: bool
    triangle_right: bool

    @property
    def ok(self):
        return self.unit_commutes and self.counit_commutes and self.triangle_left and self.triangle_right


def _mat_equal(a, b):
    return all((x - y).is_zero() for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _unit_matrix(base, r, P):
    Rz = base.Rz
    out = linalg.zeros(Rz, r * P, r)
    for i in range(r):
        out[i * P][i] = Rz.one
    return out


def _counit_matrix(base, r, P):
    Rz = base.Rz
    out = linalg.zeros(Rz, r, r * P)
    for i in range(r):
        for b in range(P):
            out[i][i * P + b] = Rz.monomial(base.R.one, b)
    return out


def adjunction_check(m_prime, m, degree=None, *, e=None):
    """Unit ``M' -> f_* f^* M'`` and counit ``f^* f_* M -> M`` as explicit matrices.

    Checks that both commute with the tau-structures and that the two
    triangle identities hold.  ``m_prime`` lives in z' (its zeta power is a
    multiple of P) and ``m`` in z.
    """
    P = _degree(m.base, degree, e)
    base = m.base
    Rz = base.Rz
    # unit
    r1 = m_prime.rank
    ff = pushforward(pullback(m_prime, P), P)
    eta = _unit_matrix(base, r1, P)
    unit_ok = (
        ff.twist == m_prime.twist
        and ff.zeta_power == m_prime.zeta_power
        and _mat_equal(linalg.matmul(Rz, ff.tau, eta), linalg.matmul(Rz, eta, m_prime.tau))
    )
    # counit
    r2 = m.rank
    pf = pushforward(m, P)
    fp = pullback(pf, P)
    eps = _counit_matrix(base, r2, P)
    shift = fp.twist - m.twist
    lhs_tau = m.tau
    if shift:
        factor = m.char_element() ** shift
        lhs_tau = [[x * factor for x in row] for row in lhs_tau]
    counit_ok = fp.zeta_power == m.zeta_power and _mat_equal(
        linalg.matmul(Rz, lhs_tau, eps), linalg.matmul(Rz, eps, fp.tau)
    )
    # triangle 1: eps_{f^*M'} o f^*(eta_{M'}) = id
    eta_pulled = [[x.dilate(P) for x in row] for row in eta]
    tri1 = _mat_equal(
        linalg.matmul(Rz, _counit_matrix(base, r1, P), eta_pulled), linalg.identity(Rz, r1)
    )
    # triangle 2: f_*(eps_M) o eta_{f_*M} = id
    eps_pushed = pushforward_matrix(base, eps, P)
    tri2 = _mat_equal(
        linalg.matmul(Rz, eps_pushed, _unit_matrix(base, r2 * P, P)), linalg.identity(Rz, r2 * P)
    )
    return AdjunctionReport(P, eta, eps, unit_ok, counit_ok, tri1, tri2)


# -- A-motives over F_q[t] -----------------------------------------------------------------

@dataclass
class MotiveOverT:
    """An F_q[t]-motive given by its tau-matrix ``T(t)``.

    Entries of ``T`` are polynomials in t (lowest degree first).  Each
    t-coefficient is an integer (an element of F_q), a list of integers (a
    polynomial in theta over F_q) or a zeta-series dict.  ``v`` is the monic
    place polynomial and ``theta`` an optional zeta-series that must equal
    the image of t.
    """

    q: int
    T: list
    v: list
    theta: dict | None = None
    r: int | None = None
    source: str = dc_field(default="<memory>")

    def __post_init__(self):
        if self.r is None:
            self.r = len(self.T)


def motive_from_dict(data, source="<memory>"):
    def need(key):
        if key not in data:
            raise ValueError(f"{source}: missing field '{key}'")
        return data[key]

    q = int(need("q"))
    T = need("T")
    v = [int(c) for c in need("v")]
    r = int(data.get("r", len(T)))
    if len(T) != r or any(len(row) != r for row in T):
        raise ValueError(f"{source}: field 'T' must be an {r}x{r} matrix")
    return MotiveOverT(q=q, T=T, v=v, theta=data.get("theta"), r=r, source=source)


def load_motive(path):
    """Read a motive from a JSON or TOML file."""
    path = str(path)
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        try:
            data = tomllib.loads(raw.decode())
        except tomllib.TOMLDecodeError as exc:
            raise ValueError(f"{path}: {exc}") from exc
    else:
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return motive_from_dict(data, source=path)


def place_field(q, v):
    """``F_v = F_q[t]/(v)`` and the class ``alpha`` of t in it."""
    if not is_prime(q):
        raise ValueError("motive ingestion is implemented for prime q only")
    v = [c % q for c in v]
    while v and v[-1] == 0:
        v.pop()
    if len(v) < 2:
        raise ReduciblePlace("place polynomial must have degree >= 1")
    if v[-1] != 1:
        raise ReduciblePlace("place polynomial must be monic")
    try:
        F = field_create(q, len(v) - 1, v)
    except ReducibleModulus as exc:
        raise ReduciblePlace(str(exc)) from exc
    return F, F.gen


def t_expansion(F, v, alpha, prec):
    """The series ``T(x)`` over F_v with ``v(T(x)) = x`` and ``T(0) = alpha``, to ``x^prec``.

    Newton iteration ``T <- T - (v(T) - x) / v'(T)`` on F_v[[x]].
    """
    from .series import SeriesRing

    S = SeriesRing(F, "x", prec)
    vF = [F.from_int(c) for c in v]
    dv = [F.from_int(i * c) for i, c in enumerate(v)][1:]

    def ev(poly, x):
        acc = S.zero
        for c in reversed(poly):
            acc = acc * x + S.const(c)
        return acc.with_prec(prec)

    if len(v) == 2:
        return S.from_coeffs([alpha, 1])
    T = S.from_coeffs([alpha, 1], prec=prec)
    for _ in range(prec.bit_length() + 2):
        err = ev(vF, T) - S.gen
        if err.is_zero():
            break
        T = (T - err * ev(dv, T).inverse(rel_prec=prec)).with_prec(prec)
    return T


def _coeff_to_R(base, coeff, theta, cache):
    """A t-coefficient of a motive entry as an element of R."""
    R = base.R
    if isinstance(coeff, int):
        return R.const(base.field.from_int(coeff))
    if isinstance(coeff, dict):
        return R.decode(coeff)
    key = tuple(coeff)
    if key not in cache:
        acc = R.zero
        for c in reversed(coeff):
            acc = acc * theta + R.const(base.field.from_int(c))
        cache[key] = acc
    return cache[key]


def associate_local_shtuka(mot, zeta_prec=32, z_prec=8):
    """The local shtuka at the place v attached to an F_q[t]-motive.

    ``R (x) A_v`` splits into ``f_v`` factors; on the one where F_v maps
    identically into R we have ``t = T(z)`` and the structure map is the
    f_v-fold composite ``T * sigma(T) * ... * sigma^(f_v - 1)(T)``, where sigma
    raises the R-coefficients (theta in particular) to the q-th power.
    """
    F, alpha = place_field(mot.q, mot.v)
    f = F.m
    base = BaseRingSpec(F, zeta_prec, z_prec)
    R, Rz = base.R, base.Rz
    prec = zeta_prec + z_prec
    Tx = t_expansion(F, mot.v, alpha, prec)
    theta = R.make(Tx.coeffs, Tx.low, None if Tx.prec is None else min(Tx.prec, zeta_prec))
    if mot.theta is not None:
        given = R.decode(mot.theta)
        if not (given - theta).is_zero():
            raise CharacteristicMismatch("theta does not reduce to the image of t at the place v")
    # keep extra z-terms: dividing det(tau) by (z - zeta) costs zeta-precision
    # in proportion to how early the z-expansion is cut off
    tz = Rz.make([R.const(c) for c in F.vtolist(Tx.coeffs)], Tx.low, Tx.prec)
    r = mot.r
    cache = {}
    coeffs = [[[_coeff_to_R(base, c, theta, cache) for c in entry] for entry in row] for row in mot.T]
    tau = None
    for j in range(f):
        mat = []
        for row in coeffs:
            new_row = []
            for entry in row:
                acc = Rz.zero
                for c in reversed(entry):
                    cj = R.qth_power(c, mot.q**j) if j else c
                    acc = acc * tz + Rz.const(cj)
                new_row.append(acc)
            mat.append(new_row)
        tau = mat if tau is None else linalg.matmul(Rz, tau, mat)
    return LocalShtuka(base, tau, 0, 1)
