"""Exact coefficient arithmetic.

Two kinds of coefficient ring share one interface:

* ``QtContext`` -- the generic parameter field Q(q^{1/L}, ts^{1/2}, tl^{1/2}).
  Elements are reduced fractions of integer polynomials in three internal
  variables; every fractional exponent the theory needs is scaled by the
  context level L into an integer exponent, so q^{a} ts^{b} tl^{c} with
  denominators dividing L is a genuine monomial.
* ``Specialization`` -- the cyclotomic ring Q(zeta_M) with q^{1/L} sent to a
  power of zeta_M and t_nu = q_nu^{k_nu}.  Arithmetic is done modulo the M-th
  cyclotomic polynomial, so the zero test is exact.

A context is the only object that creates scalars; scalars are immutable and
all operations are pure, so values can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from sympy import cyclotomic_poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.rings import ring as _sympy_ring

from .errors import DenominatorVanishes, DivisionByZero

_Q = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


# ---------------------------------------------------------------------------
# Generic q,t coefficients
# ---------------------------------------------------------------------------


class QtContext:
    """Fraction field of ZZ[q^{±1/L}, ts^{±1/2}, tl^{±1/2}], canonical form.

    ``tl_q_power`` pins the long parameter to a monomial in q: passing c means
    tl = q^c, and every tl exponent is folded into the q exponent at
    construction time (used for the B-type case study where t_lng = q^{-s/2}).
    """

    kind = "generic"

    def __init__(self, level: int = 4, tl_q_power=None):
        if level <= 0 or level % 2:
            raise ValueError("level must be a positive even integer")
        self.level = level
        self.tl_q_power = None if tl_q_power is None else _as_fraction(tl_q_power)
        self.ring, self._xq, self._xs, self._xl = _sympy_ring("q,ts,tl", ZZ)
        self._one_poly = self.ring.one
        self._zero_poly = self.ring.zero
        self.one = QtScalar(self, self._one_poly, self._one_poly)
        self.zero = QtScalar(self, self._zero_poly, self._one_poly)

    # -- construction -------------------------------------------------------

    def from_int(self, n: int) -> "QtScalar":
        if n == 0:
            return self.zero
        return QtScalar(self, self.ring(n), self._one_poly)

    def _scaled_exponents(self, eq, es, el):
        eq, es, el = _as_fraction(eq), _as_fraction(es), _as_fraction(el)
        if self.tl_q_power is not None and el:
            eq, el = eq + el * self.tl_q_power, _Q(0)
        out = []
        for e in (eq, es, el):
            s = e * self.level
            if s.denominator != 1:
                raise ValueError(
                    f"exponent {e} not representable at level {self.level}"
                )
            out.append(int(s))
        return tuple(out)

    def monomial(self, eq=0, es=0, el=0, coeff: int = 1) -> "QtScalar":
        """The scalar coeff * q^eq * ts^es * tl^el (exponents are Fractions)."""
        if coeff == 0:
            return self.zero
        exps = self._scaled_exponents(eq, es, el)
        num_key = tuple(max(e, 0) for e in exps)
        den_key = tuple(max(-e, 0) for e in exps)
        num = self.ring.from_dict({num_key: coeff})
        den = self.ring.from_dict({den_key: 1})
        return QtScalar(self, num, den)

    def from_terms(self, terms) -> "QtScalar":
        """Sum of (eq, es, el, coeff) monomial terms, as one scalar."""
        acc = self.zero
        for eq, es, el, coeff in terms:
            acc = acc + self.monomial(eq, es, el, coeff)
        return acc

    # -- canonicalization ---------------------------------------------------

    def _canonical(self, num, den) -> "QtScalar":
        if not num:
            return self.zero
        if not den:
            raise DivisionByZero("denominator is zero")
        if den != self._one_poly:
            g = num.gcd(den)
            if g != self._one_poly:
                num = num.quo(g)
                den = den.quo(g)
            if den.terms()[-1][1] < 0:
                num = -num
                den = -den
        return QtScalar(self, num, den)

    # -- serialization ------------------------------------------------------

    def _poly_terms_unscaled(self, poly):
        L = self.level
        return [
            (_Q(k[0], L), _Q(k[1], L), _Q(k[2], L), int(c)) for k, c in poly.terms()
        ]

    def _format_poly(self, poly) -> str:
        terms = sorted(self._poly_terms_unscaled(poly), key=lambda t: t[:3])
        return ";".join(f"({eq},{es},{el}):{c}" for eq, es, el, c in terms)

    def serialize(self, x: "QtScalar") -> str:
        return self._format_poly(x.num) + "|" + self._format_poly(x.den)

    def parse(self, text: str) -> "QtScalar":
        def read(part):
            if not part:
                return self._zero_poly
            d = {}
            for item in part.split(";"):
                key, c = item.rsplit(":", 1)
                eq, es, el = key[1:-1].split(",")
                exps = self._scaled_exponents(_Q(eq), _Q(es), _Q(el))
                d[exps] = int(c)
            return self.ring.from_dict(d)

        num_s, den_s = text.split("|")
        num, den = read(num_s), read(den_s)
        if any(e < 0 for k in list(num) + list(den) for e in k):
            raise ValueError("serialized scalar has negative internal exponents")
        return self._canonical(num, den)


class QtScalar:
    """Reduced fraction num/den of integer polynomials; immutable."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: QtContext, num, den):
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, QtScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.ctx.serialize(self))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        ctx = self.ctx
        if not self.num:
            return other
        if not other.num:
            return self
        one = ctx._one_poly
        if self.den == other.den:
            if self.den == one:
                s = self.num + other.num
                return QtScalar(ctx, s, one) if s else ctx.zero
            return ctx._canonical(self.num + other.num, self.den)
        return ctx._canonical(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        if not self.num:
            return self
        return QtScalar(self.ctx, -self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            other = ctx.from_int(other)
        if not self.num or not other.num:
            return ctx.zero
        one = ctx._one_poly
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1 == one and d2 == one:
            return QtScalar(ctx, n1 * n2, one)
        g1 = n1.gcd(d2) if d2 != one else one
        g2 = n2.gcd(d1) if d1 != one else one
        if g1 != one:
            n1, d2 = n1.quo(g1), d2.quo(g1)
        if g2 != one:
            n2, d1 = n2.quo(g2), d1.quo(g2)
        num, den = n1 * n2, d1 * d2
        if den.terms()[-1][1] < 0:
            num, den = -num, -den
        return QtScalar(ctx, num, den)

    __rmul__ = __mul__

    def invert(self):
        if not self.num:
            raise DivisionByZero("cannot invert zero")
        num, den = self.den, self.num
        if den.terms()[-1][1] < 0:
            num, den = -num, -den
        return QtScalar(self.ctx, num, den)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self * other.invert()

    def __pow__(self, n: int):
        if n == 0:
            return self.ctx.one
        base = self if n > 0 else self.invert()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def __repr__(self):
        return f"QtScalar({self.num}/{self.den})"

    # -- maps out of the generic field --------------------------------------

    def specialize(self, spec: "Specialization") -> "CycScalar":
        """Image under q^{1/L} -> zeta power, t_nu -> q_nu^{k_nu}."""
        num = spec._image_of_poly(self.ctx, self.num)
        den = spec._image_of_poly(self.ctx, self.den)
        if den.is_zero:
            raise DenominatorVanishes(
                "denominator vanishes under the specialization"
            )
        return num * den.invert()

    def eval_modp(self, point, p: int):
        """(num(point), den(point)) mod p, for randomized rank certificates."""
        vq, vs, vl = point

        def ev(poly):
            total = 0
            for (a, b, c), coeff in poly.terms():
                total += (
                    int(coeff)
                    * pow(vq, a, p)
                    * pow(vs, b, p)
                    * pow(vl, c, p)
                )
            return total % p

        return ev(self.num), ev(self.den)


# ---------------------------------------------------------------------------
# Cyclotomic specializations
# ---------------------------------------------------------------------------


def _poly_divmod_q(a, b):
    """Divmod of rational-coefficient polynomial lists (ascending order)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [_Q(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lb
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    while len(a) > 1 and not a[-1]:
        a.pop()
    return q, a


class Specialization:
    """Cyclotomic context: q has order N, q^{1/L} maps to a power of zeta_M.

    t_sht and t_lng go to q^{nu k}: integral k is the main case, rational k is
    supported by enlarging M.  The exponent map is a ring homomorphism on the
    monomials, and the whole map is one on every scalar whose denominator does
    not specialize to zero.
    """

    kind = "cyclotomic"

    def __init__(self, level: int, q_order: int, k_sht, k_lng=None, nu_lng: int = 2):
        if q_order < 2:
            raise ValueError("q_order must be at least 2")
        self.level = level
        self.q_order = q_order
        self.k_sht = _as_fraction(k_sht)
        self.k_lng = self.k_sht if k_lng is None else _as_fraction(k_lng)
        self.nu_lng = nu_lng
        u = lcm(self.k_sht.denominator, (nu_lng * self.k_lng).denominator)
        self.zeta_power_of_q_root = u  # image of q^{1/L} is zeta_M^u
        self.M = u * level * q_order
        x = Symbol("x")
        phi = cyclotomic_poly(self.M, x, polys=True)
        coeffs = [int(c) for c in reversed(phi.all_coeffs())]
        self.phi = coeffs
        self.degree = len(coeffs) - 1
        d = self.degree
        # x^j mod Phi_M for every 0 <= j < M + d (covers products of powers)
        powers = []
        for j in range(d):
            v = [_Q(0)] * d
            v[j] = _Q(1)
            powers.append(tuple(v))
        for j in range(d, self.M + d):
            prev = powers[-1]
            v = [_Q(0)] + list(prev[:-1])
            carry = prev[-1]
            if carry:
                for i in range(d):
                    v[i] -= carry * _Q(self.phi[i])
            powers.append(tuple(v))
        self._powers = powers
        self.one = CycScalar(self, powers[0])
        self.zero = CycScalar(self, (_Q(0),) * d)

    # -- basic elements -----------------------------------------------------

    def zeta_pow(self, e: int) -> "CycScalar":
        return CycScalar(self, self._powers[e % self.M])

    def from_int(self, n: int) -> "CycScalar":
        coeffs = [_Q(0)] * self.degree
        coeffs[0] = _Q(n)
        return CycScalar(self, tuple(coeffs))

    def exponent_of(self, eq, es, el) -> int:
        """Image exponent: q^eq ts^es tl^el -> zeta_M^(this), exactly."""
        eq, es, el = _as_fraction(eq), _as_fraction(es), _as_fraction(el)
        u = self.zeta_power_of_q_root
        e = u * self.level * (eq + self.k_sht * es + self.nu_lng * self.k_lng * el)
        if e.denominator != 1:
            raise ValueError(f"exponent ({eq},{es},{el}) not integral at M={self.M}")
        return int(e) % self.M

    def monomial(self, eq=0, es=0, el=0, coeff: int = 1) -> "CycScalar":
        if coeff == 0:
            return self.zero
        z = self.zeta_pow(self.exponent_of(eq, es, el))
        if coeff == 1:
            return z
        return z * self.from_int(coeff)

    def _image_of_poly(self, qt_ctx: QtContext, poly) -> "CycScalar":
        u = self.zeta_power_of_q_root
        ks, kl, nu = self.k_sht, self.nu_lng * self.k_lng, self.nu_lng
        L = qt_ctx.level
        ok = self.level == L
        counts = {}
        for (a, b, c), coeff in poly.terms():
            if ok:
                e = u * (a + ks * b + kl * c)
            else:
                e = u * self.level * (
                    _Q(a, L) + ks * _Q(b, L) + kl * _Q(c, L)
                )
            if e.denominator != 1:
                raise ValueError("specialization exponent not integral")
            e = int(e) % self.M
            counts[e] = counts.get(e, 0) + int(coeff)
        out = self.zero
        for e, c in sorted(counts.items()):
            if c:
                out = out + self.zeta_pow(e) * self.from_int(c)
        return out

    def serialize(self, x: "CycScalar") -> str:
        return "[" + ",".join(str(c) for c in x.coeffs) + "]"

    def parse(self, text: str) -> "CycScalar":
        inner = text.strip()[1:-1]
        coeffs = tuple(_Q(c) for c in inner.split(",")) if inner else ()
        if len(coeffs) != self.degree:
            raise ValueError("serialized cyclotomic scalar has wrong length")
        return CycScalar(self, coeffs)

    def describe(self) -> dict:
        return {
            "M": self.M,
            "q_order": self.q_order,
            "level": self.level,
            "q_root_image": self.zeta_power_of_q_root,
            "k_sht": str(self.k_sht),
            "k_lng": str(self.k_lng),
        }


class CycScalar:
    """Element of Q(zeta_M), a coefficient vector modulo Phi_M; immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Specialization, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_one(self) -> bool:
        return self == self.ctx.one

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return CycScalar(
            self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return CycScalar(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return CycScalar(
            self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            other = ctx.from_int(other)
        d = ctx.degree
        a, b = self.coeffs, other.coeffs
        prod = [_Q(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:d]
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                red = ctx._powers[j]
                for i in range(d):
                    out[i] += c * red[i]
        return CycScalar(ctx, tuple(out))

    __rmul__ = __mul__

    def invert(self):
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        # extended Euclid in Q[x] against Phi_M: find t with t*self = 1 mod Phi
        ctx = self.ctx
        r0 = [_Q(c) for c in ctx.phi]
        r1 = list(self.coeffs)
        while len(r1) > 1 and not r1[-1]:
            r1.pop()
        t0, t1 = [_Q(0)], [_Q(1)]
        while len(r1) > 1:
            q, r = _poly_divmod_q(r0, r1)
            new_t = list(t0) + [_Q(0)] * max(0, len(q) + len(t1) - 1 - len(t0))
            for i, qi in enumerate(q):
                if qi:
                    for j, tj in enumerate(t1):
                        new_t[i + j] -= qi * tj
            r0, r1 = r1, r
            t0, t1 = t1, new_t
        # r1 is a nonzero constant (Phi_M is irreducible over Q)
        unit = r1[0]
        inv = [c / unit for c in t1][: ctx.degree]
        inv += [_Q(0)] * (ctx.degree - len(inv))
        result = CycScalar(ctx, tuple(inv))
        assert (result * self).is_one, "cyclotomic inversion failed"
        return result

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self * other.invert()

    def __pow__(self, n: int):
        if n == 0:
            return self.ctx.one
        base = self if n > 0 else self.invert()
        out = self.ctx.one
        for bit in bin(abs(n))[2:]:
            out = out * out
            if bit == "1":
                out = out * base
        return out

    def __repr__(self):
        return f"CycScalar{self.coeffs}"


# ---------------------------------------------------------------------------
# Root-of-unity q with a symbolic short parameter (rank-one demonstrations)
# ---------------------------------------------------------------------------


def _vpoly_trim(a):
    while len(a) > 1 and a[-1].is_zero:
        a.pop()
    return a


def _vpoly_is_zero(a):
    return len(a) == 1 and a[0].is_zero


def _vpoly_add(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero
    out = [
        (a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)
    ]
    return _vpoly_trim(out)


def _vpoly_neg(a):
    return [-x for x in a]


def _vpoly_mul(ctx, a, b):
    if _vpoly_is_zero(a) or _vpoly_is_zero(b):
        return [ctx.zero]
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero:
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero:
                out[i + j] = out[i + j] + ai * bj
    return _vpoly_trim(out)


def _vpoly_divmod(ctx, a, b):
    a = list(a)
    db = len(b) - 1
    inv_lb = b[-1].invert()
    q = [ctx.zero] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i].is_zero:
            continue
        c = a[i] * inv_lb
        q[i - db] = c
        for j, bj in enumerate(b):
            if not bj.is_zero:
                a[i - db + j] = a[i - db + j] - c * bj
    return _vpoly_trim(q), _vpoly_trim(a)


def _vpoly_gcd(ctx, a, b):
    a, b = list(a), list(b)
    while not _vpoly_is_zero(b):
        _, r = _vpoly_divmod(ctx, a, b)
        a, b = b, r
    if _vpoly_is_zero(a):
        return [ctx.one]
    inv = a[-1].invert()
    return [x * inv for x in a]


class CycTContext:
    """q specialized at a root of unity, t_sht kept symbolic.

    Elements are reduced fractions of polynomials in v = t_sht^{1/2} with
    Q(zeta_M) coefficients (monic denominator).  Only simply-laced rank-one
    use is intended; t_lng exponents are rejected.
    """

    kind = "cyclotomic_t"

    def __init__(self, level: int, q_order: int):
        self.level = level
        self.q_order = q_order
        self.cyc = Specialization(level, q_order, k_sht=0, k_lng=0)
        self.M = self.cyc.M
        self.one = CycTScalar(self, [self.cyc.one], [self.cyc.one])
        self.zero = CycTScalar(self, [self.cyc.zero], [self.cyc.one])

    def from_int(self, n: int):
        return CycTScalar(self, [self.cyc.from_int(n)], [self.cyc.one])

    def monomial(self, eq=0, es=0, el=0, coeff: int = 1):
        if el:
            raise ValueError("CycTContext has no long parameter")
        if coeff == 0:
            return self.zero
        eq, es = _as_fraction(eq), _as_fraction(es)
        ve = 2 * es
        if ve.denominator != 1:
            raise ValueError(f"t-exponent {es} not a half integer")
        ve = int(ve)
        zc = self.cyc.zeta_pow(self.cyc.exponent_of(eq, 0, 0)) * self.cyc.from_int(
            coeff
        )
        num = [self.cyc.zero] * max(ve, 0) + [zc]
        den = [self.cyc.zero] * max(-ve, 0) + [self.cyc.one]
        return CycTScalar(self, num, den)

    def _canonical(self, num, den):
        num, den = _vpoly_trim(list(num)), _vpoly_trim(list(den))
        if _vpoly_is_zero(den):
            raise DivisionByZero("denominator is zero")
        if _vpoly_is_zero(num):
            return self.zero
        g = _vpoly_gcd(self, num, den)
        if len(g) > 1 or not (g[0] - self.cyc.one).is_zero:
            num, _ = _vpoly_divmod(self, num, g)
            den, _ = _vpoly_divmod(self, den, g)
        inv = den[-1].invert()
        num = [x * inv for x in num]
        den = [x * inv for x in den]
        return CycTScalar(self, num, den)

    def serialize(self, x) -> str:
        def side(p):
            return ";".join(self.cyc.serialize(c) for c in p)

        return side(x.num) + "|" + side(x.den)

    def parse(self, text: str):
        num_s, den_s = text.split("|")
        num = [self.cyc.parse(c) for c in num_s.split(";")]
        den = [self.cyc.parse(c) for c in den_s.split(";")]
        return self._canonical(num, den)


class CycTScalar:
    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den):
        self.ctx = ctx
        self.num = list(num)
        self.den = list(den)

    @property
    def is_zero(self):
        return _vpoly_is_zero(self.num)

    @property
    def is_one(self):
        return self.num == self.den

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, CycTScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.ctx.serialize(self))

    def __add__(self, other):
        ctx = self.ctx
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return ctx._canonical(_vpoly_add(ctx, self.num, other.num), self.den)
        num = _vpoly_add(
            ctx,
            _vpoly_mul(ctx, self.num, other.den),
            _vpoly_mul(ctx, other.num, self.den),
        )
        return ctx._canonical(num, _vpoly_mul(ctx, self.den, other.den))

    def __neg__(self):
        return CycTScalar(self.ctx, _vpoly_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            other = ctx.from_int(other)
        if self.is_zero or other.is_zero:
            return ctx.zero
        return ctx._canonical(
            _vpoly_mul(ctx, self.num, other.num),
            _vpoly_mul(ctx, self.den, other.den),
        )

    __rmul__ = __mul__

    def invert(self):
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        return self.ctx._canonical(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self * other.invert()

    def __pow__(self, n: int):
        if n == 0:
            return self.ctx.one
        base = self if n > 0 else self.invert()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def __repr__(self):
        return f"CycTScalar({self.num}/{self.den})"
