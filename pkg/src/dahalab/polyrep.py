"""The polynomial representation: exact Demazure-Lusztig type operators.

Polynomials are finitely supported maps from the lattice B (omega-coordinate
integer tuples) to scalars of the active arithmetic context.  All operators
are exact: the divided difference of T_i is performed by coefficient-chain
subtraction along root strings, and a nonzero remainder is an internal fault,
never a rounding issue.

Everything here is pure and works identically over the generic field and over
cyclotomic specializations, which is what makes stepwise specialization of
intertwiner chains possible later.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BallOverflow, IndexNotInLattice
from .rootdata import FormalWeight, LatticeB, RootDatum
from .weyl import AffineWeyl, ExtElt

_Q = Fraction


def poly_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for k, v in g.items():
        s = out.get(k)
        s = v if s is None else s + v
        if s.is_zero:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def poly_scale(f: dict, c) -> dict:
    if c.is_zero:
        return {}
    return {k: c * v for k, v in f.items()}

def poly_sub(f: dict, g: dict) -> dict:
    return poly_add(f, {k: -v for k, v in g.items()})


def poly_eq(f: dict, g: dict) -> bool:
    if set(f) != set(g):
        return False
    return all(f[k] == g[k] for k in f)


class PolynomialRep:
    """Exact action of the double Hecke algebra generators on Q_{q,t}[X_b]."""

    def __init__(self, datum: RootDatum, lattice: LatticeB, ctx):
        self.datum = datum
        self.lattice = lattice
        self.ctx = ctx
        self.weyl = AffineWeyl(datum, lattice)
        n = datum.rank
        # per affine node: the underlying finite root and raw q-level of X_{alpha_i}
        self._node_root = [datum.theta_idx] + list(datum.simple_indices)
        self._node_neg = [True] + [False] * n  # alpha_0 = [-theta, 1]
        self._node_level = [_Q(1)] + [_Q(0)] * n
        self._node_nu = [1] + [datum.nu[i] for i in datum.simple_indices]
        self._t_half = []
        self._t_half_inv = []
        for i in range(n + 1):
            if self._node_nu[i] == 1:
                self._t_half.append(ctx.monomial(es=_Q(1, 2)))
                self._t_half_inv.append(ctx.monomial(es=-_Q(1, 2)))
            else:
                self._t_half.append(ctx.monomial(el=_Q(1, 2)))
                self._t_half_inv.append(ctx.monomial(el=-_Q(1, 2)))
        self._t_diff = [
            a - b for a, b in zip(self._t_half, self._t_half_inv)
        ]
        self._y_word_cache = {}
        self._dominant_shift = None

    # -- basic constructions ---------------------------------------------------

    def one(self) -> dict:
        return {(0,) * self.datum.rank: self.ctx.one}

    def monomial(self, b, coeff=None) -> dict:
        b = self.weyl.check_lattice(b)
        return {b: self.ctx.one if coeff is None else coeff}

    def t_half(self, i: int):
        return self._t_half[i]

    # -- substitution action of group elements ----------------------------------

    def apply_ext(self, elt: ExtElt, f: dict) -> dict:
        out = {}
        ctx = self.ctx
        for c, coeff in f.items():
            moved, qexp = elt.act_monomial(c)
            val = coeff if not qexp else coeff * ctx.monomial(eq=qexp)
            prev = out.get(moved)
            val = val if prev is None else prev + val
            if val.is_zero:
                out.pop(moved, None)
            else:
                out[moved] = val
        return out

    def apply_s(self, i: int, f: dict) -> dict:
        """The affine reflection s_i as a substitution (0 <= i <= n)."""
        return self.apply_ext(self.weyl.s[i], f)

    # -- exact division along root strings ---------------------------------------

    def divide_affine_minus_one(self, f: dict, i: int) -> dict:
        """Exact h with (X_{alpha_i} - 1) h = f; ArithmeticError if inexact."""
        if not f:
            return {}
        datum = self.datum
        root = self._node_root[i]
        if self._node_neg[i]:
            root = datum.negative_of[root]
        a = datum.root_omega[root]
        level = self._node_level[i] * self._node_nu[i]
        qm_inv = self.ctx.monomial(eq=-level) if level else None
        # group the support into strings parallel to a
        classes = {}
        for c, coeff in f.items():
            u = datum.pair_coroot(c, root)
            cls = tuple(2 * ci - u * ai for ci, ai in zip(c, a))
            classes.setdefault(cls, []).append((u, c, coeff))
        out = {}
        for entries in classes.values():
            entries.sort(key=lambda e: -e[0])
            by_u = {u: coeff for u, _, coeff in entries}
            u_top, d = entries[0][0], entries[0][1]
            u_min = entries[-1][0]
            cur = self.ctx.zero
            u = u_top
            while True:
                fu = by_u.get(u)
                nxt = cur if fu is None else cur + fu
                if qm_inv is not None:
                    nxt = nxt * qm_inv
                if u - 2 < u_min:
                    if not nxt.is_zero:
                        raise ArithmeticError(
                            "inexact string division: internal operator fault"
                        )
                    break
                d = tuple(di - ai for di, ai in zip(d, a))
                if not nxt.is_zero:
                    out[d] = nxt
                cur = nxt
                u -= 2
        return out

    # -- Demazure-Lusztig operators ------------------------------------------------

    def apply_T(self, i: int, f: dict) -> dict:
        """T_i f = t_i^{1/2} s_i(f) + (t_i^{1/2}-t_i^{-1/2}) (X_{a_i}-1)^{-1}(s_i-1)f."""
        if not f:
            return {}
        sf = self.apply_s(i, f)
        diff = poly_sub(sf, f)
        h = self.divide_affine_minus_one(diff, i)
        return poly_add(poly_scale(sf, self._t_half[i]), poly_scale(h, self._t_diff[i]))

    def apply_T_inv(self, i: int, f: dict) -> dict:
        """T_i^{-1} = T_i - t_i^{1/2} + t_i^{-1/2}."""
        return poly_sub(self.apply_T(i, f), poly_scale(f, self._t_diff[i]))

    def apply_pi(self, r: int, f: dict) -> dict:
        if r not in self.weyl._pi:
            raise IndexNotInLattice(f"pi node {r} not available for this lattice")
        return self.apply_ext(self.weyl.pi(r), f)

    def apply_pi_inv(self, r: int, f: dict) -> dict:
        if r not in self.weyl._pi:
            raise IndexNotInLattice(f"pi node {r} not available for this lattice")
        return self.apply_ext(self.weyl.pi(r).inverse(), f)

    def apply_X(self, b, f: dict, level=_Q(0)) -> dict:
        """Multiplication by X_{[b, level]} = q^level X_b."""
        b = self.weyl.check_lattice(b)
        scale = self.ctx.monomial(eq=level) if level else None
        out = {}
        for c, coeff in f.items():
            key = tuple(ci + bi for ci, bi in zip(c, b))
            out[key] = coeff if scale is None else coeff * scale
        return out

    # -- products of T generators ---------------------------------------------------

    def apply_Tw(self, elt: ExtElt, f: dict) -> dict:
        r, word = self.weyl.reduced_word(elt)
        for i in word:
            f = self.apply_T(i, f)
        if r:
            f = self.apply_pi(r, f)
        return f

    def apply_Tw_inv(self, elt: ExtElt, f: dict) -> dict:
        r, word = self.weyl.reduced_word(elt)
        if r:
            f = self.apply_pi_inv(r, f)
        for i in reversed(word):
            f = self.apply_T_inv(i, f)
        return f

    def apply_word(self, r: int, word, f: dict) -> dict:
        """pi_r T_{i_l} ... T_{i_1} applied to f (word = [i_1, ..., i_l])."""
        for i in word:
            f = self.apply_T(i, f)
        if r:
            f = self.apply_pi(r, f)
        return f

    # -- Y operators -------------------------------------------------------------------

    def _dominant_split(self, b):
        """b = b_plus - b_minus' with both parts dominant lattice elements."""
        if self.lattice.name == "P":
            bp = tuple(max(x, 0) for x in b)
            bm = tuple(max(-x, 0) for x in b)
            return bp, bm
        v = self._dominant_lattice_vector()
        worst = min(b[i] // v[i] if v[i] else 0 for i in range(len(b)))
        s = max(0, -worst)
        while any(x + s * y < 0 for x, y in zip(b, v)):
            s += 1
        bp = tuple(x + s * y for x, y in zip(b, v))
        bm = tuple(s * y for y in v)
        return bp, bm

    def _dominant_lattice_vector(self):
        if self._dominant_shift is not None:
            return self._dominant_shift
        import itertools

        n = self.datum.rank
        best = None
        for coeffs in itertools.product(range(0, 4), repeat=n):
            v = tuple(
                sum(c * bv[i] for c, bv in zip(coeffs, self.lattice.basis))
                for i in range(n)
            )
            if all(x >= 1 for x in v):
                if best is None or sum(v) < sum(best):
                    best = v
        if best is None:
            raise IndexNotInLattice("no strictly dominant vector found in lattice")
        self._dominant_shift = best
        return best

    def _y_word(self, b):
        """Cached reduced word of the translation by dominant b."""
        key = tuple(b)
        if key not in self._y_word_cache:
            self._y_word_cache[key] = self.weyl.reduced_word(self.weyl.translation(b))
        return self._y_word_cache[key]

    def apply_Y(self, b, f: dict) -> dict:
        """Y_b for any b in B, via a canonical dominant decomposition."""
        b = self.weyl.check_lattice(b)
        bp, bm = self._dominant_split(b)
        if any(bm):
            r, word = self._y_word(bm)
            if r:
                f = self.apply_pi_inv(r, f)
            for i in reversed(word):
                f = self.apply_T_inv(i, f)
        if any(bp):
            r, word = self._y_word(bp)
            for i in word:
                f = self.apply_T(i, f)
            if r:
                f = self.apply_pi(r, f)
        return f

    def apply_Y_affine(self, b, level, f: dict) -> dict:
        """Y_{[b, level]} = Y_b q^{-level}."""
        f = self.apply_Y(b, f)
        if level:
            f = poly_scale(f, self.ctx.monomial(eq=-level))
        return f

    # -- evaluation ----------------------------------------------------------------------

    def evaluate(self, f: dict, point: FormalWeight):
        """f(q^point): sends X_a to q^{(a, point)} exactly."""
        total = self.ctx.zero
        for c, coeff in sorted(f.items()):
            eq, es, el = point.x_exponents(self.datum, c)
            total = total + coeff * self.ctx.monomial(eq=eq, es=es, el=el)
        return total

    def minus_rho_k_point(self) -> FormalWeight:
        n = self.datum.rank
        return FormalWeight(
            (_Q(0),) * n,
            tuple(-_Q(x) for x in self.datum.rho_sht),
            tuple(-_Q(x) for x in self.datum.rho_lng),
        )

    # -- truncation balls and matrices ------------------------------------------------------

    def ball(self, radius: int):
        """Lattice points with (b_+, theta^vee) <= radius: W-invariant and
        closed upward in the triangularity order, hence Y-stable."""
        import itertools

        datum = self.datum
        out = []
        for b in itertools.product(range(-radius, radius + 1), repeat=datum.rank):
            if not self.lattice.contains(b):
                continue
            bp, _ = datum.dominant_representative(b)
            if datum.pair_coroot(bp, datum.theta_idx) <= radius:
                out.append(tuple(b))
        out.sort()
        return out

    def ball_radius_of(self, b) -> int:
        bp, _ = self.datum.dominant_representative(b)
        return self.datum.pair_coroot(bp, self.datum.theta_idx)

    def operator_matrix(self, op, keys, codomain_keys=None):
        """Exact matrix of a polynomial operator on the span of ``keys``.

        ``op`` maps polynomial dicts to polynomial dicts.  Columns are the
        images of the basis monomials; a BallOverflow is raised when an image
        leaves the codomain span (by default the domain itself).
        """
        codomain = keys if codomain_keys is None else codomain_keys
        allowed = set(codomain)
        index = {k: i for i, k in enumerate(codomain)}
        cols = []
        for b in keys:
            img = op(self.monomial(b))
            bad = [k for k in img if k not in allowed]
            if bad:
                raise BallOverflow(
                    f"operator image of {b} leaves the span at {bad[:3]}"
                )
            cols.append({index[k]: v for k, v in img.items()})
        return OperatorMatrix(tuple(keys), tuple(codomain), cols)


@dataclass
class OperatorMatrix:
    """Columns of an operator on a monomial-ball basis, kept sparse."""

    domain: tuple
    codomain: tuple
    columns: list  # list of {row_index: scalar}

    def column(self, j: int) -> dict:
        return self.columns[j]

    def dense(self, zero):
        rows = len(self.codomain)
        out = [[zero] * len(self.columns) for _ in range(rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def apply_row(self, row, zero):
        """row (length |codomain|) times this matrix -> length |domain|."""
        out = []
        for col in self.columns:
            acc = zero
            for i, v in col.items():
                if not row[i].is_zero:
                    acc = acc + row[i] * v
            out.append(acc)
        return out


def serialize_poly(rep: PolynomialRep, f: dict) -> str:
    items = sorted(f.items())
    return "&".join(
        ",".join(str(x) for x in k) + "=" + rep.ctx.serialize(v) for k, v in items
    )


def parse_poly(rep: PolynomialRep, text: str) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split("&"):
        key_s, val_s = item.split("=", 1)
        key = tuple(int(x) for x in key_s.split(","))
        out[key] = rep.ctx.parse(val_s)
    return out
