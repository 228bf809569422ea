"""Nonsymmetric Macdonald polynomials.

Two independent routes are implemented and cross-validated:

* ``compute_E`` builds E_b by a deterministic chain of intertwiners along a
  reduced word of pi_b, re-normalizing to a monic polynomial at every step;
* ``compute_E_oracle`` solves the joint Y-eigenproblem by triangular
  elimination on the span of monomials below b, never touching intertwiners.

The evaluation product formula, the duality pairing of evaluations, the
tau_minus eigenvalue and the primary/singular-parameter scans live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateSpectrum,
    NotReachable,
    PoleInProduct,
    SpectralWall,
)
from .polyrep import PolynomialRep, poly_add, poly_eq, poly_scale
from .rootdata import FormalWeight

_Q = Fraction


@dataclass(frozen=True)
class SpectralVector:
    """The joint Y-spectrum data of one weight."""

    b: tuple
    sharp: FormalWeight  # b_# = b - u_b^{-1}(rho_k)
    exponents: tuple  # per lattice basis vector a: (eq, es, el) of q^{-(a, b_#)}


@dataclass
class EPolynomial:
    b: tuple
    poly: dict
    spectral: SpectralVector
    chain: tuple  # intertwiner steps used, e.g. (('s', 1), ('pi', 2))


class MacdonaldEngine:
    def __init__(self, rep: PolynomialRep):
        self.rep = rep
        self.datum = rep.datum
        self.lattice = rep.lattice
        self.ctx = rep.ctx
        self.weyl = rep.weyl
        self._E_cache = {}
        self._after_cache = {}

    # -- spectral data ----------------------------------------------------------

    def sharp_point(self, b) -> FormalWeight:
        """b_# = b - u_b^{-1}(rho_k), with the k-parts kept formal."""
        datum = self.datum
        _, u, _ = self.weyl.decompose_pi_u(b)
        ui = u.inverse()
        return FormalWeight(
            tuple(_Q(x) for x in b),
            tuple(-_Q(x) for x in ui.act_weight(datum.rho_sht)),
            tuple(-_Q(x) for x in ui.act_weight(datum.rho_lng)),
        )

    def spectral_vector(self, b) -> SpectralVector:
        b = self.weyl.check_lattice(b)
        sharp = self.sharp_point(b)
        exps = []
        for a in self.lattice.basis:
            eq, es, el = sharp.x_exponents(self.datum, a)
            exps.append((-eq, -es, -el))
        return SpectralVector(b, sharp, tuple(exps))

    def y_eigenvalue(self, sharp: FormalWeight, a, level=_Q(0)):
        """Eigenvalue of Y_{[a, level]} on the eigenvector with spectrum sharp."""
        eq, es, el = sharp.x_exponents(self.datum, a)
        return self.ctx.monomial(eq=-eq - level, es=-es, el=-el)

    def _wall_denominator(self, i: int, sharp: FormalWeight):
        """The scalar q^{(alpha_i~, sharp)}-style denominator of Psi_i."""
        datum = self.datum
        if i == 0:
            eq, es, el = sharp.x_exponents(
                datum, datum.root_omega[datum.theta_idx]
            )
            mono = self.ctx.monomial(eq=1 - eq, es=-es, el=-el)
        else:
            alpha = datum.root_omega[datum.simple_indices[i - 1]]
            eq, es, el = sharp.x_exponents(datum, alpha)
            mono = self.ctx.monomial(eq=eq, es=es, el=el)
        return mono - self.ctx.one

    def intertwiner_scalar(self, i: int, sharp: FormalWeight):
        """(t_i^{1/2}-t_i^{-1/2})/(Y_{alpha_i}^{-1}-1) evaluated on the spectrum."""
        den = self._wall_denominator(i, sharp)
        if den.is_zero:
            raise SpectralWall(f"intertwiner {i} undefined: spectral wall", step=i)
        return self.rep._t_diff[i] / den

    # -- intertwiners -------------------------------------------------------------

    def tau_plus_T(self, i: int, f: dict) -> dict:
        """tau_+(T_i): T_i for i >= 1 and q^{-1} X_theta T_0^{-1} for i = 0."""
        rep = self.rep
        if i:
            return rep.apply_T(i, f)
        g = rep.apply_T_inv(0, f)
        g = rep.apply_X(self.datum.root_omega[self.datum.theta_idx], g)
        return poly_scale(g, self.ctx.monomial(eq=-1))

    def apply_P(self, r: int, f: dict) -> dict:
        """P_r = tau_+(pi_r) = q^{-(omega_r, omega_r)/2} X_r pi_r."""
        datum = self.datum
        omega_r = tuple(1 if j == r - 1 else 0 for j in range(datum.rank))
        norm = datum.pair_weights(omega_r, omega_r)
        g = self.rep.apply_pi(r, f)
        g = self.rep.apply_X(omega_r, g)
        return poly_scale(g, self.ctx.monomial(eq=-norm / 2))

    def step_target(self, step, b):
        """Affine action of a single chain step on the weight."""
        kind, i = step
        if kind == "pi":
            return self.weyl.pi(i).affine_action(b)
        return self.weyl.s[i].affine_action(tuple(_Q(x) for x in b))

    def intertwiner_apply(self, step, E: EPolynomial):
        """One monic-normalized intertwiner step; None if E is annihilated."""
        kind, i = step
        if kind == "pi":
            g = self.apply_P(i, E.poly)
        else:
            scalar = self.intertwiner_scalar(i, E.spectral.sharp)
            g = poly_add(self.tau_plus_T(i, E.poly), poly_scale(E.poly, scalar))
        target = tuple(int(x) for x in self.step_target(step, E.b))
        lead = g.get(target)
        if lead is None or lead.is_zero:
            if not g:
                return None
            raise DegenerateSpectrum(
                f"intertwiner step {step} produced support without the target {target}"
            )
        inv = lead.invert()
        poly = {k: v * inv for k, v in g.items()}
        poly[target] = self.ctx.one
        return EPolynomial(
            target, poly, self.spectral_vector(target), E.chain + (step,)
        )

    # -- E polynomials by chain ------------------------------------------------------

    def chain_steps(self, b):
        """The deterministic chain of steps building pi_b from the identity."""
        r, word = self.weyl.reduced_word(self.weyl.decompose_pi_u(b)[0])
        steps = [("s", i) for i in word]
        if r:
            steps.append(("pi", r))
        return steps

    def compute_E(self, b) -> EPolynomial:
        b = self.weyl.check_lattice(b)
        if b in self._E_cache:
            return self._E_cache[b]
        steps = self.chain_steps(b)
        cur = EPolynomial(
            (0,) * self.datum.rank,
            self.rep.one(),
            self.spectral_vector((0,) * self.datum.rank),
            (),
        )
        weight = tuple(_Q(0) for _ in range(self.datum.rank))
        if cur.b not in self._E_cache:
            self._E_cache[cur.b] = cur
        for step in steps:
            weight = self.step_target(step, weight)
            key = tuple(int(x) for x in weight)
            if key in self._E_cache:
                cur = self._E_cache[key]
                continue
            try:
                nxt = self.intertwiner_apply(step, cur)
            except SpectralWall as exc:
                raise NotReachable(
                    f"E_{b}: chain step {step} at weight {cur.b} hits a spectral wall",
                    weight=b,
                    step=step,
                ) from exc
            if nxt is None:
                raise NotReachable(
                    f"E_{b}: chain step {step} annihilates E_{cur.b}",
                    weight=b,
                    step=step,
                )
            self._E_cache[key] = nxt
            cur = nxt
        assert cur.b == b, (cur.b, b)
        return cur

    # -- the triangular-solve oracle ----------------------------------------------------

    def alpha_coords(self, v):
        datum = self.datum
        if not hasattr(datum, "_alpha_solver"):
            n = datum.rank
            cols = [datum.root_omega[i] for i in datum.simple_indices]
            datum._alpha_solver = [
                [_Q(cols[j][i]) for j in range(n)] for i in range(n)
            ]
        from .rootdata import _solve_rational

        return _solve_rational(self.datum._alpha_solver, list(v))

    def _in_Q_plus(self, v):
        coords = self.alpha_coords(v)
        if not all(c.denominator == 1 and c >= 0 for c in coords):
            return None
        return sum(int(c) for c in coords)

    def succeeds_or_equal(self, c, b) -> bool:
        """c is b itself or lies after b in the triangularity order."""
        if tuple(c) == tuple(b):
            return True
        datum = self.datum
        cm, _ = datum.antidominant_representative(c)
        bm, _ = datum.antidominant_representative(b)
        d = tuple(x - y for x, y in zip(cm, bm))
        ht = self._in_Q_plus(d)
        if ht is None:
            return False
        if ht > 0:
            return True
        if cm != bm:
            return False
        ht2 = self._in_Q_plus(tuple(x - y for x, y in zip(c, b)))
        return ht2 is not None and ht2 > 0

    def after_set(self, b):
        """All weights c with c equal to b or succeeding it; finite and sorted
        by a fixed linear extension of the order (b first)."""
        b = self.weyl.check_lattice(b)
        if b in self._after_cache:
            return self._after_cache[b]
        radius = self.rep.ball_radius_of(b)
        datum = self.datum
        bm, _ = datum.antidominant_representative(b)
        out = []
        for c in self.rep.ball(radius):
            if self.succeeds_or_equal(c, b):
                cm, _ = datum.antidominant_representative(c)
                # linear extension: orbit level first, then depth inside the
                # orbit (both strictly increase along the order), then lex
                ht1 = self._in_Q_plus(tuple(x - y for x, y in zip(cm, bm)))
                ht2 = self._in_Q_plus(tuple(x - y for x, y in zip(c, cm)))
                out.append((ht1, ht2, c))
        out.sort()
        result = tuple(c for _, _, c in out)
        assert result[0] == b
        self._after_cache[b] = result
        return result

    def compute_E_oracle(self, b) -> EPolynomial:
        """Solve the joint Y-eigenproblem on the span below b, monic at X_b."""
        b = self.weyl.check_lattice(b)
        span = self.after_set(b)
        index = {c: i for i, c in enumerate(span)}
        rep = self.rep
        mats = []
        for a in self.lattice.basis:
            cols = []
            for c in span:
                img = rep.apply_Y(a, rep.monomial(c))
                col = {}
                for k, v in img.items():
                    if k not in index:
                        raise DegenerateSpectrum(
                            f"Y-image of {c} leaves the triangular span at {k}"
                        )
                    col[index[k]] = v
                cols.append(col)
            mats.append(cols)
        sharp = self.sharp_point(b)
        lams = [self.y_eigenvalue(sharp, a) for a in self.lattice.basis]
        zero = self.ctx.zero
        coeff = [zero] * len(span)
        coeff[0] = self.ctx.one
        for d in range(1, len(span)):
            solved = False
            for mat, lam in zip(mats, lams):
                diag = mat[d].get(d, zero)
                gap = lam - diag
                if gap.is_zero:
                    continue
                rhs = zero
                for c in range(d):
                    if coeff[c].is_zero:
                        continue
                    entry = mat[c].get(d)
                    if entry is not None:
                        rhs = rhs + entry * coeff[c]
                coeff[d] = rhs / gap
                solved = True
                break
            if not solved:
                raise DegenerateSpectrum(
                    f"weights {span[d]} and {b} share the full spectral vector"
                )
        poly = {c: coeff[i] for c, i in index.items() if not coeff[i].is_zero}
        # verify all eigen-equations exactly
        for a, lam in zip(self.lattice.basis, lams):
            img = rep.apply_Y(a, poly)
            if not poly_eq(img, poly_scale(poly, lam)):
                raise DegenerateSpectrum(
                    f"triangular solve for E_{b} failed the eigen-equation"
                )
        return EPolynomial(b, poly, self.spectral_vector(b), ("oracle",))

    # -- evaluation formula ---------------------------------------------------------------

    def eval_formula(self, b):
        """Closed product form of E_b(q^{-rho_k})."""
        b = self.weyl.check_lattice(b)
        datum = self.datum
        _, _, bm = self.weyl.decompose_pi_u(b)
        es0 = datum.pair_weights(datum.rho_sht, bm)
        el0 = datum.pair_weights(datum.rho_lng, bm) / datum.nu_lng
        value = self.ctx.monomial(es=es0, el=el0)
        one = self.ctx.one
        for ar in self.weyl.lambda_prime(b):
            alpha = ar.root
            nu = datum.nu[alpha]
            short = nu == 1
            es = _Q(datum.pair_weights(datum.root_omega[alpha], datum.rho_sht))
            el = datum.pair_weights(datum.root_omega[alpha], datum.rho_lng) / datum.nu_lng
            num = one - self.ctx.monomial(
                eq=nu * ar.j,
                es=es + (1 if short else 0),
                el=el + (0 if short else 1),
            )
            den = one - self.ctx.monomial(eq=nu * ar.j, es=es, el=el)
            if den.is_zero:
                raise PoleInProduct(
                    f"denominator factor vanishes at [{alpha},{ar.j}] for b={b}"
                )
            value = value * num / den
        return value

    # -- duality -----------------------------------------------------------------------------

    def eval_at_sharp(self, E: EPolynomial, c):
        return self.rep.evaluate(E.poly, self.sharp_point(c))

    def eval_at_minus_rho(self, E: EPolynomial):
        return self.rep.evaluate(E.poly, self.rep.minus_rho_k_point())

    def duality_check(self, b, c):
        """E_b(q^{c_#}) E_c(q^{-rho_k}) = E_c(q^{b_#}) E_b(q^{-rho_k}), with certificate."""
        Eb, Ec = self.compute_E(b), self.compute_E(c)
        lhs = self.eval_at_sharp(Eb, c) * self.eval_at_minus_rho(Ec)
        rhs = self.eval_at_sharp(Ec, b) * self.eval_at_minus_rho(Eb)
        return lhs == rhs, {"lhs": lhs, "rhs": rhs}

    # -- tau_minus ----------------------------------------------------------------------------

    def tau_minus_eigenvalue(self, b):
        """The tau_minus eigenvalue of E_b: q^{-(b_-, b_-)/2 + (b_-, rho_k)}.

        The sign of the rho_k term is forced by consistency: it is what the
        chain rules tau_-(Psi_0) = Psi_0 Y_0 and tau_-(P_r) = q^{..} Y_r P_r
        give, what the Gaussian multiplication gives, and the only sign for
        which E_N and E_{-N-2|k|} share an eigenvalue at roots of unity in the
        rank-one analysis.
        """
        datum = self.datum
        _, _, bm = self.weyl.decompose_pi_u(b)
        return self.ctx.monomial(
            eq=-datum.pair_weights(bm, bm) / 2,
            es=datum.pair_weights(bm, datum.rho_sht),
            el=datum.pair_weights(bm, datum.rho_lng) / datum.nu_lng,
        )

    def tau_minus_eigenvalue_chain(self, b):
        """The same eigenvalue, recomputed step by step along the chain using
        tau_-(Psi_i) = Psi_i (i>0), tau_-(Psi_0) = Psi_0 Y_0 and the P_r rule."""
        datum = self.datum
        value = self.ctx.one
        weight = tuple(_Q(0) for _ in range(datum.rank))
        for step in self.chain_steps(b):
            kind, i = step
            cur_key = tuple(int(x) for x in weight)
            weight = self.step_target(step, weight)
            new_key = tuple(int(x) for x in weight)
            if kind == "s":
                if i == 0:
                    # Y_0 = q^{-1} Y_theta^{-1}, taken on the source spectrum
                    sharp = self.sharp_point(cur_key)
                    eq, es, el = sharp.x_exponents(
                        datum, datum.root_omega[datum.theta_idx]
                    )
                    value = value * self.ctx.monomial(eq=eq - 1, es=es, el=el)
            else:
                omega_r = tuple(1 if j == i - 1 else 0 for j in range(datum.rank))
                norm = datum.pair_weights(omega_r, omega_r)
                sharp_new = self.sharp_point(new_key)
                value = value * self.ctx.monomial(eq=norm / 2) * self.y_eigenvalue(
                    sharp_new, omega_r
                )
        return value

    # -- primary weights -------------------------------------------------------------------------

    def primary_test(self, b, specialized: bool = False) -> bool:
        """True iff the spectral vector of b differs from that of every
        weight succeeding it (formally, or after the active specialization)."""
        b = self.weyl.check_lattice(b)
        mine = self.spectral_vector(b).exponents
        for c in self.after_set(b)[1:]:
            other = self.spectral_vector(c).exponents
            if not specialized:
                if other == mine:
                    return False
            else:
                same = all(
                    self.ctx.exponent_of(*ea) == self.ctx.exponent_of(*eb)
                    for ea, eb in zip(mine, other)
                )
                if same:
                    return False
        return True


def singular_k_scan(datum, lattice, k_sht=None, k_lng=None, j_bound=None):
    """Certificates (alpha, j, side) where an evaluation-product factor has an
    identically vanishing q-exponent.

    Sides ``numerator``/``denominator`` witness a nonzero radical; the extra
    ``tminus`` side records the t^{-1}-variant used as a reducibility
    indicator.  A symbolic parameter is passed as None; the exponent is linear
    in j with unit slope, so for each root and side the unique candidate j is
    solved exactly (no truncation).  ``j_bound`` only trims the report.
    """
    k_sht = None if k_sht is None else _Q(k_sht)
    k_lng = None if k_lng is None else _Q(k_lng)
    certificates = []
    for idx in datum.positive_indices:
        nu = datum.nu[idx]
        short = nu == 1
        cs = _Q(
            datum.pair_weights(datum.root_omega[idx], datum.rho_sht)
        ) / nu
        cl = datum.pair_weights(datum.root_omega[idx], datum.rho_lng) / nu
        for side, delta in (("numerator", 1), ("denominator", 0), ("tminus", -1)):
            coeff_s = cs + (delta if short else 0)
            coeff_l = cl + (0 if short else delta)
            const = _Q(0)
            if coeff_s:
                if k_sht is None:
                    continue  # exponent involves the symbolic k_sht: never 0
                const += coeff_s * k_sht
            if coeff_l:
                if k_lng is None:
                    continue
                const += coeff_l * k_lng
            j = -const
            if j.denominator != 1 or j <= 0:
                continue
            j = int(j)
            if j_bound is not None and j > j_bound:
                continue
            certificates.append(
                {
                    "side": side,
                    "root_omega": list(datum.root_omega[idx]),
                    "root_index": idx,
                    "nu": nu,
                    "j": j,
                    "exponent": "0",
                }
            )
    certificates.sort(key=lambda c: (c["side"], c["j"], c["root_index"]))
    return certificates
