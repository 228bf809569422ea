"""Identity suites: operator relations, intertwiners, evaluation, duality,
tau eigenvalues and the pairing, each returning a structured report.

Every check is an exact polynomial-operator or scalar identity; randomized
selections are seeded deterministically so reports are byte-stable.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import perfect
from .macdonald import MacdonaldEngine
from .polyrep import PolynomialRep, poly_add, poly_eq, poly_scale, poly_sub
from .rootdata import build_root_datum, make_lattice
from .scalars import QtContext

_Q = Fraction


def default_level(datum, lattice) -> int:
    from math import lcm

    return lcm(4, 2 * lattice.m_tilde)


def make_generic_engine(letter: str, rank: int, lattice_choice="P") -> MacdonaldEngine:
    datum = build_root_datum(letter, rank)
    lattice = make_lattice(datum, lattice_choice)
    ctx = QtContext(level=default_level(datum, lattice))
    return MacdonaldEngine(PolynomialRep(datum, lattice, ctx))


def _result(name, ok, detail=None):
    out = {"name": name, "passed": bool(ok)}
    if detail is not None and not ok:
        out["counterexample"] = detail
    return out


def _weights_up_to_length(engine, max_length):
    rank = engine.datum.rank
    out = []
    bound = max_length + 2
    for b in itertools.product(range(-bound, bound + 1), repeat=rank):
        if not engine.lattice.contains(b):
            continue
        pi_b, _, _ = engine.weyl.decompose_pi_u(b)
        l = engine.weyl.length(pi_b)
        if l <= max_length:
            out.append((l, b))
    out.sort()
    return [b for _, b in out]


# ---------------------------------------------------------------------------
# Suite: defining relations
# ---------------------------------------------------------------------------


def suite_relations(letter: str, rank: int, radius: int = 3) -> dict:
    engine = make_generic_engine(letter, rank)
    rep = engine.rep
    datum = engine.datum
    ball = rep.ball(radius)
    checks = []

    def on_ball(op1, op2, name):
        for b in ball:
            f = rep.monomial(b)
            if not poly_eq(op1(f), op2(f)):
                checks.append(_result(name, False, {"monomial": list(b)}))
                return
        checks.append(_result(name, True))

    # (o) quadratic
    for i in range(rank + 1):
        tph, tmh = rep._t_half[i], rep._t_half_inv[i]

        def quad(f, i=i, tph=tph, tmh=tmh):
            g = poly_sub(rep.apply_T(i, f), poly_scale(f, tph))
            return poly_add(rep.apply_T(i, g), poly_scale(g, tmh))

        on_ball(quad, lambda f: {}, f"quadratic_T{i}")
    # (i) braid
    for i in range(rank + 1):
        for j in range(i + 1, rank + 1):
            order = datum.braid_orders[i][j]
            if order is None:
                continue

            def braid_side(f, first, second, order=order):
                for t in range(order):
                    f = rep.apply_T(first if t % 2 == 0 else second, f)
                return f

            on_ball(
                lambda f, i=i, j=j: braid_side(f, i, j),
                lambda f, i=i, j=j: braid_side(f, j, i),
                f"braid_T{i}_T{j}_m{order}",
            )
    # (ii) pi T conjugation
    for r in rep.lattice.pi_nodes:
        for i in range(rank + 1):
            img = rep.weyl.pi(r).act_affine_root(rep.weyl.alpha[i])
            target = None
            for jj in range(rank + 1):
                if img == rep.weyl.alpha[jj]:
                    target = jj
            if target is None:
                continue
            on_ball(
                lambda f, r=r, i=i: rep.apply_pi(
                    r, rep.apply_T(i, rep.apply_pi_inv(r, f))
                ),
                lambda f, j=target: rep.apply_T(j, f),
                f"pi{r}_T{i}_conjugation",
            )
    # (iii)/(iv)
    for i in range(rank + 1):
        root = rep._node_root[i]
        sign = -1 if rep._node_neg[i] else 1
        found = {1: None, 0: None}
        for cand in itertools.product(range(-2, 3), repeat=rank):
            if not any(cand) or not rep.lattice.contains(cand):
                continue
            val = sign * datum.pair_coroot(cand, root)
            if val in found and found[val] is None:
                found[val] = tuple(cand)
        if found[1] is not None:
            b = found[1]
            if i == 0:
                alpha_inv = lambda f: poly_scale(
                    rep.apply_X(datum.root_omega[datum.theta_idx], f),
                    rep.ctx.monomial(eq=-1),
                )
            else:
                alpha_inv = lambda f, i=i: rep.apply_X(
                    tuple(-x for x in datum.root_omega[datum.simple_indices[i - 1]]),
                    f,
                )
            on_ball(
                lambda f, i=i, b=b: rep.apply_T(i, rep.apply_X(b, rep.apply_T(i, f))),
                lambda f, b=b, g=alpha_inv: g(rep.apply_X(b, f)),
                f"TXT_relation_T{i}",
            )
        if found[0] is not None:
            b = found[0]
            on_ball(
                lambda f, i=i, b=b: rep.apply_T(i, rep.apply_X(b, f)),
                lambda f, i=i, b=b: rep.apply_X(b, rep.apply_T(i, f)),
                f"TX_commute_T{i}",
            )
    # (v) pi X conjugation
    for r in rep.lattice.pi_nodes:
        for e in rep.lattice.basis:
            moved, qexp = rep.weyl.pi(r).act_monomial(e)
            on_ball(
                lambda f, r=r, e=e: rep.apply_pi(r, rep.apply_X(e, rep.apply_pi_inv(r, f))),
                lambda f, moved=moved, qexp=qexp: rep.apply_X(moved, f, level=qexp),
                f"pi{r}_X_conjugation",
            )
    # T inverse closed form
    for i in range(rank + 1):
        on_ball(
            lambda f, i=i: rep.apply_T_inv(i, rep.apply_T(i, f)),
            lambda f: f,
            f"T{i}_inverse",
        )
    # Y commutativity and additivity on seeded random pairs
    rng = random.Random(20240 + rank)
    basis = rep.lattice.basis
    ok = True
    detail = None
    for _ in range(4):
        b = tuple(
            sum(rng.randint(-2, 2) * e[i] for e in basis) for i in range(rank)
        )
        c = tuple(
            sum(rng.randint(-2, 2) * e[i] for e in basis) for i in range(rank)
        )
        for mono in rep.ball(2):
            f = rep.monomial(mono)
            lhs = rep.apply_Y(b, rep.apply_Y(c, f))
            rhs = rep.apply_Y(c, rep.apply_Y(b, f))
            both = rep.apply_Y(tuple(x + y for x, y in zip(b, c)), f)
            if not (poly_eq(lhs, rhs) and poly_eq(lhs, both)):
                ok = False
                detail = {"b": list(b), "c": list(c), "monomial": list(mono)}
                break
        if not ok:
            break
    checks.append(_result("Y_commute_and_add", ok, detail))
    # T products: T_u T_w = T_uw when lengths add (seeded random pairs)
    ok = True
    detail = None
    weyl = rep.weyl
    elems = [weyl.translation(b) for b in rep.ball(2)]
    rng = random.Random(77 + rank)
    pairs_checked = 0
    for _ in range(40):
        u = rng.choice(elems)
        w = rng.choice(elems)
        uw = u * w
        if weyl.length(uw) != weyl.length(u) + weyl.length(w):
            continue
        pairs_checked += 1
        for mono in rep.ball(1):
            f = rep.monomial(mono)
            if not poly_eq(rep.apply_Tw(u, rep.apply_Tw(w, f)), rep.apply_Tw(uw, f)):
                ok = False
                detail = {"u": repr(u), "w": repr(w)}
                break
        if pairs_checked >= 6 or not ok:
            break
    checks.append(_result("T_product_additive_lengths", ok, detail))
    passed = all(c["passed"] for c in checks)
    return {
        "suite": "relations",
        "type": f"{letter}{rank}",
        "radius": radius,
        "checks": checks,
        "passed": passed,
    }


# ---------------------------------------------------------------------------
# Suite: intertwiners
# ---------------------------------------------------------------------------


def suite_intertwiners(letter: str, rank: int, radius: int = 3) -> dict:
    engine = make_generic_engine(letter, rank)
    rep = engine.rep
    datum = engine.datum
    ctx = rep.ctx
    ball = rep.ball(radius)
    checks = []

    def dop(i, f):
        """(Y_{alpha_i}^{-1} - 1) f as a polynomial operator."""
        if i == 0:
            g = rep.apply_Y(datum.root_omega[datum.theta_idx], f)
            g = poly_scale(g, ctx.monomial(eq=1))
        else:
            g = rep.apply_Y(
                tuple(-x for x in datum.root_omega[datum.simple_indices[i - 1]]), f
            )
        return poly_sub(g, f)

    def y_pair_action(i, b):
        """s_i action on the Y-index pair [b, 0]; returns (b', j')."""
        elt = rep.weyl.s[i]
        moved = elt.w.act_weight(b)
        jp = -datum.pair_weights(moved, elt.trans)
        return moved, jp

    # cleared-denominator intertwining identity for simple steps
    test_bs = [e for e in rep.lattice.basis] + [
        tuple(-x for x in e) for e in rep.lattice.basis
    ]
    for i in range(rank + 1):
        c_i = rep._t_diff[i]
        okk = True
        detail = None
        for b in test_bs:
            bp, jp = y_pair_action(i, b)

            def lhs(f, i=i, b=b):
                # D A Y_b D + c Y_b D
                t1 = rep.apply_Y(b, dop(i, f))
                t1 = dop(i, engine.tau_plus_T(i, t1))
                t2 = poly_scale(rep.apply_Y(b, dop(i, f)), c_i)
                return poly_add(t1, t2)

            def rhs(f, i=i, bp=bp, jp=jp):
                # D Y' A D + c D Y'
                t1 = engine.tau_plus_T(i, dop(i, f))
                t1 = dop(i, rep.apply_Y_affine(bp, jp, t1))
                t2 = poly_scale(dop(i, f), c_i)
                t2 = rep.apply_Y_affine(bp, jp, t2)
                return poly_add(t1, t2)

            for mono in ball:
                f = rep.monomial(mono)
                if not poly_eq(lhs(f), rhs(f)):
                    okk = False
                    detail = {"i": i, "b": list(b), "monomial": list(mono)}
                    break
            if not okk:
                break
        checks.append(_result(f"intertwine_Psi{i}_Y", okk, detail))
    # P_r version
    for r in rep.lattice.pi_nodes:
        okk = True
        detail = None
        for b in test_bs:
            elt = rep.weyl.pi(r)
            moved = elt.w.act_weight(b)
            jp = -datum.pair_weights(moved, elt.trans)
            for mono in ball:
                f = rep.monomial(mono)
                lhs = engine.apply_P(r, rep.apply_Y(b, f))
                rhs = rep.apply_Y_affine(moved, jp, engine.apply_P(r, f))
                if not poly_eq(lhs, rhs):
                    okk = False
                    detail = {"r": r, "b": list(b), "monomial": list(mono)}
                    break
            if not okk:
                break
        checks.append(_result(f"intertwine_P{r}_Y", okk, detail))
    # the wall combination (tau_+(T_i) - t^{1/2})(tau_+(T_i) + t^{-1/2}) = 0
    for i in range(rank + 1):
        tph, tmh = rep._t_half[i], rep._t_half_inv[i]
        okk = True
        detail = None
        for mono in ball:
            f = rep.monomial(mono)
            g = poly_sub(engine.tau_plus_T(i, f), poly_scale(f, tph))
            g = poly_add(engine.tau_plus_T(i, g), poly_scale(g, tmh))
            if g:
                okk = False
                detail = {"i": i, "monomial": list(mono)}
                break
        checks.append(_result(f"wall_combination_zero_{i}", okk, detail))
    passed = all(c["passed"] for c in checks)
    return {
        "suite": "intertwiners",
        "type": f"{letter}{rank}",
        "radius": radius,
        "checks": checks,
        "passed": passed,
    }


# ---------------------------------------------------------------------------
# Suites on E-polynomials
# ---------------------------------------------------------------------------


def suite_generic(letter: str, rank: int, max_length: int) -> dict:
    """Oracle equivalence, evaluation, Y-eigenproperty, triangularity, tau."""
    engine = make_generic_engine(letter, rank)
    rep = engine.rep
    weights = _weights_up_to_length(engine, max_length)
    oracle_ok = eval_ok = eigen_ok = tri_ok = tau_ok = True
    bad = {}
    for b in weights:
        E = engine.compute_E(b)
        O = engine.compute_E_oracle(b)
        if not poly_eq(E.poly, O.poly):
            oracle_ok = False
            bad.setdefault("oracle", list(b))
        if engine.eval_at_minus_rho(E) != engine.eval_formula(b):
            eval_ok = False
            bad.setdefault("evaluation", list(b))
        for a in engine.lattice.basis:
            lam = engine.y_eigenvalue(E.spectral.sharp, a)
            if not poly_eq(rep.apply_Y(a, E.poly), poly_scale(E.poly, lam)):
                eigen_ok = False
                bad.setdefault("eigen", list(b))
        if not (b in E.poly and E.poly[b].is_one):
            tri_ok = False
            bad.setdefault("monic", list(b))
        for c in E.poly:
            if not engine.succeeds_or_equal(c, b):
                tri_ok = False
                bad.setdefault("triangular", [list(b), list(c)])
        if engine.tau_minus_eigenvalue(b) != engine.tau_minus_eigenvalue_chain(b):
            tau_ok = False
            bad.setdefault("tau", list(b))
    checks = [
        _result("oracle_equivalence", oracle_ok, bad.get("oracle")),
        _result("evaluation_formula", eval_ok, bad.get("evaluation")),
        _result("y_eigenproperty", eigen_ok, bad.get("eigen")),
        _result("monic_triangularity", tri_ok, bad.get("triangular") or bad.get("monic")),
        _result("tau_minus_chain_vs_closed", tau_ok, bad.get("tau")),
    ]
    return {
        "suite": "generic_identities",
        "type": f"{letter}{rank}",
        "max_length": max_length,
        "num_weights": len(weights),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def suite_evaluation(letter: str, rank: int, max_length: int) -> dict:
    engine = make_generic_engine(letter, rank)
    weights = _weights_up_to_length(engine, max_length)
    ok = True
    detail = None
    for b in weights:
        E = engine.compute_E(b)
        if engine.eval_at_minus_rho(E) != engine.eval_formula(b):
            ok = False
            detail = list(b)
            break
    return {
        "suite": "evaluation",
        "type": f"{letter}{rank}",
        "max_length": max_length,
        "num_weights": len(weights),
        "checks": [_result("evaluation_formula", ok, detail)],
        "passed": ok,
    }


def suite_duality(letter: str, rank: int, max_length: int) -> dict:
    engine = make_generic_engine(letter, rank)
    weights = _weights_up_to_length(engine, max_length)
    ok = True
    detail = None
    pairs = 0
    for b in weights:
        for c in weights:
            good, cert = engine.duality_check(b, c)
            pairs += 1
            if not good:
                ok = False
                detail = {"b": list(b), "c": list(c)}
                break
        if not ok:
            break
    return {
        "suite": "duality",
        "type": f"{letter}{rank}",
        "max_length": max_length,
        "num_pairs": pairs,
        "checks": [_result("duality_formula", ok, detail)],
        "passed": ok,
    }


def suite_tau(letter: str, rank: int, max_length: int) -> dict:
    engine = make_generic_engine(letter, rank)
    weights = _weights_up_to_length(engine, max_length)
    ok = True
    detail = None
    for b in weights:
        if engine.tau_minus_eigenvalue(b) != engine.tau_minus_eigenvalue_chain(b):
            ok = False
            detail = list(b)
            break
    return {
        "suite": "tau",
        "type": f"{letter}{rank}",
        "max_length": max_length,
        "num_weights": len(weights),
        "checks": [_result("tau_minus_chain_vs_closed", ok, detail)],
        "passed": ok,
    }


def suite_pairing(
    letter: str, rank: int, npairs: int = 50, radius: int = 4, radical: bool = True
) -> dict:
    engine = make_generic_engine(letter, rank)
    rep = engine.rep
    ctx = rep.ctx
    rng = random.Random(1234 + 10 * rank + ord(letter))
    ball = rep.ball(2)
    checks = []

    def rand_poly():
        f = {}
        for _ in range(2):
            b = ball[rng.randrange(len(ball))]
            f = poly_add(f, {b: ctx.from_int(rng.randint(1, 5))})
        return f

    ok = True
    detail = None
    for _ in range(npairs):
        f, g = rand_poly(), rand_poly()
        if perfect.pairing(engine, f, g) != perfect.pairing(engine, g, f):
            ok = False
            detail = {"f": sorted(f), "g": sorted(g)}
            break
    checks.append(_result(f"symmetry_{npairs}_pairs", ok, detail))
    # phi-adjointness: {T_i f, g} = {f, T_i g} (i >= 1), {Y_b f, g} = {f, X_b^{-1} g},
    # {X_b f, g} = {f, Y_b^{-1} g}, and the pi_r adjoint T_{u_r^{-1}}^{-1} X_r^{-1}
    ok = True
    detail = None
    for trial in range(8):
        f, g = rand_poly(), rand_poly()
        for i in range(1, rank + 1):
            if perfect.pairing(engine, rep.apply_T(i, f), g) != perfect.pairing(
                engine, f, rep.apply_T(i, g)
            ):
                ok = False
                detail = {"generator": f"T{i}"}
        e = rep.lattice.basis[trial % len(rep.lattice.basis)]
        if perfect.pairing(engine, rep.apply_Y(e, f), g) != perfect.pairing(
            engine, f, rep.apply_X(tuple(-x for x in e), g)
        ):
            ok = False
            detail = {"generator": f"Y_{list(e)}"}
        if perfect.pairing(engine, rep.apply_X(e, f), g) != perfect.pairing(
            engine, f, rep.apply_Y(tuple(-x for x in e), g)
        ):
            ok = False
            detail = {"generator": f"X_{list(e)}"}
        if not ok:
            break
    checks.append(_result("phi_adjointness", ok, detail))
    # pi_r adjoint
    ok = True
    detail = None
    for r in rep.lattice.pi_nodes:
        _, u, _ = rep.weyl.decompose_pi_u(
            tuple(1 if j == r - 1 else 0 for j in range(rank))
        )

        def phi_pi(gg, r=r, u=u):
            # phi(pi_r) = T_{u_r^{-1}}^{-1} X_r^{-1}
            omega_r = tuple(1 if j == r - 1 else 0 for j in range(rank))
            gg = rep.apply_X(tuple(-x for x in omega_r), gg)
            word = []
            uu = u.inverse()
            while not uu.is_identity:
                for ii in range(rank):
                    if rep.datum.is_negative_root(
                        uu.act_root(rep.datum.simple_indices[ii])
                    ):
                        word.append(ii + 1)
                        uu = uu * rep.datum.simple_reflection(ii)
                        break
            for ii in reversed(word):
                gg = rep.apply_T_inv(ii, gg)
            return gg

        for _ in range(4):
            f, g = rand_poly(), rand_poly()
            if perfect.pairing(engine, rep.apply_pi(r, f), g) != perfect.pairing(
                engine, f, phi_pi(g)
            ):
                ok = False
                detail = {"generator": f"pi_{r}"}
                break
        if not ok:
            break
    checks.append(_result("pi_adjointness", ok, detail))
    if radical:
        gram, kernel, cert = perfect.gram_and_radical(engine, radius)
        checks.append(
            _result(
                f"generic_radical_zero_D{radius}",
                not kernel and cert.get("full_rank"),
                cert,
            )
        )
    return {
        "suite": "pairing",
        "type": f"{letter}{rank}",
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


SUITES = {
    "relations": lambda letter, rank, **kw: suite_relations(
        letter, rank, kw.get("radius", 3)
    ),
    "intertwiners": lambda letter, rank, **kw: suite_intertwiners(
        letter, rank, kw.get("radius", 3)
    ),
    "evaluation": lambda letter, rank, **kw: suite_evaluation(
        letter, rank, kw.get("max_length", 4)
    ),
    "duality": lambda letter, rank, **kw: suite_duality(
        letter, rank, kw.get("max_length", 4)
    ),
    "tau": lambda letter, rank, **kw: suite_tau(letter, rank, kw.get("max_length", 4)),
    "pairing": lambda letter, rank, **kw: suite_pairing(
        letter, rank, kw.get("npairs", 50), kw.get("radius", 4)
    ),
}
