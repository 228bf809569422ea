"""The extended affine Weyl group for an intermediate lattice.

Elements are kept in translation-first canonical form (b, w), acting on an
affine root [alpha, nu_alpha j] by b.w([z, zeta]) = [w(z), zeta - (w(z), b)].
The Pi-part canonical form pi_r * (affine word) is derived on demand by the
descent algorithm; lambda-sets, lengths, the pi_b u_b decomposition and the
affine action on points all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IndexNotInLattice
from .rootdata import LatticeB, RootDatum, WElt

_Q = Fraction


@dataclass(frozen=True)
class AffineRoot:
    """[alpha, nu_alpha * j]: the root index plus the reduced level j."""

    root: int
    j: int

    def key(self):
        return (self.root, self.j)


class ExtElt:
    """Element of the extended affine Weyl group, as (translation, finite part)."""

    __slots__ = ("datum", "trans", "w")

    def __init__(self, datum: RootDatum, trans, w: WElt):
        self.datum = datum
        self.trans = tuple(trans)
        self.w = w

    # -- group structure -----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, ExtElt)
            and self.trans == other.trans
            and self.w == other.w
        )

    def __hash__(self):
        return hash((self.trans, self.w.perm))

    def __repr__(self):
        return f"ExtElt(b={self.trans}, w={list(self.w.word)})"

    def __mul__(self, other: "ExtElt") -> "ExtElt":
        # (b1 w1)(b2 w2) = (b1 + w1(b2)) (w1 w2)
        moved = self.w.act_weight(other.trans)
        return ExtElt(
            self.datum,
            tuple(a + b for a, b in zip(self.trans, moved)),
            self.w * other.w,
        )

    def inverse(self) -> "ExtElt":
        wi = self.w.inverse()
        return ExtElt(
            self.datum,
            tuple(-x for x in wi.act_weight(self.trans)),
            wi,
        )

    @property
    def is_identity(self):
        return self.w.is_identity and not any(self.trans)

    # -- actions --------------------------------------------------------------

    def act_affine_root(self, r: AffineRoot) -> AffineRoot:
        """[alpha, nu j] -> [w(alpha), nu j - (w(alpha), b)]."""
        datum = self.datum
        img = self.w.act_root(r.root)
        shift = datum.pair_coroot(self.trans, img)
        return AffineRoot(img, r.j - shift)

    def act_monomial(self, c):
        """Image of the X-monomial index: returns (w(c), q-exponent shift)."""
        datum = self.datum
        moved = self.w.act_weight(c)
        qexp = -datum.pair_weights(moved, self.trans)
        return moved, qexp

    def affine_action(self, z):
        """The dot-free affine action on points: (b w)((z)) = b + w(z)."""
        moved = self.w.act_weight(z)
        return tuple(a + b for a, b in zip(self.trans, moved))


def translation(datum: RootDatum, b) -> ExtElt:
    return ExtElt(datum, b, datum.identity_w)


def finite(datum: RootDatum, w: WElt) -> ExtElt:
    return ExtElt(datum, (0,) * datum.rank, w)


def affine_simple_reflection(datum: RootDatum, i: int) -> ExtElt:
    """s_i for 0 <= i <= n; s_0 = translation(theta) * s_theta."""
    if i == 0:
        s_theta = datum.reflection(datum.theta_idx)
        return ExtElt(datum, datum.root_omega[datum.theta_idx], s_theta)
    return finite(datum, datum.simple_reflection(i - 1))


def affine_simple_root(datum: RootDatum, i: int) -> AffineRoot:
    """alpha_0 = [-theta, 1], alpha_i = [alpha_i, 0]."""
    if i == 0:
        return AffineRoot(datum.negative_of[datum.theta_idx], 1)
    return AffineRoot(datum.simple_indices[i - 1], 0)


def is_positive_affine(datum: RootDatum, r: AffineRoot) -> bool:
    if r.j != 0:
        return r.j > 0
    return not datum.is_negative_root(r.root)


class AffineWeyl:
    """Operations of the extended affine Weyl group over a fixed lattice."""

    def __init__(self, datum: RootDatum, lattice: LatticeB):
        self.datum = datum
        self.lattice = lattice
        self.s = tuple(
            affine_simple_reflection(datum, i) for i in range(datum.rank + 1)
        )
        self.alpha = tuple(
            affine_simple_root(datum, i) for i in range(datum.rank + 1)
        )
        self._pi = {0: finite(datum, datum.identity_w)}
        for r in lattice.pi_nodes:
            omega_r = tuple(1 if j == r - 1 else 0 for j in range(datum.rank))
            pi, u, _ = self.decompose_pi_u(omega_r)
            self._pi[r] = pi
        self._word_cache = {}

    # -- building blocks -------------------------------------------------------

    def check_lattice(self, b):
        if not self.lattice.contains(b):
            raise IndexNotInLattice(f"{b} is not in the lattice {self.lattice.name}")
        return tuple(b)

    def pi(self, r: int) -> ExtElt:
        return self._pi[r]

    def pi_inverse_node(self, r: int) -> int:
        """The node r' with pi_r^{-1} = pi_{r'}."""
        inv = self._pi[r].inverse()
        for rr, elt in self._pi.items():
            if elt == inv:
                return rr
        raise KeyError(f"pi_{r} inverse not a Pi element of this lattice")

    def translation(self, b) -> ExtElt:
        return translation(self.datum, self.check_lattice(b))

    # -- lambda sets and lengths ------------------------------------------------

    def length_and_lambda(self, elt: ExtElt):
        """(length, sorted lambda set) with lambda = R~+ cap elt^{-1}(R~-)."""
        datum = self.datum
        out = []
        for idx in range(datum.num_roots):
            img = elt.w.act_root(idx)
            shift = datum.pair_coroot(elt.trans, img)
            # affine root [alpha_idx, nu j] maps to level j - shift
            lo = 0 if not datum.is_negative_root(idx) else 1
            for j in range(lo, abs(shift) + 1):
                if j - shift < 0 or (j - shift == 0 and datum.is_negative_root(img)):
                    out.append(AffineRoot(idx, j))
        out.sort(key=lambda a: a.key())
        return len(out), out

    def length(self, elt: ExtElt) -> int:
        return self.length_and_lambda(elt)[0]

    def reduced_word(self, elt: ExtElt):
        """(r, [i_1, ..., i_l]) with elt = pi_r s_{i_l} ... s_{i_1}."""
        key = (elt.trans, elt.w.perm)
        if key in self._word_cache:
            return self._word_cache[key]
        datum = self.datum
        word = []
        cur = elt
        while True:
            for i in range(datum.rank + 1):
                img = cur.act_affine_root(self.alpha[i])
                if not is_positive_affine(datum, img):
                    word.append(i)
                    cur = cur * self.s[i]
                    break
            else:
                break
        r = self._identify_pi(cur)
        result = (r, tuple(word))
        self._word_cache[key] = result
        return result

    def _identify_pi(self, elt: ExtElt) -> int:
        for r, pi in self._pi.items():
            if elt == pi:
                return r
        raise IndexNotInLattice(
            f"length-zero element {elt} is not a Pi element of lattice {self.lattice.name}"
        )

    def from_word(self, r: int, word) -> ExtElt:
        out = self._pi[r]
        for i in reversed(word):
            out = out * self.s[i]
        return out

    # -- pi_b u_b decomposition ---------------------------------------------------

    def decompose_pi_u(self, b):
        """b = pi_b u_b with lambda(pi_b) cap R empty; returns (pi_b, u_b, b_minus)."""
        datum = self.datum
        b = tuple(b)
        b_minus, u = datum.antidominant_representative(b)
        # shrink u to the minimal-length coset representative:
        # require u^{-1}(alpha_i) > 0 whenever s_i stabilizes b_minus
        while True:
            ui = u.inverse()
            for i in range(datum.rank):
                if b_minus[i] == 0 and datum.is_negative_root(
                    ui.act_root(datum.simple_indices[i])
                ):
                    u = datum.simple_reflection(i) * u
                    break
            else:
                break
        pi_b = translation(datum, b) * finite(datum, u.inverse())
        return pi_b, u, b_minus

    def lambda_prime(self, b):
        """Pairs [alpha, j] with [-alpha, nu_alpha j] in lambda(pi_b)."""
        pi_b, _, _ = self.decompose_pi_u(b)
        _, lam = self.length_and_lambda(pi_b)
        datum = self.datum
        out = []
        for a in lam:
            neg = datum.negative_of[a.root]
            if not datum.is_negative_root(neg):
                out.append(AffineRoot(neg, a.j))
        out.sort(key=lambda a: a.key())
        return out

    def lambda_translation_formula(self, b):
        """Closed form for lambda(b) of a pure translation."""
        datum = self.datum
        out = []
        for idx in range(datum.num_roots):
            pairing = datum.pair_coroot(b, idx)
            if not datum.is_negative_root(idx):
                for j in range(0, pairing):
                    out.append(AffineRoot(idx, j))
            else:
                for j in range(1, pairing + 1):
                    out.append(AffineRoot(idx, j))
        out.sort(key=lambda a: a.key())
        return out

    def lambda_prime_formula(self, b):
        """The explicit inequalities for lambda'(pi_b)."""
        datum = self.datum
        _, u, b_minus = self.decompose_pi_u(b)
        ui = u.inverse()
        out = []
        for idx in datum.positive_indices:
            bound = -datum.pair_coroot(b_minus, idx)
            strict = datum.is_negative_root(ui.act_root(idx))
            hi = bound - 1 if strict else bound
            for j in range(1, hi + 1):
                out.append(AffineRoot(idx, j))
        out.sort(key=lambda a: a.key())
        return out
