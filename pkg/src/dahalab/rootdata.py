"""Finite crystallographic root systems with the short-root normalization.

Roots are built from the Bourbaki epsilon-coordinates and the bilinear form is
rescaled once so every short root has squared length 2.  Weights are handled
in fundamental-weight coordinates (integer tuples for lattice points), where
(b, alpha_i^vee) is simply the i-th coordinate; pairings of two weights go
through the cached Gram matrix of the fundamental weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InvalidType, NotIntermediate

_Q = Fraction


def _dot(u, v, scale):
    return scale * sum(a * b for a, b in zip(u, v))


def _bourbaki_simple_roots(letter: str, rank: int):
    """Simple roots in epsilon-coordinates plus the form scale factor."""
    n = rank
    if letter == "A":
        dim = n + 1
        simples = []
        for i in range(n):
            v = [_Q(0)] * dim
            v[i], v[i + 1] = _Q(1), _Q(-1)
            simples.append(tuple(v))
        return simples, _Q(1)
    if letter == "B":
        if n < 2:
            raise InvalidType("B requires rank >= 2")
        simples = []
        for i in range(n - 1):
            v = [_Q(0)] * n
            v[i], v[i + 1] = _Q(1), _Q(-1)
            simples.append(tuple(v))
        v = [_Q(0)] * n
        v[n - 1] = _Q(1)
        simples.append(tuple(v))
        return simples, _Q(2)  # short roots +-eps_i get norm 2
    if letter == "C":
        if n < 2:
            raise InvalidType("C requires rank >= 2")
        simples = []
        for i in range(n - 1):
            v = [_Q(0)] * n
            v[i], v[i + 1] = _Q(1), _Q(-1)
            simples.append(tuple(v))
        v = [_Q(0)] * n
        v[n - 1] = _Q(2)
        simples.append(tuple(v))
        return simples, _Q(1)
    if letter == "D":
        if n < 3:
            raise InvalidType("D requires rank >= 3")
        simples = []
        for i in range(n - 1):
            v = [_Q(0)] * n
            v[i], v[i + 1] = _Q(1), _Q(-1)
            simples.append(tuple(v))
        v = [_Q(0)] * n
        v[n - 2], v[n - 1] = _Q(1), _Q(1)
        simples.append(tuple(v))
        return simples, _Q(1)
    if letter == "E":
        if n not in (6, 7, 8):
            raise InvalidType("E requires rank 6, 7 or 8")
        # E8 simple roots (Bourbaki), restricted for E6/E7
        e = []
        a1 = [_Q(1, 2), -_Q(1, 2), -_Q(1, 2), -_Q(1, 2), -_Q(1, 2), -_Q(1, 2), -_Q(1, 2), _Q(1, 2)]
        a2 = [_Q(1), _Q(1)] + [_Q(0)] * 6
        e.append(tuple(a1))
        e.append(tuple(a2))
        for i in range(1, 7):
            v = [_Q(0)] * 8
            v[i - 1], v[i] = _Q(-1), _Q(1)
            e.append(tuple(v))
        return e[:n], _Q(1)
    if letter == "F":
        if n != 4:
            raise InvalidType("F requires rank 4")
        simples = [
            (_Q(0), _Q(1), _Q(-1), _Q(0)),
            (_Q(0), _Q(0), _Q(1), _Q(-1)),
            (_Q(0), _Q(0), _Q(0), _Q(1)),
            (_Q(1, 2), -_Q(1, 2), -_Q(1, 2), -_Q(1, 2)),
        ]
        return simples, _Q(2)
    if letter == "G":
        if n != 2:
            raise InvalidType("G requires rank 2")
        simples = [
            (_Q(1), _Q(-1), _Q(0)),
            (_Q(-2), _Q(1), _Q(1)),
        ]
        return simples, _Q(1)
    raise InvalidType(f"unknown type letter {letter!r}")


_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class WElt:
    """A finite Weyl group element: a permutation of the root list plus the
    integer matrix of its action in fundamental-weight coordinates."""

    __slots__ = ("datum", "perm", "mat", "word")

    def __init__(self, datum, perm, mat, word):
        self.datum = datum
        self.perm = perm
        self.mat = mat
        self.word = word

    def __eq__(self, other):
        return isinstance(other, WElt) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"WElt(word={list(self.word)})"

    @property
    def is_identity(self):
        return self.perm == self.datum._id_perm

    def __mul__(self, other):
        """Composition self o other (other acts first)."""
        perm = tuple(self.perm[p] for p in other.perm)
        n = self.datum.rank
        mat = tuple(
            tuple(
                sum(self.mat[i][k] * other.mat[k][j] for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        return WElt(self.datum, perm, mat, self.word + other.word)

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        n = self.datum.rank
        cols = []
        for j in range(n):
            e = [_Q(1) if i == j else _Q(0) for i in range(n)]
            cols.append(_solve_rational([list(r) for r in self.mat], e))
        mat = tuple(
            tuple(int(cols[j][i]) for j in range(n)) for i in range(n)
        )
        return WElt(self.datum, tuple(inv), mat, tuple(reversed(self.word)))

    def act_root(self, idx: int) -> int:
        return self.perm[idx]

    def act_weight(self, b):
        n = self.datum.rank
        return tuple(sum(self.mat[i][j] * b[j] for j in range(n)) for i in range(n))

    def length(self) -> int:
        datum = self.datum
        return sum(
            1
            for i in datum.positive_indices
            if datum.is_negative_root(self.perm[i])
        )


class RootDatum:
    """All static data of one finite root system in the paper normalization."""

    def __init__(self, letter: str, rank: int):
        self.letter = letter
        self.rank = rank
        simples_eps, scale = _bourbaki_simple_roots(letter, rank)
        self.eps_scale = scale
        self.simple_eps = simples_eps

        roots = self._close_roots(simples_eps, scale)
        self.roots_eps = roots  # list of tuples, positives first
        self.root_index = {r: i for i, r in enumerate(roots)}
        self.num_roots = len(roots)
        expected = _POSITIVE_COUNTS[letter](rank)
        if self.num_roots != 2 * expected:
            raise InvalidType(
                f"{letter}{rank}: built {self.num_roots // 2} positive roots, expected {expected}"
            )

        self.norm2 = [self._form(r, r) for r in roots]
        self.nu = [n2 / 2 for n2 in self.norm2]
        assert all(v.denominator == 1 for v in self.nu)
        self.nu = [int(v) for v in self.nu]
        self.nu_lng = max(self.nu)
        self.positive_indices = tuple(
            i for i, r in enumerate(roots) if self._is_positive_eps(r)
        )
        self.negative_of = tuple(
            self.root_index[tuple(-c for c in r)] for r in roots
        )
        self.simple_indices = tuple(self.root_index[tuple(s)] for s in simples_eps)

        self._build_weight_data()
        self._build_weyl_generators()
        self._build_theta_and_affine()
        self._build_rho_and_minuscule()

    # -- construction helpers ------------------------------------------------

    def _form(self, u, v):
        return _dot(u, v, self.eps_scale)

    def _is_positive_eps(self, r):
        # positivity in terms of the simple-root expansion
        coeffs = self._alpha_coords_eps(r)
        for c in coeffs:
            if c > 0:
                return True
            if c < 0:
                return False
        return False

    def _close_roots(self, simples, scale):
        simples = [tuple(s) for s in simples]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for r in frontier:
                for s in simples:
                    n2 = _dot(s, s, scale)
                    pairing = 2 * _dot(r, s, scale) / n2
                    img = tuple(rc - pairing * sc for rc, sc in zip(r, s))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        # sort: positives (by height then lex) first, then matching negatives
        all_roots = list(seen)
        pos = [r for r in all_roots if self._alpha_sign(r, simples, scale) > 0]

        def height(r):
            return sum(self._alpha_coords_generic(r, simples, scale))

        pos.sort(key=lambda r: (height(r), r))
        return pos + [tuple(-c for c in r) for r in pos]

    def _alpha_coords_generic(self, r, simples, scale):
        # solve r = sum c_i alpha_i using the coroot pairings (Cartan solve)
        n = len(simples)
        A = [
            [2 * _dot(simples[j], simples[i], scale) / _dot(simples[i], simples[i], scale) for j in range(n)]
            for i in range(n)
        ]
        b = [2 * _dot(r, simples[i], scale) / _dot(simples[i], simples[i], scale) for i in range(n)]
        return _solve_rational(A, b)

    def _alpha_sign(self, r, simples, scale):
        for c in self._alpha_coords_generic(r, simples, scale):
            if c > 0:
                return 1
            if c < 0:
                return -1
        return 0

    def _alpha_coords_eps(self, r):
        return self._alpha_coords_generic(r, self.simple_eps, self.eps_scale)

    def _build_weight_data(self):
        n = self.rank
        simples = self.simple_eps
        # fundamental weights in eps coordinates: (omega_i, alpha_j^vee) = delta
        # solve within the span of the simple roots
        span = simples
        grami = [
            [2 * self._form(span[a], simples[j]) / self.norm2[self.simple_indices[j]] for a in range(n)]
            for j in range(n)
        ]
        omegas = []
        for i in range(n):
            rhs = [_Q(1) if j == i else _Q(0) for j in range(n)]
            coeff = _solve_rational(grami, rhs)
            omega = tuple(
                sum(coeff[a] * span[a][d] for a in range(n))
                for d in range(len(span[0]))
            )
            omegas.append(omega)
        self.omega_eps = omegas
        self.omega_gram = tuple(
            tuple(self._form(omegas[i], omegas[j]) for j in range(n)) for i in range(n)
        )
        # per root: omega-coordinates (root as weight) and coroot coefficients
        rv, cv = [], []
        for idx, r in enumerate(self.roots_eps):
            rv.append(
                tuple(
                    int(2 * self._form(r, simples[j]) / self.norm2[self.simple_indices[j]])
                    for j in range(n)
                )
            )
            coroot = tuple(2 * c / self.norm2[idx] for c in r)
            cv.append(
                tuple(int(self._form(om, coroot)) for om in omegas)
            )
        self.root_omega = tuple(rv)   # alpha in omega coordinates
        self.coroot_coeff = tuple(cv)  # (b, alpha^vee) = sum b_j * cv[j]
        # m: least natural number with (P, P) in (1/m) Z
        self.m_constant = lcm(
            *[x.denominator for row in self.omega_gram for x in row]
        )

    def pair_coroot(self, b, root_idx: int) -> int:
        """(b, alpha^vee) for b in omega-coordinates."""
        cv = self.coroot_coeff[root_idx]
        return sum(bj * cj for bj, cj in zip(b, cv))

    def pair_root(self, b, root_idx: int):
        """(b, alpha) = nu_alpha * (b, alpha^vee)."""
        return self.nu[root_idx] * self.pair_coroot(b, root_idx)

    def pair_weights(self, b, c) -> Fraction:
        g = self.omega_gram
        n = self.rank
        return sum(
            b[i] * c[j] * g[i][j] for i in range(n) for j in range(n) if b[i] and c[j]
        ) or _Q(0)

    def _build_weyl_generators(self):
        n = self.rank
        self._id_perm = tuple(range(self.num_roots))
        id_mat = tuple(
            tuple(_Q(1) if i == j else _Q(0) for j in range(n)) for i in range(n)
        )
        id_mat = tuple(tuple(int(x) for x in row) for row in id_mat)
        self.identity_w = WElt(self, self._id_perm, id_mat, ())
        gens = []
        for i in range(n):
            si = self.simple_indices[i]
            perm = []
            for r in self.roots_eps:
                img = self._reflect_eps(r, si)
                perm.append(self.root_index[img])
            mat = []
            for row in range(n):
                mat.append(
                    tuple(
                        (1 if row == col else 0)
                        - (self.root_omega[si][row] if col == i else 0)
                        for col in range(n)
                    )
                )
            gens.append(WElt(self, tuple(perm), tuple(mat), (i,)))
        self._simple_refl = tuple(gens)

    def simple_reflection(self, i: int) -> WElt:
        return self._simple_refl[i]

    def reflection(self, root_idx: int) -> WElt:
        """s_alpha for an arbitrary root, as a product of simple reflections."""
        if self.is_negative_root(root_idx):
            root_idx = self.negative_of[root_idx]
        if root_idx in self.simple_indices:
            return self._simple_refl[self.simple_indices.index(root_idx)]
        # find a simple i with (alpha, alpha_i^vee) > 0, alpha != alpha_i;
        # then s_i(alpha) is positive of smaller height and
        # s_alpha = s_i s_{s_i(alpha)} s_i
        for i in range(self.rank):
            if self.pair_coroot(self.root_omega[root_idx], self.simple_indices[i]) > 0:
                si = self._simple_refl[i]
                return si * self.reflection(si.perm[root_idx]) * si
        raise RuntimeError("reflection conjugation failed")

    def is_negative_root(self, idx: int) -> bool:
        return idx not in self.positive_set

    def _build_theta_and_affine(self):
        self.positive_set = frozenset(self.positive_indices)
        # theta: the dominant short positive root (the maximal coroot read as a root)
        nu_min = 1
        candidates = [
            i
            for i in self.positive_indices
            if self.nu[i] == nu_min
            and all(self.pair_coroot(self.root_omega[i], self.simple_indices[j]) >= 0 for j in range(self.rank))
        ]
        if len(candidates) != 1:
            raise InvalidType("could not isolate the maximal short root")
        self.theta_idx = candidates[0]
        # braid orders m_ij on the affine diagram (number of factors in the
        # braid relation): from the products of affine Cartan entries
        nodes = self.rank + 1  # node 0 is the affine one
        a = [[0] * nodes for _ in range(nodes)]
        for i in range(nodes):
            for j in range(nodes):
                if i == j:
                    a[i][j] = 2
                    continue
                ri = -1 if i == 0 else 1
                root_i = self.theta_idx if i == 0 else self.simple_indices[i - 1]
                root_j = self.theta_idx if j == 0 else self.simple_indices[j - 1]
                sign = (-1 if i == 0 else 1) * (-1 if j == 0 else 1)
                val = sign * self.pair_coroot(
                    self.root_omega[root_j], root_i
                )
                a[i][j] = int(val)
        orders = [[None] * nodes for _ in range(nodes)]
        conv = {0: 2, 1: 3, 2: 4, 3: 6}
        for i in range(nodes):
            for j in range(nodes):
                if i == j:
                    orders[i][j] = 1
                else:
                    prod = a[i][j] * a[j][i]
                    orders[i][j] = conv.get(prod)  # None means infinite order
        self.affine_cartan = a
        self.braid_orders = orders

    def _build_rho_and_minuscule(self):
        n = self.rank
        rho = {}
        for nu in sorted(set(self.nu)):
            vec = [0] * n
            for i in self.positive_indices:
                if self.nu[i] == nu:
                    for j in range(n):
                        vec[j] += self.root_omega[i][j]
            rho[nu] = tuple(v // 2 for v in vec)
            assert all(v % 2 == 0 for v in vec)
        self.rho_nu = rho
        self.rho_sht = rho[1]
        self.rho_lng = rho.get(self.nu_lng, (0,) * n) if self.nu_lng > 1 else (0,) * n
        # minuscule indices: (omega_r, theta^vee) = 1 (theta^vee is the highest coroot)
        o_prime = []
        for r in range(n):
            e_r = tuple(1 if j == r else 0 for j in range(n))
            if self.pair_coroot(e_r, self.theta_idx) == 1:
                o_prime.append(r + 1)  # 1-based node labels
        self.o_prime = tuple(o_prime)
        # w0 via the antidominant walk of rho
        two_rho = tuple(
            sum(self.root_omega[i][j] for i in self.positive_indices)
            for j in range(self.rank)
        )
        w, x = self.identity_w, two_rho
        while True:
            for i in range(self.rank):
                if x[i] > 0:
                    w = self.simple_reflection(i) * w
                    x = self.simple_reflection(i).act_weight(x)
                    break
            else:
                break
        self.w0 = w

    def _reflect_eps(self, r, root_idx):
        s = self.roots_eps[root_idx]
        pairing = 2 * self._form(r, s) / self.norm2[root_idx]
        return tuple(rc - pairing * sc for rc, sc in zip(r, s))

    # -- simple queries ------------------------------------------------------

    @property
    def type_name(self):
        return f"{self.letter}{self.rank}"

    def dominant_representative(self, b):
        """(b_plus, w) with w(b) = b_plus dominant."""
        w, x = self.identity_w, tuple(b)
        while True:
            for i in range(self.rank):
                if x[i] < 0:
                    w = self.simple_reflection(i) * w
                    x = self.simple_reflection(i).act_weight(x)
                    break
            else:
                return x, w

    def antidominant_representative(self, b):
        """(b_minus, w) with w(b) = b_minus antidominant."""
        w, x = self.identity_w, tuple(b)
        while True:
            for i in range(self.rank):
                if x[i] > 0:
                    w = self.simple_reflection(i) * w
                    x = self.simple_reflection(i).act_weight(x)
                    break
            else:
                return x, w

    def weyl_group_order(self) -> int:
        seen = {self._id_perm}
        frontier = [self.identity_w]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self._simple_refl:
                    u = s * w
                    if u.perm not in seen:
                        seen.add(u.perm)
                        nxt.append(u)
            frontier = nxt
        return len(seen)

    def summary(self) -> dict:
        return {
            "type": self.type_name,
            "num_positive_roots": len(self.positive_indices),
            "nu_lng": self.nu_lng,
            "m": self.m_constant,
            "theta_omega": list(self.root_omega[self.theta_idx]),
            "minuscule_nodes": list(self.o_prime),
            "omega_gram": [[str(x) for x in row] for row in self.omega_gram],
            "simple_roots_omega": [
                list(self.root_omega[i]) for i in self.simple_indices
            ],
        }


def _solve_rational(A, b):
    """Solve the square rational system A x = b exactly."""
    n = len(A)
    M = [list(map(_Q, row)) + [_Q(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def build_root_datum(letter: str, rank: int) -> RootDatum:
    """Construct the root system of the given finite type."""
    if not isinstance(rank, int) or rank < 1:
        raise InvalidType("rank must be a positive integer")
    if letter == "A" and rank >= 1:
        return RootDatum(letter, rank)
    if letter in ("B", "C", "D", "E", "F", "G"):
        return RootDatum(letter, rank)
    raise InvalidType(f"unknown type {letter}{rank}")


# ---------------------------------------------------------------------------
# Lattices between Q and P
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeB:
    """An intermediate lattice Q <= B <= P given by a basis in omega-coordinates."""

    datum: RootDatum
    basis: tuple  # tuple of integer omega-coordinate tuples, full rank
    name: str
    m_tilde: int
    pi_nodes: tuple  # subset of O' whose omega_r lies in B (0 is always implicit)

    def contains(self, b) -> bool:
        coords = self.coordinates(b)
        return coords is not None

    def coordinates(self, b):
        sol = _solve_rational(
            [[self.basis[j][i] for j in range(len(self.basis))] for i in range(self.datum.rank)],
            list(b),
        )
        if all(x.denominator == 1 for x in sol):
            return tuple(int(x) for x in sol)
        return None

    def describe(self) -> dict:
        return {
            "name": self.name,
            "basis": [list(v) for v in self.basis],
            "m_tilde": self.m_tilde,
            "pi_nodes": list(self.pi_nodes),
        }


def make_lattice(datum: RootDatum, choice="P") -> LatticeB:
    """Build an intermediate lattice: "P", "Q", or an explicit basis."""
    n = datum.rank
    if choice == "P":
        basis = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        name = "P"
    elif choice == "Q":
        basis = tuple(datum.root_omega[i] for i in datum.simple_indices)
        name = "Q"
    else:
        basis = tuple(tuple(int(x) for x in row) for row in choice)
        if len(basis) != n:
            raise NotIntermediate("basis must have full rank")
        name = "custom"
    mat = [[basis[j][i] for j in range(n)] for i in range(n)]
    try:
        det_check = _solve_rational(mat, [0] * n)
    except StopIteration:
        raise NotIntermediate("basis is singular") from None
    lat = LatticeB(datum, basis, name, 1, ())
    # Q subset of B: every simple root must have integer coordinates
    for i in datum.simple_indices:
        if lat.coordinates(datum.root_omega[i]) is None:
            raise NotIntermediate(f"simple root {i} not in the lattice")
    # m_tilde: least natural with m_tilde*(B,B) integral
    denoms = []
    for u in basis:
        for v in basis:
            denoms.append(datum.pair_weights(u, v).denominator)
    m_tilde = lcm(*denoms)
    pi_nodes = []
    for r in datum.o_prime:
        omega_r = tuple(1 if j == r - 1 else 0 for j in range(n))
        if lat.coordinates(omega_r) is not None:
            pi_nodes.append(r)
    return LatticeB(datum, basis, name, m_tilde, tuple(pi_nodes))


# ---------------------------------------------------------------------------
# Formal weights (rational + k-linear parts)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalWeight:
    """A weight c = vq + k_sht*vs + k_lng*vl with rational coordinate vectors.

    Encodes evaluation points q^c: the monomial X_a(q^c) has q-exponent
    (a, vq), t_sht-exponent (a, vs) and t_lng-exponent (a, vl)/nu_lng.
    """

    vq: tuple
    vs: tuple
    vl: tuple

    @staticmethod
    def zero(rank: int) -> "FormalWeight":
        z = (_Q(0),) * rank
        return FormalWeight(z, z, z)

    def __add__(self, other):
        return FormalWeight(
            tuple(a + b for a, b in zip(self.vq, other.vq)),
            tuple(a + b for a, b in zip(self.vs, other.vs)),
            tuple(a + b for a, b in zip(self.vl, other.vl)),
        )

    def __neg__(self):
        return FormalWeight(
            tuple(-a for a in self.vq),
            tuple(-a for a in self.vs),
            tuple(-a for a in self.vl),
        )

    def add_lattice(self, b):
        return FormalWeight(
            tuple(a + x for a, x in zip(self.vq, b)), self.vs, self.vl
        )

    def apply_w(self, w: WElt) -> "FormalWeight":
        def act(v):
            n = w.datum.rank
            return tuple(
                sum(w.mat[i][j] * v[j] for j in range(n)) for i in range(n)
            )

        return FormalWeight(act(self.vq), act(self.vs), act(self.vl))

    def x_exponents(self, datum: RootDatum, a):
        """Exponents (eq, es, el) of X_a(q^{this point})."""
        eq = datum.pair_weights(a, self.vq)
        es = datum.pair_weights(a, self.vs)
        el = datum.pair_weights(a, self.vl) / datum.nu_lng
        return eq, es, el

    def key(self):
        return (self.vq, self.vs, self.vl)


def rho_k(datum: RootDatum, k_sht=None, k_lng=None):
    """The weighted half-sum of positive roots, as a formal or numeric weight.

    With k values omitted the result keeps the k-linear parts symbolic (the
    FormalWeight carries rho_sht and rho_lng separately); with rational values
    it is folded into the rational part.
    """
    n = datum.rank
    rs = tuple(_Q(x) for x in datum.rho_sht)
    rl = tuple(_Q(x) for x in datum.rho_lng)
    if k_sht is None:
        return FormalWeight((_Q(0),) * n, rs, rl)
    k_sht = _Q(k_sht)
    k_lng = k_sht if k_lng is None else _Q(k_lng)
    vq = tuple(k_sht * a + k_lng * b for a, b in zip(rs, rl))
    return FormalWeight(vq, (_Q(0),) * n, (_Q(0),) * n)
