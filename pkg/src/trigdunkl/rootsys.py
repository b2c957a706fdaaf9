"""Root systems in their Bourbaki realizations, with Weyl combinatorics.

Weights are integer tuples of coordinates in the stored weight basis (the
fundamental weights for reduced types).  General h* elements are tuples whose
entries may be int, Fraction, or RatFunc; all operations here are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC")

# verdicts of le_plus
LESS = "less"
EQUAL = "equal"
GREATER = "greater"
INCOMPARABLE = "incomparable"

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
    "BC": lambda n: n >= 1,
}

_COXETER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "G": lambda n: 6,
    "BC": lambda n: 2 * n,
}

_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12],
                    7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
    "BC": lambda n: list(range(2, 2 * n + 1, 2)),
}


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def _unit(dim, i, c=1):
    v = [Fraction(0)] * dim
    v[i] = Fraction(c)
    return v


def _simple_roots(family, n):
    """Bourbaki simple roots as ambient Fraction vectors, plus ambient dim."""
    if family == "A":
        dim = n + 1
        simples = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(dim)]
                   for i in range(n)]
    elif family in ("B", "BC"):
        dim = n
        simples = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(dim)]
                   for i in range(n - 1)]
        simples.append(_unit(dim, n - 1))
    elif family == "C":
        dim = n
        simples = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(dim)]
                   for i in range(n - 1)]
        simples.append(_unit(dim, n - 1, 2))
    elif family == "D":
        dim = n
        simples = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(dim)]
                   for i in range(n - 1)]
        last = _unit(dim, n - 2)
        last[n - 1] = Fraction(1)
        simples.append(last)
    elif family == "E":
        dim = 8
        half = Fraction(1, 2)
        a1 = [half, -half, -half, -half, -half, -half, -half, half]
        a2 = [Fraction(1), Fraction(1)] + [Fraction(0)] * 6
        simples = [a1, a2]
        # alpha_{i+3} = e_{i+2} - e_{i+1} in 1-based Bourbaki labels
        for i in range(n - 2):
            v = [Fraction(0)] * 8
            v[i + 1] = Fraction(1)
            v[i] = Fraction(-1)
            simples.append(v)
    elif family == "F":
        dim = 4
        half = Fraction(1, 2)
        simples = [
            [Fraction(0), Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(1), Fraction(-1)],
            [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
            [half, -half, -half, -half],
        ]
    elif family == "G":
        dim = 3
        simples = [
            [Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)],
        ]
    else:
        raise ValueError(family)
    return [tuple(s) for s in simples], dim


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _reflect_ambient(beta, alpha, alpha_norm):
    c = 2 * _dot(beta, alpha) / alpha_norm
    return tuple(b - c * a for b, a in zip(beta, alpha))


def _mat_inv(m):
    """Inverse of a square Fraction matrix by Gauss-Jordan."""
    n = len(m)
    a = [[Fraction(x) for x in row] + _unit(n, i) for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                g = a[r][col]
                a[r] = [x - g * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _mat_vec(m, v):
    return tuple(sum(r * x for r, x in zip(row, v)) for row in m)


def _as_int(x):
    if x.denominator != 1:
        raise AssertionError(f"expected an integer, got {x}")
    return int(x)


def _as_exact(x):
    """int when integral, Fraction otherwise (BC doubled-root coroots)."""
    return int(x) if x.denominator == 1 else x


class RootSystem:
    """Immutable Cartan/root/weight data for one irreducible type.

    Simple-root and node indices are 0-based in this API; node i corresponds
    to Bourbaki node i+1.
    """

    def __init__(self, spec):
        self.spec = spec
        family, n = spec.family, spec.rank
        self.rank = n
        simples, dim = _simple_roots(family, n)
        self.ambient_dim = dim
        self.simple_roots = tuple(simples)
        self.gram = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
        norms = [_dot(s, s) for s in simples]
        # cartan[i][j] = <alpha_j, alpha_i^vee>
        self.cartan = tuple(
            tuple(int(2 * _dot(simples[j], simples[i]) / norms[i]) for j in range(n))
            for i in range(n)
        )
        self._inv_cartan = _mat_inv(self.cartan)

        if family == "BC":
            positive = self._bc_positive_roots(n, dim)
            fw = [tuple(Fraction(int(j <= i)) for j in range(n)) for i in range(n)]
        else:
            positive = self._closure_positive_roots(simples, norms)
            # fundamental weights: w_i = sum_j (cartan^{-1})_{ji} alpha_j
            fw = []
            for i in range(n):
                v = [Fraction(0)] * dim
                for j in range(n):
                    c = self._inv_cartan[j][i]
                    v = [x + c * y for x, y in zip(v, simples[j])]
                fw.append(tuple(v))
        self.fundamental_weights = tuple(fw)

        # pairing of the weight basis with the simple coroots:
        # wt_pair[i][j] = <FW_j, alpha_i^vee>  (identity for reduced types)
        self.wt_pair = tuple(
            tuple(int(2 * _dot(fw[j], simples[i]) / norms[i]) for j in range(n))
            for i in range(n)
        )
        self.is_reduced = family != "BC"

        # weight coordinates of arbitrary vectors: solve against FW basis
        # restricted to span(R); use coroot pairings and wt_pair^{-1}.
        self._inv_wt_pair = _mat_inv(self.wt_pair)

        # per-positive-root data
        amb = positive
        acoords = []
        wcoords = []
        pos_pair = []
        pnorms = []
        for beta in amb:
            nb = _dot(beta, beta)
            pnorms.append(nb)
            pair_sc = [2 * _dot(beta, simples[i]) / norms[i] for i in range(n)]
            a = _mat_vec(self._inv_cartan, pair_sc)
            acoords.append(tuple(_as_int(Fraction(x)) for x in a))
            # coordinates of beta in the weight basis
            w = _mat_vec(self._inv_wt_pair, pair_sc)
            wcoords.append(tuple(_as_int(Fraction(x)) for x in w))
            pos_pair.append(tuple(int(2 * _dot(fw[j], beta) / nb) for j in range(n)))
        order = sorted(range(len(amb)),
                       key=lambda r: (sum(acoords[r]), wcoords[r]))
        self.positive_roots = tuple(amb[r] for r in order)
        self.pos_acoords = tuple(acoords[r] for r in order)
        self.pos_wcoords = tuple(wcoords[r] for r in order)
        self.pos_pair = tuple(pos_pair[r] for r in order)
        self.pos_norms = tuple(pnorms[r] for r in order)
        self.n_positive = len(order)

        self.simple_index = tuple(self.positive_roots.index(tuple(s)) for s in simples)
        self.alpha_w = tuple(self.pos_wcoords[self.simple_index[i]] for i in range(n))

        # coupling classes: class 0 = class of alpha_1, then alpha_n, then rest
        by_norm = {}
        for r in range(self.n_positive):
            by_norm.setdefault(self.pos_norms[r], None)
        class_norms = [norms[0]]
        if norms[n - 1] not in class_norms:
            class_norms.append(norms[n - 1])
        for nb in sorted(by_norm):
            if nb not in class_norms:
                class_norms.append(nb)
        self.class_norms = tuple(class_norms)
        self.n_classes = len(class_norms)
        self.pos_class = tuple(class_norms.index(nb) for nb in self.pos_norms)

        # <alpha_r, alpha_i^vee> for every positive root r and simple i
        self.pos_simple_pair = tuple(
            tuple(self.pairing(w, i) for i in range(n)) for w in self.pos_wcoords
        )

        # alpha_r^vee in the simple-coroot basis (half-integral for BC doubles)
        inv_wt_pair_t = _mat_inv(self._transpose(self.wt_pair))
        self.pos_coroot_scoords = tuple(
            tuple(_as_exact(Fraction(x))
                  for x in _mat_vec(inv_wt_pair_t, self.pos_pair[r]))
            for r in range(self.n_positive)
        )

        index_of = {self.pos_wcoords[r]: r for r in range(self.n_positive)}
        self.pos_index_of_wcoords = index_of
        self.double_root = tuple(
            index_of.get(tuple(2 * c for c in self.pos_wcoords[r]))
            for r in range(self.n_positive)
        )

        self.gram_fw = tuple(tuple(_dot(fw[i], fw[j]) for j in range(n))
                             for i in range(n))
        self.gram_coroot = tuple(
            tuple(2 * _dot(simples[i], simples[j]) * 2 / (norms[i] * norms[j])
                  for j in range(n))
            for i in range(n)
        )
        self.coxeter_number = _COXETER[family](n)
        self.degrees = tuple(_DEGREES[family](n))
        self.weyl_order = 1
        for d in self.degrees:
            self.weyl_order *= d

        if family == "BC":
            sigma = tuple(range(n))  # w0 = -1
        else:
            sigma = []
            for i in range(n):
                img = self._antidominant_of_unit(i)
                neg = [j for j, c in enumerate(img) if c == -1]
                if len(neg) != 1 or any(c not in (0, -1) for c in img):
                    raise AssertionError("w0 image of a fundamental weight "
                                         "is not a negated fundamental weight")
                sigma.append(neg[0])
            sigma = tuple(sigma)
        self.w0_sigma = sigma
        self.longest_element_action = tuple(
            tuple(-int(j == sigma[i]) for j in range(n)) for i in range(n)
        )

        if family == "A" and n >= 2:
            self._alpha_prime = self._build_alpha_prime()
        else:
            self._alpha_prime = None

    @staticmethod
    def _transpose(m):
        return [list(row) for row in zip(*m)]

    def _antidominant_of_unit(self, i):
        mu = tuple(int(j == i) for j in range(self.rank))
        while True:
            for j in range(self.rank):
                if self.pairing(mu, j) > 0:
                    mu = self.reflect_weight(j, mu)
                    break
            else:
                return mu

    def _closure_positive_roots(self, simples, norms):
        all_roots = set(tuple(s) for s in simples)
        queue = list(all_roots)
        while queue:
            beta = queue.pop()
            for s, nm in zip(simples, norms):
                img = _reflect_ambient(beta, s, nm)
                if img not in all_roots:
                    all_roots.add(img)
                    queue.append(img)
        positive = []
        for beta in all_roots:
            pair_sc = [2 * _dot(beta, s) / nm for s, nm in zip(simples, norms)]
            a = _mat_vec(self._inv_cartan, pair_sc)
            if all(x >= 0 for x in a):
                positive.append(beta)
        return positive

    @staticmethod
    def _bc_positive_roots(n, dim):
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                v = _unit(dim, i)
                v[j] = Fraction(-1)
                roots.append(tuple(v))
                v = _unit(dim, i)
                v[j] = Fraction(1)
                roots.append(tuple(v))
        for i in range(n):
            roots.append(tuple(_unit(dim, i)))
            roots.append(tuple(_unit(dim, i, 2)))
        return roots

    # --- weight arithmetic (integer coordinate tuples) ---

    def pairing(self, mu, i):
        """<mu, alpha_i^vee> for a weight/h* vector in basis coordinates."""
        row = self.wt_pair[i]
        return sum(c * m for c, m in zip(row, mu) if c)

    def root_pairing(self, mu, r):
        """<mu, alpha^vee> for the r-th positive root."""
        row = self.pos_pair[r]
        return sum(c * m for c, m in zip(row, mu) if c)

    def root_pairing_general(self, v, r):
        """<v, alpha^vee> for general coefficient entries."""
        row = self.pos_pair[r]
        total = None
        for c, x in zip(row, v):
            if c:
                total = x * c if total is None else total + x * c
        return 0 if total is None else total

    def reflect_weight(self, i, mu):
        c = self.pairing(mu, i)
        if not c:
            return tuple(mu)
        aw = self.alpha_w[i]
        return tuple(m - c * a for m, a in zip(mu, aw))

    def reflect_root(self, r, mu):
        """Reflection in the r-th positive root, on basis coordinates."""
        c = self.root_pairing(mu, r)
        if not c:
            return tuple(mu)
        aw = self.pos_wcoords[r]
        return tuple(m - c * a for m, a in zip(mu, aw))

    def w0_act(self, mu):
        out = [0 * m for m in mu]
        for i, m in enumerate(mu):
            out[self.w0_sigma[i]] = -m
        return tuple(out)

    def dominant(self, mu):
        """The unique dominant representative of the W-orbit of mu."""
        mu = tuple(mu)
        while True:
            for i in range(self.rank):
                if self.pairing(mu, i) < 0:
                    mu = self.reflect_weight(i, mu)
                    break
            else:
                return mu

    def is_dominant(self, mu):
        return all(self.pairing(mu, i) >= 0 for i in range(self.rank))

    def orbit(self, mu):
        """The full W-orbit of an integral weight."""
        mu = tuple(mu)
        seen = {mu}
        queue = [mu]
        while queue:
            v = queue.pop()
            for i in range(self.rank):
                w = self.reflect_weight(i, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def acoords_of(self, v):
        """Simple-root coordinates of a weight-basis vector (Fractions)."""
        pair = [self.pairing(v, i) for i in range(self.rank)]
        return _mat_vec(self._inv_cartan, pair)

    def dominance_le(self, mu, nu):
        """mu <= nu iff nu - mu is a nonnegative integer sum of simple roots."""
        diff = tuple(b - a for a, b in zip(mu, nu))
        a = self.acoords_of(diff)
        return all(x.denominator == 1 and x >= 0 for x in map(Fraction, a))

    def height_from(self, mu, nu):
        """Sum of simple-root coordinates of nu - mu."""
        diff = tuple(b - a for a, b in zip(mu, nu))
        return sum(self.acoords_of(diff))

    def le_plus(self, mu, nu):
        """Verdict of the modified order: dominant orbits first, reversed inside."""
        mu, nu = tuple(mu), tuple(nu)
        if mu == nu:
            return EQUAL
        mup, nup = self.dominant(mu), self.dominant(nu)
        if mup == nup:
            if self.dominance_le(mu, nu):
                return GREATER
            if self.dominance_le(nu, mu):
                return LESS
            return INCOMPARABLE
        if self.dominance_le(mup, nup):
            return LESS
        if self.dominance_le(nup, mup):
            return GREATER
        return INCOMPARABLE

    def saturated_set(self, mu):
        """All weights nu with nu_+ <= mu_+ (the weights of the extremal orbit)."""
        top = self.dominant(mu)
        seen = {top}
        queue = [top]
        while queue:
            v = queue.pop()
            for i in range(self.rank):
                w = self.reflect_weight(i, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
            for i in range(self.rank):
                w = tuple(m - a for m, a in zip(v, self.alpha_w[i]))
                if w not in seen and self.dominance_le(self.dominant(w), top):
                    seen.add(w)
                    queue.append(w)
        return seen

    # --- h* elements with general coefficients ---

    def reflect_general(self, i, v):
        c = None
        for coef, x in zip(self.wt_pair[i], v):
            if coef:
                c = x * coef if c is None else c + x * coef
        aw = self.alpha_w[i]
        return tuple(x - c * a if a else x for x, a in zip(v, aw))

    def pairing_general(self, v, i):
        total = None
        for coef, x in zip(self.wt_pair[i], v):
            if coef:
                total = x * coef if total is None else total + x * coef
        return 0 if total is None else total

    # --- A_n alpha' vectors ---

    def _build_alpha_prime(self):
        dim = self.ambient_dim
        shift = Fraction(2, dim)
        out = []
        for r in range(self.n_positive):
            beta = self.positive_roots[r]
            i = beta.index(Fraction(1))
            j = beta.index(Fraction(-1))
            ap = tuple(Fraction(int(l == i) + int(l == j)) - shift
                       for l in range(dim))
            out.append(ap)
        return tuple(out)

    def alpha_prime(self, r):
        """The projected e_i + e_j vector attached to the r-th positive root."""
        if self._alpha_prime is None:
            raise ValueError("alpha' is defined for type A_n, n >= 2, only")
        return self._alpha_prime[r]

    def alpha_prime_pairing(self, r):
        """Fractions p with mu(alpha') = sum_j mu_j p_j in weight coordinates."""
        ap = self.alpha_prime(r)
        return tuple(_dot(fw, ap) for fw in self.fundamental_weights)

    def __repr__(self):
        return f"RootSystem({self.spec})"

    def to_json(self):
        return {
            "family": self.spec.family,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(a) for a in self.pos_acoords],
            "fundamental_weights": [[str(c) for c in fw]
                                    for fw in self.fundamental_weights],
        }


@lru_cache(maxsize=None)
def _cached_system(family, rank):
    return RootSystem(RootSystemSpec(family, rank))


def build_root_system(spec):
    """Construct (or fetch the cached) root system for a validated spec."""
    return _cached_system(spec.family, spec.rank)


def root_system(family, rank):
    return build_root_system(RootSystemSpec(family, rank))


def reflect(rs, i, v):
    """Simple reflection s_i applied to an h* element in weight coordinates."""
    if not 0 <= i < rs.rank:
        raise IndexError(f"simple root index {i} out of range for rank {rs.rank}")
    return rs.reflect_general(i, tuple(v))


def weyl_orbit(rs, mu):
    return rs.orbit(mu)


def le_plus(rs, mu, nu):
    return rs.le_plus(mu, nu)


def alpha_prime(rs, r):
    return rs.alpha_prime(r)
