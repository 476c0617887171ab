"""Root systems of types A, B, C, D and G2 over a simple basis.

Roots are integer tuples of coefficients over the simple roots (Bourbaki
numbering: for B_l the last simple root is short, for C_l it is long, for D_l
the last two nodes form the fork, for G2 the first simple root is short).
Only positive roots are stored; a negative root is the negated tuple.
"""
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DegenerateInput, InvalidRank, MaximalRoot

GROUP_TYPES = ("A", "B", "C", "D", "G2")


def gram_matrix(group_type, rank):
    """Symmetric integer inner products (alpha_i, alpha_j) of the simple roots."""
    l = rank
    g = [[0] * l for _ in range(l)]
    if group_type == "G2":
        return [[2, -3], [-3, 6]]
    if group_type == "A":
        for i in range(l):
            g[i][i] = 2
            if i + 1 < l:
                g[i][i + 1] = g[i + 1][i] = -1
    elif group_type == "B":
        for i in range(l):
            g[i][i] = 4 if i < l - 1 else 2
            if i + 1 < l:
                g[i][i + 1] = g[i + 1][i] = -2
    elif group_type == "C":
        for i in range(l):
            g[i][i] = 2 if i < l - 1 else 4
            if i + 1 < l:
                g[i][i + 1] = g[i + 1][i] = -1 if i + 1 < l - 1 else -2
    elif group_type == "D":
        for i in range(l):
            g[i][i] = 2
        for i in range(l - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        if l >= 3:
            g[l - 3][l - 1] = g[l - 1][l - 3] = -1
    return g


def check_rank(group_type, rank):
    if group_type not in GROUP_TYPES:
        raise InvalidRank(f"unsupported group type {group_type!r}")
    minimum = {"A": 1, "B": 2, "C": 2, "D": 2, "G2": 2}[group_type]
    if not isinstance(rank, int) or rank < minimum:
        raise InvalidRank(f"type {group_type} needs rank >= {minimum}, got {rank}")
    if group_type == "G2" and rank != 2:
        raise InvalidRank("type G2 has rank 2")


def _rep_dim(group_type, l):
    return {"A": l + 1, "B": 2 * l + 1, "C": 2 * l, "D": 2 * l, "G2": 7}[group_type]


def height(root):
    return sum(root)


def neg(root):
    return tuple(-c for c in root)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def simple(i, rank):
    """The simple root alpha_i (1-based)."""
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


@dataclass(frozen=True)
class RootSystem:
    group_type: str
    rank: int
    positive_roots: tuple
    cartan_matrix: tuple
    rep_dim: int
    gram: tuple = field(repr=False)

    @cached_property
    def roots(self):
        """All roots, positives first then their negatives in the same order."""
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @cached_property
    def _root_set(self):
        return frozenset(self.roots)

    @cached_property
    def _positive_set(self):
        return frozenset(self.positive_roots)

    def is_root(self, v):
        return tuple(v) in self._root_set

    def is_positive(self, v):
        return tuple(v) in self._positive_set

    @property
    def simple_roots(self):
        return tuple(simple(i, self.rank) for i in range(1, self.rank + 1))

    def inner(self, a, b):
        return sum(
            a[i] * self.gram[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if a[i] and b[j]
        )

    def cartan_integer(self, alpha, beta):
        """<alpha, beta> = 2 (alpha, beta) / (beta, beta)."""
        num, den = 2 * self.inner(alpha, beta), self.inner(beta, beta)
        if num % den:
            raise DegenerateInput(f"non-integral pairing for {alpha}, {beta}")
        return num // den

    def coroot_coefficients(self, alpha):
        """Integer c_i with H_alpha = sum c_i H_{alpha_i}."""
        norm = self.inner(alpha, alpha)
        out = []
        for i, c in enumerate(alpha):
            ci = c * self.gram[i][i]
            if ci % norm:
                raise DegenerateInput(f"non-integral coroot for {alpha}")
            out.append(ci // norm)
        return tuple(out)

    def root_string(self, alpha, beta):
        """(r, q) with alpha - r beta, ..., alpha + q beta the beta-string through alpha."""
        alpha, beta = tuple(alpha), tuple(beta)
        if not (self.is_root(alpha) and self.is_root(beta)):
            raise DegenerateInput("root_string needs two roots")
        if alpha == beta or alpha == neg(beta):
            raise DegenerateInput("root_string needs linearly independent roots")
        r = 0
        while self.is_root(tuple(a - (r + 1) * b for a, b in zip(alpha, beta))):
            r += 1
        q = 0
        while self.is_root(tuple(a + (q + 1) * b for a, b in zip(alpha, beta))):
            q += 1
        return r, q

    def roots_of_height(self, h):
        """Roots of height h (negative h gives negative roots)."""
        return tuple(a for a in self.roots if height(a) == h)

    @cached_property
    def highest_root(self):
        return max(self.positive_roots, key=height)

    def to_json(self):
        return {
            "type": self.group_type,
            "rank": self.rank,
            "rep_dim": self.rep_dim,
            "positive_roots": [list(a) for a in self.positive_roots],
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "gamma": [
                {"k": gs.k, "roots": [list(a) for a in gs.roots]}
                for gs in gamma_chain(self)
            ],
            "parameter_roots": [list(a) for a in parameter_roots(self)],
        }


def _generate_positive(gram, rank):
    """Positive roots by adding simple roots along strings (r - q = <alpha, alpha_i>)."""
    def pairing(a, i):
        return 2 * sum(a[k] * gram[k][i] for k in range(rank)) // gram[i][i]

    layers = [[simple(i, rank) for i in range(1, rank + 1)]]
    known = set(layers[0])
    while layers[-1]:
        nxt = []
        for a in layers[-1]:
            for i in range(rank):
                r = 0
                while True:
                    b = tuple(c - (r + 1) * (k == i) for k, c in enumerate(a))
                    if b in known:
                        r += 1
                    else:
                        break
                q = r - pairing(a, i)
                if q > 0:
                    b = tuple(c + (k == i) for k, c in enumerate(a))
                    if b not in known:
                        known.add(b)
                        nxt.append(b)
        layers.append(nxt)
    return [a for layer in layers for a in layer]


def build_root_system(group_type, rank):
    check_rank(group_type, rank)
    g = gram_matrix(group_type, rank)
    cartan = tuple(
        tuple(2 * g[i][j] // g[j][j] for j in range(rank)) for i in range(rank)
    )
    pos = _generate_positive(g, rank)
    if group_type == "A":
        pos.sort(key=lambda a: (type_a_stratum(a, rank), height(a)))
    else:
        pos.sort(key=lambda a: (height(a), tuple(-c for c in a)))
    return RootSystem(
        group_type=group_type,
        rank=rank,
        positive_roots=tuple(pos),
        cartan_matrix=cartan,
        rep_dim=_rep_dim(group_type, rank),
        gram=tuple(tuple(r) for r in g),
    )


# -- nested subsystems and maximal roots ---------------------------------------
def type_a_stratum(root, rank):
    """Smallest k with root in Phi_k, where Phi_k has basis alpha_{l-k+1..l}."""
    first = next(i for i, c in enumerate(root) if c)
    return rank - first


def subsystem_roots(rs, nodes):
    """Positive roots supported on the given simple-root indices (1-based)."""
    allowed = {i - 1 for i in nodes}
    return tuple(
        a for a in rs.positive_roots
        if all(c == 0 or k in allowed for k, c in enumerate(a))
    )


def _max_root(roots):
    top = max(height(a) for a in roots)
    best = [a for a in roots if height(a) == top]
    if len(best) != 1:
        raise DegenerateInput("subsystem has no unique maximal root")
    return best[0]


# G2 candidate sets for the height-one element of Gamma.  With alpha2 (long)
# the scalar relation of A(t) is at most quadratic in t2 and carries t1 exactly
# as 2(t1 D + D t1), the monomial pattern of the order-7 template; alpha1
# produces cubic terms in t2.  normal_forms.search_g2_gamma checks both
# against the expanded template.
G2_GAMMA_CANDIDATES = {"alpha1": (1, 0), "alpha2": (0, 1)}
G2_DEFAULT_CANDIDATE = "alpha2"


def gammas(rs, g2_candidate=None):
    """gamma_1, ..., gamma_l as positive roots (gamma_k belongs to stratum k)."""
    l = rs.rank
    t = rs.group_type
    if t in ("A", "B", "C"):
        return [_max_root(subsystem_roots(rs, range(l - k + 1, l + 1)))
                for k in range(1, l + 1)]
    if t == "G2":
        key = g2_candidate or G2_DEFAULT_CANDIDATE
        return [G2_GAMMA_CANDIDATES[key], rs.highest_root]
    # D: nested D_k (k >= 3) maximal roots, the fork root alpha_l, and the
    # height l-1 root alpha_1 + ... + alpha_{l-1} matching the exponent l-1.
    out = [tuple(1 if k < l - 1 else 0 for k in range(l)), simple(l, l)]
    for k in range(3, l + 1):
        out.append(_max_root(subsystem_roots(rs, range(l - k + 1, l + 1))))
    return out


@dataclass(frozen=True)
class GammaSet:
    k: int
    roots: tuple


def gamma_chain(rs, g2_candidate=None):
    """Gamma_0, ..., Gamma_l with Gamma_k = {gamma_i : k+1 <= i <= l}."""
    g = gammas(rs, g2_candidate)
    return [GammaSet(k, tuple(g[k:])) for k in range(rs.rank + 1)]


def parameter_roots(rs, g2_candidate=None):
    """The positive root gamma carrying t_i (as t_i X_{-gamma}), for i = 1..l.

    For A and G2 the parameter index runs against the stratum index (t_1 sits
    on the highest root, matching the companion-matrix layout); for B, C, D it
    runs with it, so that t_i carries weight 2i in the scalar equations.
    """
    g = gammas(rs, g2_candidate)
    if rs.group_type in ("A", "G2"):
        return list(reversed(g))
    return g


def stratum_root(rs, k, m):
    """Type A: the unique root of height m in Phi_k^+ minus Phi_{k-1}^+."""
    _check_a(rs, k, m)
    l = rs.rank
    return tuple(1 if l - k <= i < l - k + m else 0 for i in range(l))


def next_simple(rs, k, m):
    """Type A: the unique simple alpha_s with stratum_root(k, m) + alpha_s in the same stratum."""
    _check_a(rs, k, m)
    if m == k:
        raise MaximalRoot(f"gamma_{k} has no successor in its stratum")
    return simple(rs.rank - k + m + 1, rs.rank)


def _check_a(rs, k, m):
    if rs.group_type != "A":
        raise DegenerateInput("strata are defined for type A only")
    if not (1 <= m <= k <= rs.rank):
        raise DegenerateInput(f"need 1 <= m <= k <= l, got k={k}, m={m}")
