"""Chevalley bases in the defining representation and root-group actions.

Type A uses the elementary matrices X_alpha = E_{s,t+1}.  Types B, C, D are
realized inside the Lie algebra of an anti-diagonal bilinear form, G2 in its
7-dimensional representation.  For those, simple root vectors are fixed
first and the remaining X_alpha are generated by brackets divided by the
string length factor (r + 1), so all structure constants are read off the
matrices themselves.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, gcd as _gcd

from .algebra import ONE, ZERO, field as as_field, mat_mul
from .errors import DegenerateInput, NotInLieAlgebra
from .roots import add, build_root_system, neg, simple


# -- integer matrices ---------------------------------------------------------
def izeros(n):
    return [[0] * n for _ in range(n)]


def unit(n, i, j, c=1):
    m = izeros(n)
    m[i][j] = c
    return m


def imul(a, b):
    n = len(a)
    out = izeros(n)
    for i in range(n):
        for k in range(n):
            aik = a[i][k]
            if aik:
                bk = b[k]
                row = out[i]
                for j in range(n):
                    if bk[j]:
                        row[j] += aik * bk[j]
    return out


def iadd(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def iscale(a, c):
    return [[x * c for x in row] for row in a]


def bracket(a, b):
    return iadd(imul(a, b), imul(b, a), -1)


def iszero(a):
    return not any(any(row) for row in a)


def freeze(a):
    return tuple(tuple(row) for row in a)


def _exact_div(a, d):
    out = []
    for row in a:
        new = []
        for x in row:
            if x % d:
                raise DegenerateInput("structure constant does not divide bracket")
            new.append(x // d)
        out.append(new)
    return out


def _content(a):
    g = 0
    for row in a:
        for x in row:
            g = _gcd(g, x)
    return g


# -- simple root vectors per type -------------------------------------------
def _form(group_type, n, l):
    """Anti-diagonal bilinear form; for B the middle entry is 2 so that the
    Chevalley lattice is integral."""
    j = izeros(n)
    for p in range(n):
        if group_type == "C":
            j[p][n - 1 - p] = 1 if p < l else -1
        else:
            j[p][n - 1 - p] = 1
    if group_type == "B":
        j[l][l] = 2
    return j


def _project(seed, form):
    """X - J^{-1} X^T J scaled to a primitive integer matrix."""
    n = len(seed)
    # J is anti-diagonal, so J^{-1} is anti-diagonal with reciprocal entries
    jinv = [[Fraction(0)] * n for _ in range(n)]
    for p in range(n):
        jinv[n - 1 - p][p] = Fraction(1, form[p][n - 1 - p])
    out = [[Fraction(x) for x in row] for row in seed]
    for a in range(n):
        for b in range(n):
            # (J^{-1} X^T J)_{ab} = Jinv[a][n-1-a] * X[n-1-b][n-1-a] * J[n-1-b][b]
            x = seed[n - 1 - b][n - 1 - a]
            if x:
                out[a][b] -= jinv[a][n - 1 - a] * x * form[n - 1 - b][b]
    den = 1
    for row in out:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    m = [[int(x * den) for x in row] for row in out]
    return _exact_div(m, _content(m))


def _classical_simple(group_type, l):
    n = {"B": 2 * l + 1, "C": 2 * l, "D": 2 * l}[group_type]
    form = _form(group_type, n, l)
    seeds = [(i, i + 1) for i in range(l - 1)]
    if group_type == "D":
        seeds.append((l - 2, l))
    else:
        seeds.append((l - 1, l))
    es, fs = [], []
    for i, j in seeds:
        e = _project(unit(n, i, j), form)
        f = _project(unit(n, j, i), form)
        h = bracket(e, f)
        lam = _eigen(h, e)
        if lam <= 0 or 2 % lam:
            raise DegenerateInput("cannot normalize simple root vectors")
        f = iscale(f, 2 // lam)
        es.append(e)
        fs.append(f)
    return es, fs


def _eigen(h, x):
    """The scalar c with [h, x] = c x (x nonzero)."""
    b = bracket(h, x)
    for i, row in enumerate(x):
        for j, v in enumerate(row):
            if v:
                c = Fraction(b[i][j], v)
                if c.denominator != 1:
                    raise DegenerateInput("non-integral eigenvalue")
                return int(c)
    raise DegenerateInput("zero root vector")


def _g2_simple():
    n = 7
    e1 = izeros(n)
    for (i, j, c) in [(0, 1, 1), (2, 3, 1), (3, 4, 2), (5, 6, 1)]:
        e1[i][j] = c
    f1 = izeros(n)
    for (i, j, c) in [(1, 0, 1), (3, 2, 2), (4, 3, 1), (6, 5, 1)]:
        f1[i][j] = c
    e2 = iadd(unit(n, 1, 2), unit(n, 4, 5))
    f2 = iadd(unit(n, 2, 1), unit(n, 5, 4))
    return [e1, e2], [f1, f2]


# -- the basis -----------------------------------------------------------------
@dataclass
class ChevalleyBasis:
    rs: object
    X: dict  # signed root -> integer matrix (tuple of tuples)
    H: list  # H[i] = H_{alpha_{i+1}}
    N: dict = field(default_factory=dict)  # (beta, gamma) -> c with [X_b, X_g] = c X_{b+g}

    @property
    def n(self):
        return self.rs.rep_dim

    @property
    def rank(self):
        return self.rs.rank

    def H_of(self, alpha):
        """H_alpha as an integer matrix (integral combination of the H_i)."""
        m = izeros(self.n)
        for i, c in enumerate(self.rs.coroot_coefficients(alpha)):
            if c:
                m = iadd(m, self.H[i], c)
        return m

    def structure_constant(self, beta, gamma):
        """c with [X_beta, X_gamma] = c X_{beta+gamma}; 0 if beta+gamma is not a root."""
        key = (tuple(beta), tuple(gamma))
        if key not in self.N:
            s = add(beta, gamma)
            if not self.rs.is_root(s):
                self.N[key] = 0
            else:
                self.N[key] = _coefficient(bracket(self.X[key[0]], self.X[key[1]]), self.X[s])
        return self.N[key]

    @cached_property
    def pivots(self):
        """A nonzero entry position of each X_alpha (distinct across roots)."""
        out = {}
        seen = {}
        for a, m in self.X.items():
            pos = next((i, j) for i, row in enumerate(m) for j, v in enumerate(row) if v)
            if pos in seen:
                raise DegenerateInput(f"roots {seen[pos]} and {a} share a pivot")
            seen[pos] = a
            out[a] = pos
        return out

    @cached_property
    def _cartan_solver(self):
        """Rows and a rational inverse recovering H-coordinates from a diagonal."""
        n, l = self.n, self.rank
        d = [[Fraction(self.H[i][p][p]) for i in range(l)] for p in range(n)]
        rows = []
        work = []
        for p in range(n):
            v = list(d[p])
            for (q, piv, w) in work:
                if v[piv]:
                    f = v[piv] / w[piv]
                    v = [a - f * b for a, b in zip(v, w)]
            nz = next((k for k, x in enumerate(v) if x), None)
            if nz is not None:
                work.append((p, nz, v))
                rows.append(p)
            if len(rows) == l:
                break
        sub = [d[p] for p in rows]
        return rows, _rational_inverse(sub)

    def to_json(self):
        return {
            "type": self.rs.group_type,
            "rank": self.rs.rank,
            "rep_dim": self.n,
            "X": [{"root": list(a), "matrix": [list(r) for r in self.X[a]]}
                  for a in self.rs.roots],
            "H": [{"index": i + 1, "matrix": [list(r) for r in h]}
                  for i, h in enumerate(self.H)],
        }


def _rational_inverse(m):
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _coefficient(m, x):
    """The scalar c with m = c x (raises if m is not a multiple of x)."""
    i, j = next((i, j) for i, row in enumerate(x) for j, v in enumerate(row) if v)
    c = Fraction(m[i][j], x[i][j])
    if any(m[p][q] != c * x[p][q] for p in range(len(m)) for q in range(len(m))):
        raise DegenerateInput("bracket is not a multiple of the root vector")
    return int(c) if c.denominator == 1 else c


def build_chevalley_basis(rs):
    l, n = rs.rank, rs.rep_dim
    if rs.group_type == "A":
        X = {}
        for a in rs.positive_roots:
            s = next(i for i, c in enumerate(a) if c)
            t = max(i for i, c in enumerate(a) if c)
            X[a] = freeze(unit(n, s, t + 1))
            X[neg(a)] = freeze(unit(n, t + 1, s))
        H = [freeze(iadd(unit(n, i, i), unit(n, i + 1, i + 1), -1)) for i in range(l)]
        return ChevalleyBasis(rs, X, H)

    if rs.group_type == "G2":
        es, fs = _g2_simple()
    else:
        es, fs = _classical_simple(rs.group_type, l)
    H = [bracket(e, f) for e, f in zip(es, fs)]
    X = {}
    for i in range(l):
        X[simple(i + 1, l)] = es[i]
        X[neg(simple(i + 1, l))] = fs[i]
    Hfull = ChevalleyBasis(rs, {}, [freeze(h) for h in H])
    for a in rs.positive_roots:
        if a in X:
            continue
        for i in range(l):
            b = tuple(c - (k == i) for k, c in enumerate(a))
            if rs.is_positive(b):
                break
        else:
            raise DegenerateInput(f"no simple decomposition for {a}")
        ai = simple(i + 1, l)
        r, _ = rs.root_string(b, ai)
        xa = _exact_div(bracket(es[i], X[b]), r + 1)
        xm = _exact_div(bracket(fs[i], X[neg(b)]), r + 1)
        target = Hfull.H_of(a)
        got = bracket(xa, xm)
        if got == iscale(target, -1):
            xm = iscale(xm, -1)
        elif got != target:
            raise DegenerateInput(f"[X_a, X_-a] is not +-H_a for a = {a}")
        X[a] = xa
        X[neg(a)] = xm
    return ChevalleyBasis(rs, {a: freeze(m) for a, m in X.items()}, [freeze(h) for h in H])


def chevalley_basis(group_type, rank):
    return build_chevalley_basis(build_root_system(group_type, rank))


# -- Lie algebra elements ---------------------------------------------------
class LieElement:
    """h_i H_i + sum z_delta X_delta over FieldElem coefficients."""

    __slots__ = ("basis", "cartan", "roots", "_matrix")

    def __init__(self, basis, cartan=None, roots=None):
        self.basis = basis
        l = basis.rank
        cartan = [as_field(c) for c in (cartan or [0] * l)]
        if len(cartan) != l:
            raise ValueError("wrong number of Cartan coefficients")
        self.cartan = tuple(cartan)
        self.roots = {}
        for a, c in (roots or {}).items():
            c = as_field(c)
            a = tuple(a)
            if a not in basis.X:
                raise ValueError(f"{a} is not a root")
            if not c.is_zero():
                self.roots[a] = c
        self._matrix = None

    def coefficient(self, root):
        return self.roots.get(tuple(root), ZERO)

    def support(self):
        """Roots with nonzero coefficient, in root-system order."""
        return [a for a in self.basis.rs.roots if a in self.roots]

    def cartan_is_zero(self):
        return all(c.is_zero() for c in self.cartan)

    @property
    def matrix(self):
        if self._matrix is None:
            n = self.basis.n
            m = [[ZERO] * n for _ in range(n)]
            terms = [(c, self.basis.H[i]) for i, c in enumerate(self.cartan) if not c.is_zero()]
            terms += [(c, self.basis.X[a]) for a, c in self.roots.items()]
            for c, x in terms:
                for i, row in enumerate(x):
                    for j, v in enumerate(row):
                        if v:
                            m[i][j] = m[i][j] + c * v
            self._matrix = m
        return self._matrix

    def __add__(self, other):
        roots = dict(self.roots)
        for a, c in other.roots.items():
            roots[a] = roots.get(a, ZERO) + c
        return LieElement(self.basis, [x + y for x, y in zip(self.cartan, other.cartan)], roots)

    def scale(self, c):
        c = as_field(c)
        return LieElement(self.basis, [x * c for x in self.cartan],
                          {a: x * c for a, x in self.roots.items()})

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        if any(x != y for x, y in zip(self.cartan, other.cartan)):
            return False
        keys = set(self.roots) | set(other.roots)
        return all(self.coefficient(a) == other.coefficient(a) for a in keys)

    __hash__ = None

    def __repr__(self):
        parts = [f"{c}*H{i + 1}" for i, c in enumerate(self.cartan) if not c.is_zero()]
        parts += [f"({c})*X{list(a)}" for a, c in ((a, self.roots[a]) for a in self.support())]
        return "LieElement(" + " + ".join(parts or ["0"]) + ")"


def basis_element(basis, root=None, cartan_index=None):
    if root is not None:
        return LieElement(basis, roots={tuple(root): ONE})
    cartan = [ZERO] * basis.rank
    cartan[cartan_index] = ONE
    return LieElement(basis, cartan)


def decompose(m, basis):
    """Coordinates of the matrix m in the Chevalley basis; NotInLieAlgebra otherwise."""
    n = basis.n
    if len(m) != n or any(len(row) != n for row in m):
        raise NotInLieAlgebra(f"expected a {n}x{n} matrix")
    m = [[as_field(x) for x in row] for row in m]
    roots = {}
    for a, (i, j) in basis.pivots.items():
        v = m[i][j]
        if not v.is_zero():
            roots[a] = v / basis.X[a][i][j]
    rows, inv = basis._cartan_solver
    diag = [m[p][p] for p in rows]
    cartan = []
    for r in inv:
        acc = ZERO
        for f, d in zip(r, diag):
            if f and not d.is_zero():
                acc = acc + d * f
        cartan.append(acc)
    out = LieElement(basis, cartan, roots)
    rebuilt = out.matrix
    for i in range(n):
        for j in range(n):
            if rebuilt[i][j] != m[i][j]:
                raise NotInLieAlgebra(
                    f"matrix is not in the span of the Chevalley basis (entry {i},{j})"
                )
    return out


# -- root groups ------------------------------------------------------------
def unipotent(beta, x, basis):
    """U_beta(x) = exp(x X_beta) as a FieldElem matrix (finite sum)."""
    x = as_field(x)
    n = basis.n
    xb = [list(r) for r in basis.X[tuple(beta)]]
    out = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    power = xb
    xk = x
    k = 1
    fact = 1
    while not iszero(power):
        fact *= k
        for i, row in enumerate(power):
            for j, v in enumerate(row):
                if v:
                    out[i][j] = out[i][j] + xk * Fraction(v, fact)
        power = imul(power, xb)
        k += 1
        xk = xk * x
    return out


def ad_unipotent(beta, x, target):
    """Ad(U_beta(x))(target) from the root-string closed form."""
    basis = target.basis
    rs = basis.rs
    beta = tuple(beta)
    x = as_field(x)
    nb = neg(beta)
    cartan = list(target.cartan)
    roots = {}

    def bump(a, c):
        if not c.is_zero():
            roots[a] = roots.get(a, ZERO) + c

    # H_i -> H_i - x <beta, alpha_i> X_beta
    hb = ZERO
    for i, h in enumerate(target.cartan):
        if not h.is_zero():
            hb = hb + h * rs.cartan_integer(beta, simple(i + 1, rs.rank))
    bump(beta, -(x * hb))

    for a, z in target.roots.items():
        if a == beta:
            bump(a, z)
        elif a == nb:
            # X_{-b} -> X_{-b} + x H_b - x^2 X_b
            bump(a, z)
            for i, c in enumerate(rs.coroot_coefficients(beta)):
                if c:
                    cartan[i] = cartan[i] + z * x * c
            bump(beta, -(z * x * x))
        else:
            r, q = rs.root_string(a, beta)
            sign = 1
            xi = ONE
            cur = a
            bump(a, z)
            for i in range(1, q + 1):
                s = basis.structure_constant(beta, cur)
                sign = sign * (1 if s > 0 else -1)
                cur = add(cur, beta)
                xi = xi * x
                bump(cur, z * xi * (sign * comb(r + i, i)))
    return LieElement(basis, cartan, roots)


def ad_unipotent_matrix(beta, x, target):
    """Ad(U_beta(x))(target) by explicit conjugation U M U^{-1}."""
    basis = target.basis
    u = unipotent(beta, x, basis)
    uinv = unipotent(beta, -as_field(x), basis)
    return decompose(mat_mul(mat_mul(u, target.matrix), uinv), basis)


# -- relation suites ----------------------------------------------------------
def bracket_failures(basis):
    """All violated Chevalley relations, as human-readable strings."""
    rs = basis.rs
    bad = []
    for a in rs.roots:
        xa = [list(r) for r in basis.X[a]]
        for i in range(rs.rank):
            want = iscale(xa, rs.cartan_integer(a, simple(i + 1, rs.rank)))
            if bracket([list(r) for r in basis.H[i]], xa) != want:
                bad.append(f"[H_{i + 1}, X_{list(a)}] != <a, a_{i + 1}> X_a")
    for a in rs.positive_roots:
        got = bracket([list(r) for r in basis.X[a]], [list(r) for r in basis.X[neg(a)]])
        if got != basis.H_of(a):
            bad.append(f"[X_{list(a)}, X_-a] != H_a")
    for a in rs.roots:
        for b in rs.roots:
            if a == b or a == neg(b):
                continue
            got = bracket([list(r) for r in basis.X[a]], [list(r) for r in basis.X[b]])
            s = add(a, b)
            if rs.is_root(s):
                r, _ = rs.root_string(b, a)
                try:
                    c = _coefficient(got, [list(r) for r in basis.X[s]])
                except DegenerateInput:
                    bad.append(f"[X_{list(a)}, X_{list(b)}] not a multiple of X_a+b")
                    continue
                if abs(c) != r + 1:
                    bad.append(f"|N_{list(a)},{list(b)}| = {abs(c)} != r + 1 = {r + 1}")
            elif not iszero(got):
                bad.append(f"[X_{list(a)}, X_{list(b)}] != 0")
    return bad


def adjoint_formula_failures(basis, x=None):
    """Pairs (beta, element) where the closed-form adjoint action disagrees with conjugation."""
    from .algebra import tvar
    x = tvar(1) if x is None else x
    rs = basis.rs
    elements = [(f"X{list(a)}", basis_element(basis, root=a)) for a in rs.roots]
    elements += [(f"H{i + 1}", basis_element(basis, cartan_index=i)) for i in range(rs.rank)]
    bad = []
    for beta in rs.roots:
        for name, el in elements:
            if ad_unipotent(beta, x, el) != ad_unipotent_matrix(beta, x, el):
                bad.append(f"beta={list(beta)}, {name}")
    return bad
