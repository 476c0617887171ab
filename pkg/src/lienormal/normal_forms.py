"""Parameter matrices, scalar parameter equations and their verification.

A scalar equation sum a_i y^(i) is checked against a connection matrix A by
the cyclic-vector rows c_0 = e_1, c_{k+1} = c_k A + c_k': the equation is
the relation of A iff sum a_i c_i = 0, and det(c_0, ..., c_{n-1}) != 0 shows
that no relation of lower order exists.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import comb

from .algebra import ONE, ZERO, ff_det, field, tvar, zvar
from .chevalley import LieElement, basis_element, chevalley_basis, decompose
from .errors import OutOfScope, PreconditionViolated, SingularGauge, VerificationFailed
from .gauge import GaugeRecord, diagonal_factor, reduce_to_normal_form
from .roots import (
    G2_GAMMA_CANDIDATES, build_root_system, check_rank, neg, parameter_roots,
)


# -- linear differential operators -------------------------------------------------
class DiffOp:
    """sum c_k D^k with coefficients on the left; composition follows Leibniz."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: field(c) for k, c in (coeffs or {}).items() if not field(c).is_zero()}

    @classmethod
    def d(cls, k=1):
        return cls({k: ONE})

    @classmethod
    def mul(cls, f):
        return cls({0: f})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return DiffOp(out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DiffOp({k: v * c for k, v in self.coeffs.items()})

    def __matmul__(self, other):
        """Composition self o other."""
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                # D^i b = sum_k C(i, k) b^(k) D^(i-k)
                bk = b
                for k in range(i + 1):
                    if bk.is_zero():
                        break
                    key = i - k + j
                    out[key] = out.get(key, ZERO) + a * bk * comb(i, k)
                    bk = bk.derive()
        return DiffOp(out)

    def order(self):
        return max(self.coeffs, default=-1)

    def to_ode(self):
        n = self.order()
        return ScalarODE([self.coeffs.get(k, ZERO) for k in range(n + 1)])


def _d(k):
    return DiffOp.d(k)


def _t(i):
    return DiffOp.mul(tvar(i))


# -- scalar equations ---------------------------------------------------------
@dataclass
class ScalarODE:
    coeffs: list  # a_0, ..., a_n

    def __post_init__(self):
        self.coeffs = [field(c) for c in self.coeffs]
        if not self.coeffs or self.coeffs[-1].is_zero():
            raise ValueError("leading coefficient must be nonzero")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def scale_params(self, eps):
        return ScalarODE([c.scale_params(eps) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, ScalarODE) and len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __str__(self):
        n = self.order
        parts = []
        for k in [n] + list(range(n)):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            parts.append(_term(c, _y(k)))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else ("-" + text[2:] if text.startswith("- ") else text)


def _y(k):
    return "y" + "'" * k if k <= 3 else f"y^({k})"


def _term(c, y):
    if c.is_constant():
        v = c.constant_value()
        sign = "-" if v < 0 else "+"
        v = abs(v)
        return f"{sign} {y}" if v == 1 else f"{sign} {v}*{y}"
    if c.is_polynomial() and len(c.num.terms) == 1:
        s = str(c)
        if s.startswith("-"):
            return f"- {s[1:]}*{y}"
        return f"+ {s}*{y}"
    return f"+ ({c})*{y}"


def _template(group_type, l):
    if group_type == "A":
        op = _d(l + 1)
        for i in range(1, l + 1):
            op = op - _t(i) @ _d(i - 1)
        return op
    if group_type == "C":
        op = _d(2 * l)
        for i in range(1, l + 1):
            op = op - (_d(l - i) @ _t(i) @ _d(l - i)).scale((-1) ** (i - 1))
        return op
    if group_type == "B":
        op = _d(2 * l + 1)
        for i in range(1, l + 1):
            inner = _d(l - i) @ _t(i) @ _d(l + 1 - i) + _d(l + 1 - i) @ _t(i) @ _d(l - i)
            op = op - inner.scale((-1) ** (i - 1))
        return op
    if group_type == "G2":
        d1 = _d(1)
        return (_d(7) + (_t(1) @ d1).scale(2) + (d1 @ _t(1)).scale(2)
                + (d1 @ _t(2) @ _d(4)).scale(2) + _d(4) @ _t(2) @ d1
                - (d1 @ _t(2) @ d1 @ _t(2) @ d1).scale(2))
    raise OutOfScope(f"no scalar template for type {group_type}")


def expand_parameter_equation(group_type, rank):
    """The monic scalar parameter equation for (type, rank), Leibniz-expanded."""
    check_rank(group_type, rank)
    if group_type == "D":
        raise OutOfScope(
            "the scalar equation for type D depends on substitutions that are not "
            "constructed here; only the parameter matrix is available"
        )
    return _template(group_type, rank).to_ode()


# -- parameter matrices -------------------------------------------------------
def a_delta(basis):
    return LieElement(basis, roots={s: ONE for s in basis.rs.simple_roots})


def build_parameter_matrix(group_type, rank, g2_candidate=None, basis=None):
    """A(t) = A_Delta + sum t_i X_{-gamma_i}."""
    basis = basis or chevalley_basis(group_type, rank)
    roots = {s: ONE for s in basis.rs.simple_roots}
    for i, g in enumerate(parameter_roots(basis.rs, g2_candidate), start=1):
        roots[neg(g)] = tvar(i)
    return LieElement(basis, roots=roots)


def companion(bottom):
    """Companion matrix with ones on the superdiagonal and the given bottom row."""
    n = len(bottom)
    m = [[ONE if j == i + 1 else ZERO for j in range(n)] for i in range(n)]
    m[-1] = [field(b) for b in bottom]
    return m


# -- annihilator certificates --------------------------------------------------
def cyclic_rows(a, count):
    """c_0 = e_1, c_{k+1} = c_k A + c_k' for k < count."""
    n = len(a)
    nz = [[(j, v) for j, v in enumerate(row) if not v.is_zero()] for row in a]
    rows = [[ONE] + [ZERO] * (n - 1)]
    for _ in range(count):
        prev = rows[-1]
        nxt = [p.derive() for p in prev]
        for i, p in enumerate(prev):
            if p.is_zero():
                continue
            for j, v in nz[i]:
                nxt[j] = nxt[j] + p * v
        rows.append(nxt)
    return rows


@dataclass
class AnnihilatorCertificate:
    row_vectors: list
    combo_residual: list
    rank_witness: object
    eps: tuple = (1,)
    ode: ScalarODE = None
    tried: list = dc_field(default_factory=list)

    @property
    def valid(self):
        return all(r.is_zero() for r in self.combo_residual) and not self.rank_witness.is_zero()

    def summary(self):
        return {
            "valid": self.valid,
            "eps": [str(e) for e in self.eps],
            "rank_witness": str(self.rank_witness),
            "order": len(self.row_vectors) - 1,
        }


def _residual(rows, ode):
    n = len(rows[0])
    out = [ZERO] * n
    for a, c in zip(ode.coeffs, rows):
        if a.is_zero():
            continue
        for j in range(n):
            if not c[j].is_zero():
                out[j] = out[j] + a * c[j]
    return out


def _params(ode):
    idx = set()
    for c in ode.coeffs:
        for p in (c.num, c.den):
            idx |= {v[1] for v in p.variables() if v[0] == 1}
    return sorted(idx)


def verify_annihilator(a, ode, sign_search=False, scales=(1, -1)):
    """Certificate that `ode` is the cyclic-vector relation of the matrix `a`.

    With sign_search, t_i -> eps_i t_i is tried in the equation for every
    eps in scales^l (all-ones first); the first eps that gives a zero residual
    is recorded.  Raises VerificationFailed when no eps works.
    """
    m = a.matrix if isinstance(a, LieElement) else [[field(x) for x in r] for r in a]
    n = len(m)
    if ode.order != n:
        raise VerificationFailed(f"equation order {ode.order} != matrix size {n}")
    rows = cyclic_rows(m, n)
    witness = ff_det(rows[:n])
    if witness.is_zero():
        raise VerificationFailed("e_1 is not a cyclic vector (rank witness is zero)")
    params = _params(ode)
    l = max(params, default=0)
    choices = [tuple([1] * l)]
    if sign_search:
        ordered = [1] + [s for s in scales if s != 1]
        choices = [tuple(e) for e in product(ordered, repeat=l)]
    tried = []
    for eps in choices:
        trial = ode.scale_params(dict(enumerate(eps, start=1))) if l else ode
        res = _residual(rows, trial)
        tried.append(eps)
        if all(r.is_zero() for r in res):
            return AnnihilatorCertificate(rows, res, witness, eps, trial, tried)
    raise VerificationFailed(
        f"no parameter scaling among {len(tried)} candidates annihilates the matrix"
    )


def search_g2_gamma(sign_search=True, scales=(1, -1)):
    """Check the order-7 G2 equation for each Gamma candidate; {name: certificate or None}."""
    ode = expand_parameter_equation("G2", 2)
    basis = chevalley_basis("G2", 2)
    out = {}
    for name in sorted(G2_GAMMA_CANDIDATES):
        a = build_parameter_matrix("G2", 2, name, basis=basis)
        try:
            out[name] = verify_annihilator(a, ode, sign_search, scales)
        except VerificationFailed:
            out[name] = None
    return out


def derived_equation(a):
    """The monic relation sum a_i c_i = 0 solved from the cyclic rows (diagnostic)."""
    m = a.matrix if isinstance(a, LieElement) else a
    n = len(m)
    rows = cyclic_rows(m, n)
    aug = [[rows[i][j] for i in range(n)] + [-rows[n][j]] for j in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
        if p is None:
            raise VerificationFailed("e_1 is not a cyclic vector")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            f = aug[r][c]
            if r != c and not f.is_zero():
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return ScalarODE([aug[i][n] for i in range(n)] + [ONE])


# -- specialization demos --------------------------------------------------------
def mitschi_singer_matrix(group_type, rank, h, basis=None):
    """A_0 + z^2 A_1 with A_0 = sum (X_{alpha_i} + X_{-alpha_i}), A_1 = sum h_i H_i."""
    check_rank(group_type, rank)
    if len(h) != rank:
        raise ValueError(f"need {rank} Cartan coordinates, got {len(h)}")
    basis = basis or chevalley_basis(group_type, rank)
    z2 = zvar() * zvar()
    roots = {}
    for s in basis.rs.simple_roots:
        roots[s] = ONE
        roots[neg(s)] = ONE
    return LieElement(basis, [z2 * Fraction(c) for c in h], roots)


def mitschi_singer_reduction(group_type, rank, h):
    return reduce_to_normal_form(mitschi_singer_matrix(group_type, rank, h))


@dataclass
class ChainResult:
    a: list
    a1: list
    a2: list
    final: LieElement
    gauge: GaugeRecord
    normal_form: object
    shape_failures: list

    def failures(self):
        bad = list(self.shape_failures)
        bad += self.gauge.failures(companion(self.a), self.final.matrix)
        bad += self.normal_form.failures()
        return bad


def _diag_gauge(m, d):
    """D M D^-1 + D' D^-1 for a diagonal D given by its entries."""
    n = len(m)
    inv = [x.inverse() for x in d]
    return [[d[i] * m[i][j] * inv[j] + (d[i].derive() * inv[i] if i == j else ZERO)
             for j in range(n)] for i in range(n)]


def _a1_shape(a, f):
    n = len(a)
    l = n - 1
    want = [[ZERO] * n for _ in range(n)]
    for i in range(l - 1):
        want[i][i + 1] = ONE
    want[l - 1][l] = f
    for j in range(l):
        want[l][j] = a[j] / f
    return want


def _a2_shape(a, f):
    n = len(a)
    l = n - 1
    c = f.derive() / (f * (l + 1))
    want = [[ZERO] * n for _ in range(n)]
    for i in range(l):
        want[i][i] = -c
        want[i][i + 1] = ONE
    for j in range(l):
        want[l][j] = a[j]
    want[l][l] = c * l
    return want


def _shape_diff(got, want, label):
    return [f"{label}[{i}][{j}]: {got[i][j]} != {want[i][j]}"
            for i in range(len(got)) for j in range(len(got))
            if got[i][j] != want[i][j]]


def sl_genericity_chain(a, f, g):
    """Companion(a) -> A_1 -> A_2 -> zero-corner companion, with every step certified.

    `a` holds a_1..a_{l+1} (bottom row), f solves f'/f = a_{l+1} and
    g^(l+1) = 1/f.
    """
    a = [field(x) for x in a]
    f, g = field(f), field(g)
    l = len(a) - 1
    if l < 1:
        raise ValueError("need at least a_1 and a_2")
    if f.is_zero():
        raise SingularGauge("f must be nonzero")
    if f.derive() / f != a[-1]:
        raise PreconditionViolated("f'/f differs from a_{l+1}")
    if g ** (l + 1) != f.inverse():
        raise PreconditionViolated("g^(l+1) differs from 1/f")
    basis = chevalley_basis("A", l)
    start = companion(a)
    d1 = [ONE] * l + [f.inverse()]
    a1 = _diag_gauge(start, d1)
    d2 = [g] * l + [g ** (-l)]
    a2 = _diag_gauge(a1, d2)
    bad = _shape_diff(a1, _a1_shape(a, f), "A1") + _shape_diff(a2, _a2_shape(a, f), "A2")
    record = GaugeRecord.identity(l + 1).then(diagonal_factor(d1)).then(diagonal_factor(d2))
    nf = reduce_to_normal_form(decompose(a2, basis))
    record = record.compose(nf.gauge)
    return ChainResult(a, a1, a2, nf.normal, record, nf, bad)
