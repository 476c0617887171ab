"""Gauge transformations A -> B A B^-1 + B' B^-1 and reduction to normal form.

The reduction works on LieElement coordinates: every gauge factor is a root
group element U_beta(x), whose adjoint action is the closed-form string rule
and whose logarithmic derivative is x' X_beta.  The accumulated matrix is kept
only for the certificate.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    ONE, ZERO, ff_det, field as as_field, identity, inverse, mat_add, mat_derive,
    mat_eq, mat_mul,
)
from .chevalley import LieElement, ad_unipotent, basis_element, unipotent
from .errors import (
    NonTermination, SingularGauge, UnsupportedShape, VerificationFailed,
)
from .roots import (
    add, gamma_chain, height, neg, next_simple, parameter_roots, simple,
    stratum_root,
)


# -- matrix level ---------------------------------------------------------------
def log_derivative(b):
    """B' B^-1; raises SingularGauge when det(B) = 0."""
    inv = inverse(b)
    if inv is None:
        raise SingularGauge("gauge matrix is singular")
    return mat_mul(mat_derive(b), inv)


def gauge_transform(a, b):
    """B A B^-1 + B' B^-1."""
    inv = inverse(b)
    if inv is None:
        raise SingularGauge("gauge matrix is singular")
    return mat_mul(mat_add(mat_mul(b, a), mat_derive(b)), inv)


def is_gauge_equivalent_by(a, b, target):
    """Division-free test of gauge_transform(a, b) == target: B A + B' == target B."""
    return mat_eq(mat_add(mat_mul(b, a), mat_derive(b)), mat_mul(target, b))


# -- certificates -----------------------------------------------------------------
@dataclass(frozen=True)
class Factor:
    kind: str  # "unipotent" or "diagonal"
    matrix: tuple
    root: tuple = None
    x: object = None
    entries: tuple = None

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "unipotent":
            out["root"] = list(self.root)
            out["x"] = str(self.x)
        else:
            out["entries"] = [str(e) for e in self.entries]
        return out


def unipotent_factor(beta, x, basis):
    return Factor("unipotent", tuple(map(tuple, unipotent(beta, x, basis))), tuple(beta), as_field(x))


def diagonal_factor(entries):
    entries = tuple(as_field(e) for e in entries)
    n = len(entries)
    m = tuple(tuple(entries[i] if i == j else ZERO for j in range(n)) for i in range(n))
    return Factor("diagonal", m, entries=entries)


@dataclass
class GaugeRecord:
    """total = F_m ... F_1 for factors [F_1, ..., F_m] in application order."""

    total: list
    factors: list = field(default_factory=list)

    @classmethod
    def identity(cls, n):
        return cls(identity(n), [])

    def then(self, factor):
        """The record for applying `factor` after this one."""
        return GaugeRecord(mat_mul([list(r) for r in factor.matrix], self.total),
                           self.factors + [factor])

    def compose(self, later):
        """This record followed by `later`."""
        return GaugeRecord(mat_mul(later.total, self.total), self.factors + later.factors)

    def product(self):
        n = len(self.total)
        out = identity(n)
        for f in self.factors:
            out = mat_mul([list(r) for r in f.matrix], out)
        return out

    def failures(self, source, target):
        """Reasons this record does not certify gauge_transform(source, total) == target."""
        bad = []
        if not mat_eq(self.product(), self.total):
            bad.append("factor product differs from the recorded total")
        if ff_det(self.total).is_zero():
            bad.append("total gauge matrix is singular")
        elif not is_gauge_equivalent_by(source, self.total, target):
            bad.append("B A + B' != N B")
        return bad

    def to_json(self):
        return {
            "total": [[str(e) for e in row] for row in self.total],
            "factors": [f.to_json() for f in self.factors],
        }


@dataclass
class NormalFormResult:
    source: LieElement
    normal: LieElement
    gauge: GaugeRecord
    specialization: list  # f_i, the coefficient on X_{-gamma_i} carrying t_i

    def failures(self):
        bad = self.gauge.failures(self.source.matrix, self.normal.matrix)
        allowed = _normal_support(self.normal.basis)
        extra = [a for a in self.normal.support() if a not in allowed]
        if extra:
            bad.append(f"normal form has support outside Delta and Gamma-: {extra}")
        if not self.normal.cartan_is_zero():
            bad.append("normal form has a Cartan part")
        if any(self.normal.coefficient(a) != ONE
               for a in self.normal.basis.rs.simple_roots):
            bad.append("simple root coefficients are not all 1")
        return bad

    def check(self):
        bad = self.failures()
        if bad:
            raise VerificationFailed("; ".join(bad))
        return True


def _normal_support(basis):
    rs = basis.rs
    return set(rs.simple_roots) | {neg(g) for g in parameter_roots(rs)}


# -- one root-group step ----------------------------------------------------------
def apply_unipotent(a, beta, x, record):
    """Gauge the LieElement `a` by U_beta(x); returns (new element, new record)."""
    x = as_field(x)
    if x.is_zero():
        return a, record
    out = ad_unipotent(beta, x, a)
    dx = x.derive()
    if not dx.is_zero():
        out = out + basis_element(a.basis, root=beta).scale(dx)
    return out, record.then(unipotent_factor(beta, x, a.basis))


def _check_borel_shape(a):
    """A must be A_Delta + Cartan + negative root spaces."""
    rs = a.basis.rs
    simples = set(rs.simple_roots)
    for r in a.support():
        if rs.is_positive(r) and r not in simples:
            raise UnsupportedShape(f"positive non-simple root {list(r)} in support")
    for s in simples:
        if a.coefficient(s) != ONE:
            raise UnsupportedShape(f"coefficient of X_{list(s)} must be 1")


# -- Cartan clearing ----------------------------------------------------------------
def clear_cartan(a, record=None):
    """Remove the Cartan part by U_{-alpha_j}(x_j), j = 1..l in order."""
    _check_borel_shape(a)
    basis = a.basis
    rs = basis.rs
    record = record or GaugeRecord.identity(basis.n)
    for j in range(rs.rank):
        h = a.cartan[j]
        if h.is_zero():
            continue
        aj = simple(j + 1, rs.rank)
        # Cartan coefficient produced on H_j by Ad(U_{-alpha_j}(1)) on X_{alpha_j}
        kappa = ad_unipotent(neg(aj), ONE, basis_element(basis, root=aj)).cartan[j]
        x = -(h / kappa)
        a, record = apply_unipotent(a, neg(aj), x, record)
        if not a.cartan[j].is_zero():
            raise UnsupportedShape(f"Cartan coefficient {j + 1} did not clear")
    if not a.cartan_is_zero():
        raise UnsupportedShape("Cartan part did not clear")
    return a, record


# -- type A stratum clearing ----------------------------------------------------------
def _in_subsystem(root, k, l):
    return all(c == 0 for c in root[: l - k])


def clear_stratum_step(a, k, j, record=None):
    """Clear the height-j root of stratum k (type A) by one U_beta(x)."""
    basis = a.basis
    rs = basis.rs
    l = rs.rank
    if rs.group_type != "A":
        raise UnsupportedShape("stratum steps are defined for type A")
    if not 1 <= j < k <= l:
        raise UnsupportedShape(f"need 1 <= j < k <= l, got k={k}, j={j}")
    _check_borel_shape(a)
    if not a.cartan_is_zero():
        raise UnsupportedShape("Cartan part must be cleared first")
    gam = {neg(g) for g in gamma_chain(rs)[k].roots}
    for r in a.support():
        if rs.is_positive(r) or r in gam:
            continue
        if not _in_subsystem(r, k, l):
            raise UnsupportedShape(f"{list(r)} lies outside Phi_{k} and Gamma_{k}")
        if not _in_subsystem(r, k - 1, l) and height(r) > -j:
            raise UnsupportedShape(f"stratum {k} root {list(r)} of height < {j} is not clear")
    record = record or GaugeRecord.identity(basis.n)
    alpha = neg(stratum_root(rs, k, j))
    a_s = next_simple(rs, k, j)
    beta = add(alpha, neg(a_s))
    c = basis.structure_constant(beta, a_s)
    x = -(a.coefficient(alpha) / c)
    out, record = apply_unipotent(a, beta, x, record)
    if not out.coefficient(alpha).is_zero():
        raise UnsupportedShape(f"coefficient of {list(alpha)} did not clear")
    return out, record


# -- general height-wise clearing -------------------------------------------------------
def _rational_solve(m, rhs):
    """Solve the square rational system m x = rhs over FieldElem right-hand sides.

    Returns None if m is singular.
    """
    n = len(m)
    rows = [[Fraction(v) for v in r] + [b] for r, b in zip(m, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c]), None)
        if p is None:
            return None
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [v / piv for v in rows[c][:n]] + [rows[c][n] * (1 / piv)]
        for r in range(n):
            f = rows[r][c]
            if r != c and f:
                rows[r] = [u - f * v for u, v in zip(rows[r][:n], rows[c][:n])] + \
                          [rows[r][n] - rows[c][n] * f]
    return [r[n] for r in rows]


def _potential(a, keep):
    return sum(-height(r) for r in a.support() if not a.basis.rs.is_positive(r) and r not in keep)


def clear_height(a, h, keep, record):
    """Clear all non-kept roots of height -h using root groups of height -(h+1).

    The height -h coefficients change only at first order, through the
    simple-root part A_Delta, so the update is one rational linear solve.
    """
    basis = a.basis
    rs = basis.rs
    targets = [r for r in rs.roots_of_height(-h) if r not in keep]
    if not any(not a.coefficient(r).is_zero() for r in targets):
        return a, record
    sources = list(rs.roots_of_height(-(h + 1)))
    m = [[sum(basis.structure_constant(b, s) for s in rs.simple_roots if add(b, s) == r)
          for b in sources] for r in targets]
    if len(targets) != len(sources):
        return a, record
    xs = _rational_solve(m, [-a.coefficient(r) for r in targets])
    if xs is None:
        return a, record
    for b, x in zip(sources, xs):
        a, record = apply_unipotent(a, b, x, record)
    return a, record


def reduce_to_normal_form(a, method=None):
    """Gauge `a` into A_Delta + sum f_i X_{-gamma_i}; returns a NormalFormResult."""
    basis = a.basis
    rs = basis.rs
    source = a
    method = method or ("strata" if rs.group_type == "A" else "height")
    a, record = clear_cartan(a)
    proots = parameter_roots(rs)
    keep = {neg(g) for g in proots}
    if method == "strata":
        if rs.group_type != "A":
            raise UnsupportedShape("stratum elimination needs type A")
        for k in range(rs.rank, 0, -1):
            for j in range(1, k):
                a, record = clear_stratum_step(a, k, j, record)
    else:
        top = height(rs.highest_root)
        bound = 2 * len(rs.positive_roots)
        last = _potential(a, keep)
        passes = 0
        while last:
            passes += 1
            if passes > bound:
                raise NonTermination(f"no normal form after {bound} passes")
            for h in range(1, top):
                a, record = clear_height(a, h, keep, record)
            now = _potential(a, keep)
            if now and now >= last:
                raise NonTermination("reduction pass made no progress")
            last = now
    values = [a.coefficient(neg(g)) for g in proots]
    return NormalFormResult(source, a, record, values)
