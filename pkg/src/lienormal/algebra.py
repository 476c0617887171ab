"""Exact differential algebra over the rationals.

Polynomials are sparse maps from monomials to rational coefficients.  A
monomial is a sorted tuple of ``(variable, exponent)`` pairs; variables are
small tuples so that the natural tuple order gives ``z < t1 < t1' < ... < t2``:

* ``Z = (0, 0, 0)`` is the rational-function variable ``z`` with ``z' = 1``;
* ``(1, i, j)`` is the j-th derivative of the differential indeterminate t_i.

T-variables are created on demand, so differentiation can always produce
``t_i^(j+1)`` without a declared variable universe.

Fractions (:class:`FieldElem`) are normalized cheaply: constant denominators
are folded into the numerator, common monomial factors are cancelled, a
univariate GCD is taken when numerator and denominator share a single
variable, and the integer content is stripped.  Anything else is stored unreduced and
compared by cross-multiplication.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DegenerateInput, ParseError

Z = (0, 0, 0)


def T(index, order=0):
    """Variable key for the ``order``-th derivative of t_index."""
    if index < 1 or order < 0:
        raise ValueError(f"bad t-variable t{index} of order {order}")
    return (1, index, order)


def var_name(v):
    if v == Z:
        return "z"
    return f"t{v[1]}" + "'" * v[2]


@lru_cache(maxsize=None)
def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _d_var(v):
    if v == Z:
        return None
    return (1, v[1], v[2] + 1)


@lru_cache(maxsize=None)
def _mono_derive(m):
    """Derivative of a monomial as a tuple of (integer coefficient, monomial)."""
    out = []
    for k, (v, e) in enumerate(m):
        rest = dict(m)
        if e == 1:
            del rest[v]
        else:
            rest[v] = e - 1
        dv = _d_var(v)
        if dv is not None:
            rest[dv] = rest.get(dv, 0) + 1
        out.append((e, tuple(sorted(rest.items()))))
    return tuple(out)


def _mono_deg(m):
    return sum(e for _, e in m)


def _mono_div(a, b):
    """a / b as a monomial, or None when b does not divide a."""
    d = dict(a)
    for v, e in b:
        have = d.get(v, 0)
        if have < e:
            return None
        if have == e:
            del d[v]
        else:
            d[v] = have - e
    return tuple(sorted(d.items()))


class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms:
            self.terms = {m: c for m, c in terms.items() if c != 0}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v, power=1):
        return cls._raw({((v, power),) if power else (): Fraction(1)})

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(()) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get((), 0))

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def degree(self):
        return max((_mono_deg(m) for m in self.terms), default=-1)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO_P
        if len(other.terms) == 1 and () in other.terms:
            return self.scale(other.terms[()])
        if len(self.terms) == 1 and () in self.terms:
            return other.scale(self.terms[()])
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        if not c:
            return ZERO_P
        if c == 1:
            return self
        return Poly._raw({m: v * c for m, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer")
        result, base = ONE_P, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def derive(self):
        out = {}
        for m, c in self.terms.items():
            for k, dm in _mono_derive(m):
                out[dm] = out.get(dm, 0) + c * k
        return Poly._raw({m: c for m, c in out.items() if c})

    def scale_params(self, eps):
        """Substitute t_i -> eps[i] * t_i (eps values are +-1 or rationals)."""
        out = {}
        for m, c in self.terms.items():
            f = c
            for v, e in m:
                if v != Z and v[1] in eps:
                    f = f * Fraction(eps[v[1]]) ** e
            out[m] = f
        return Poly._raw(out)

    # -- division ---------------------------------------------------------
    def exact_div(self, other):
        """Quotient of an exact polynomial division; raises ArithmeticError otherwise."""
        if other.is_zero():
            raise DegenerateInput("polynomial division by zero")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        if self.is_zero():
            return ZERO_P
        order = sorted({v for m in list(self.terms) + list(other.terms) for v, _ in m})

        def key(m):
            d = dict(m)
            return tuple(d.get(v, 0) for v in order)

        lm_d = max(other.terms, key=key)
        lc_d = other.terms[lm_d]
        rem = dict(self.terms)
        quot = {}
        while rem:
            lm = max(rem, key=key)
            qm = _mono_div(lm, lm_d)
            if qm is None:
                raise ArithmeticError("inexact polynomial division")
            qc = rem[lm] / lc_d
            quot[qm] = quot.get(qm, 0) + qc
            for m, c in other.terms.items():
                mm = _mono_mul(m, qm)
                s = rem.get(mm, 0) - c * qc
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Poly._raw({m: c for m, c in quot.items() if c})

    def monomial_content(self):
        """Largest monomial dividing every term."""
        if not self.terms:
            return ()
        it = iter(self.terms)
        common = dict(next(it))
        for m in it:
            d = dict(m)
            for v in list(common):
                e = d.get(v, 0)
                if e == 0:
                    del common[v]
                elif e < common[v]:
                    common[v] = e
            if not common:
                break
        return tuple(sorted(common.items()))

    def leading_coeff(self):
        """Coefficient of the first term in printing order."""
        return self.terms[_print_order(self.terms)[0]]

    # -- printing ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, m in enumerate(_print_order(self.terms)):
            c = Fraction(self.terms[m])
            neg = c < 0
            c = -c if neg else c
            factors = [
                var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m
            ]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            body = "*".join(factors)
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def _print_order(terms):
    order = sorted({v for m in terms for v, _ in m})

    def key(m):
        d = dict(m)
        return (_mono_deg(m), tuple(d.get(v, 0) for v in order))

    return sorted(terms, key=key, reverse=True)


ZERO_P = Poly._raw({})
ONE_P = Poly._raw({(): Fraction(1)})


# -- univariate gcd ---------------------------------------------------------
def _to_dense(p, v):
    deg = 0
    for m in p.terms:
        if m:
            deg = max(deg, m[0][1])
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[0][1] if m else 0] = Fraction(c)
    return coeffs


def _from_dense(coeffs, v):
    return Poly({((v, k),) if k else (): c for k, c in enumerate(coeffs) if c})


def _dense_rem(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] -= q * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def univariate_gcd(p, q):
    """Monic gcd of two polynomials in (at most) one common variable."""
    vs = set(p.variables()) | set(q.variables())
    if len(vs) > 1:
        raise ValueError("univariate_gcd needs polynomials in one variable")
    if p.is_zero():
        return q if q.is_zero() else q.scale(1 / q.leading_coeff())
    if not vs:
        return ONE_P
    (v,) = vs
    a, b = _to_dense(p, v), _to_dense(q, v)
    while b and any(b):
        a, b = b, _dense_rem(a, b)
    while a and a[-1] == 0:
        a.pop()
    lead = a[-1]
    return _from_dense([c / lead for c in a], v)


# -- fractions ----------------------------------------------------------------
class FieldElem:
    """Element of Q(z, t1, t1', ...) stored as numerator / denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._coerce(num) if not isinstance(num, Poly) else num
        if den is None:
            self.num, self.den = num, ONE_P
            return
        den = Poly._coerce(den) if not isinstance(den, Poly) else den
        if den.is_zero():
            raise DegenerateInput("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _make(cls, num, den):
        f = cls.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def const(cls, c):
        return cls._make(Poly.const(c), ONE_P)

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, (int, Fraction)):
            return FieldElem.const(x)
        if isinstance(x, Poly):
            return FieldElem._make(x, ONE_P)
        return NotImplemented

    def __add__(self, other):
        other = FieldElem._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return FieldElem._make(self.num + other.num, ONE_P)
        if self.den == other.den:
            return FieldElem(self.num + other.num, self.den)
        return FieldElem(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._make(-self.num, self.den)

    def __sub__(self, other):
        other = FieldElem._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return FieldElem._make(self.num.scale(other), self.den)
        other = FieldElem._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return FieldElem._make(self.num * other.num, ONE_P)
        return FieldElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DegenerateInput("division by zero")
            return FieldElem._make(self.num.scale(Fraction(1) / other), self.den)
        other = FieldElem._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DegenerateInput("division by zero")
        return FieldElem(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return FieldElem._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return ONE / (self ** (-n))
        return FieldElem(self.num ** n, self.den ** n) if not self.den.is_one() \
            else FieldElem._make(self.num ** n, ONE_P)

    def inverse(self):
        return ONE / self

    def __eq__(self, other):
        other = FieldElem._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def derive(self):
        if self.den.is_one():
            return FieldElem._make(self.num.derive(), ONE_P)
        return FieldElem(
            self.num.derive() * self.den - self.num * self.den.derive(),
            self.den * self.den,
        )

    def scale_params(self, eps):
        return FieldElem(self.num.scale_params(eps), self.den.scale_params(eps))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        (m, c), = self.den.terms.items() if len(self.den.terms) == 1 else ((None, 0),)
        if not (c == 1 and m is not None and len(m) == 1):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"FieldElem({self})"


def _normalize(num, den):
    if num.is_zero():
        return ZERO_P, ONE_P
    if den.is_constant():
        return num.scale(1 / den.constant_value()), ONE_P
    common = _mono_gcd(num.monomial_content(), den.monomial_content())
    if common:
        num = Poly._raw({_mono_div(m, common): c for m, c in num.terms.items()})
        den = Poly._raw({_mono_div(m, common): c for m, c in den.terms.items()})
        if den.is_constant():
            return num.scale(1 / den.constant_value()), ONE_P
    if len(set(num.variables()) | set(den.variables())) == 1:
        g = univariate_gcd(num, den)
        if not g.is_one():
            num, den = num.exact_div(g), den.exact_div(g)
            if den.is_constant():
                return num.scale(1 / den.constant_value()), ONE_P
    return _strip_content(num, den)


def _strip_content(num, den):
    """Scale to coprime integer coefficients with a positive leading denominator term."""
    coeffs = [Fraction(c) for c in num.terms.values()] + \
        [Fraction(c) for c in den.terms.values()]
    mult = 1
    for c in coeffs:
        mult = mult * c.denominator // gcd(mult, c.denominator)
    g = integer_gcd(c * mult for c in coeffs)
    factor = Fraction(mult, g)
    if den.leading_coeff() < 0:
        factor = -factor
    if factor == 1:
        return num, den
    return num.scale(factor), den.scale(factor)


def _mono_gcd(a, b):
    db = dict(b)
    out = []
    for v, e in a:
        if v in db:
            out.append((v, min(e, db[v])))
    return tuple(out)


ZERO = FieldElem._make(ZERO_P, ONE_P)
ONE = FieldElem._make(ONE_P, ONE_P)


def field(x):
    """Coerce an int, Fraction, Poly, str or FieldElem to a FieldElem."""
    if isinstance(x, str):
        return parse(x)
    f = FieldElem._coerce(x)
    if f is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} to a field element")
    return f


def zvar():
    return FieldElem._make(Poly.var(Z), ONE_P)


def tvar(index, order=0):
    return FieldElem._make(Poly.var(T(index, order)), ONE_P)


def derive(x):
    """Derivation on Poly or FieldElem: d/dz on z and t_i^(j) -> t_i^(j+1)."""
    return x.derive()


# -- expression grammar -----------------------------------------------------
def _tokenize(text):
    tokens = []
    k, n = 0, len(text)
    while k < n:
        ch = text[k]
        if ch.isspace():
            k += 1
        elif ch.isdigit():
            j = k
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[k:j])))
            k = j
        elif ch == "z":
            tokens.append(("var", Z))
            k += 1
        elif ch == "t":
            j = k + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == k + 1:
                raise ParseError(f"expected index after 't' at position {k}")
            index = int(text[k + 1:j])
            order = 0
            while j < n and text[j] == "'":
                order += 1
                j += 1
            if index < 1:
                raise ParseError(f"t-index must be positive at position {k}")
            tokens.append(("var", T(index, order)))
            k = j
        elif ch in "+-*/^()":
            tokens.append((ch, None))
            k += 1
        else:
            raise ParseError(f"unexpected character {ch!r} at position {k}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, got {tok[0]!r}")
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp = self.take("int")[1]
            return base ** (sign * exp)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return FieldElem.const(val)
        if kind == "var":
            return FieldElem._make(Poly.var(val), ONE_P)
        if kind == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected token {kind!r}")


def parse(text):
    """Parse the textual expression grammar into a FieldElem."""
    p = _Parser(text)
    if p.peek() == "end":
        raise ParseError("empty expression")
    value = p.expr()
    if p.peek() != "end":
        raise ParseError(f"trailing input at token {p.pos}")
    return value


# -- matrices over FieldElem --------------------------------------------------
def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n, m=None):
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def as_field_matrix(rows):
    return [[field(x) for x in row] for row in rows]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = a[i]
        nz = [(j, row[j]) for j in range(k) if not row[j].is_zero()]
        out_row = []
        for c in range(m):
            acc = ZERO
            for j, x in nz:
                y = b[j][c]
                if not y.is_zero():
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_derive(a):
    return [[x.derive() for x in row] for row in a]


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a):
    return all(x.is_zero() for row in a for x in row)


def trace(a):
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def transpose(a):
    return [list(col) for col in zip(*a)]


def _bareiss(m):
    """Determinant of a square Poly matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return ONE_P
    m = [list(row) for row in m]
    sign = 1
    prev = ONE_P
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO_P
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                v = m[i][j] * pivot - mik * m[k][j]
                m[i][j] = v.exact_div(prev) if not prev.is_one() else v
            m[i][k] = ZERO_P
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def ff_det(a):
    """Exact determinant: clear denominators row-wise, then Bareiss."""
    rows = []
    scale = ONE_P
    for row in a:
        dens = []
        for x in row:
            if not x.den.is_one() and x.den not in dens:
                dens.append(x.den)
        if not dens:
            rows.append([x.num for x in row])
            continue
        new_row = []
        for x in row:
            # product of the row's distinct denominators other than x's own
            factor = ONE_P
            for d in dens:
                if d != x.den:
                    factor = factor * d
            new_row.append(x.num * factor)
        rows.append(new_row)
        for d in dens:
            scale = scale * d
    det = _bareiss(rows)
    if scale.is_one():
        return FieldElem._make(det, ONE_P)
    return FieldElem(det, scale)


def minor(a, i, j):
    return [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]


def adjugate(a):
    n = len(a)
    if n == 1:
        return [[ONE]]
    adj = zeros(n)
    for i in range(n):
        for j in range(n):
            d = ff_det(minor(a, i, j))
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def inverse(a):
    """Exact inverse as adjugate / determinant; None when singular."""
    det = ff_det(a)
    if det.is_zero():
        return None
    adj = adjugate(a)
    if det == ONE:
        return adj
    return [[x / det for x in row] for row in adj]


def mat_str(a):
    return [[str(x) for x in row] for row in a]


def integer_gcd(values):
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
