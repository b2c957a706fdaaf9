"""Exact rational functions in the two coupling variables k and kp over Q.

Polynomials are dicts mapping exponent pairs (deg_k, deg_kp) to Fraction
coefficients.  RatFunc keeps num/den coprime with the denominator monic under
graded lex order (k > kp), so equal values have identical representations.
"""
from __future__ import annotations

from fractions import Fraction

Monomial = tuple  # (deg_k, deg_kp)


class EvaluationError(ZeroDivisionError):
    """Substitution point lies on the denominator's zero set."""


def _grlex_key(m):
    return (m[0] + m[1], m[0])


class Poly:
    """Polynomial in k, kp with Fraction coefficients (internal to RatFunc)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c if isinstance(c, Fraction) else Fraction(c)

    @classmethod
    def const(cls, c):
        p = cls.__new__(cls)
        c = c if isinstance(c, Fraction) else Fraction(c)
        p.terms = {(0, 0): c} if c else {}
        return p

    @classmethod
    def var(cls, name):
        p = cls.__new__(cls)
        p.terms = {(1, 0) if name == "k" else (0, 1): Fraction(1)}
        return p

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0, 0): Fraction(1)}

    def is_const(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def const_value(self):
        return self.terms.get((0, 0), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        p = Poly.__new__(Poly)
        p.terms = res
        return p

    def __sub__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        p = Poly.__new__(Poly)
        p.terms = res
        return p

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __mul__(self, other):
        res = {}
        for (a, b), c1 in self.terms.items():
            for (d, e), c2 in other.terms.items():
                m = (a + d, b + e)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        p = Poly.__new__(Poly)
        p.terms = res
        return p

    def scale(self, c):
        if not c:
            return Poly.const(0)
        p = Poly.__new__(Poly)
        p.terms = {m: c * v for m, v in self.terms.items()}
        return p

    def __pow__(self, n):
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def lead(self):
        """Leading (monomial, coeff) in graded lex order with k > kp."""
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def degree(self, var_index):
        if not self.terms:
            return -1
        return max(m[var_index] for m in self.terms)

    def evaluate(self, kv, kpv):
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c * kv**a * kpv**b
        return total

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def _divmonomial(m1, m2):
    a, b = m1[0] - m2[0], m1[1] - m2[1]
    if a < 0 or b < 0:
        return None
    return (a, b)


def poly_divexact(a, b):
    """Exact division a / b; raises ArithmeticError if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if b.is_const():
        return a.scale(1 / b.const_value())
    quo = {}
    rem = dict(a.terms)
    bm, bc = b.lead()
    while rem:
        m = max(rem, key=_grlex_key)
        qm = _divmonomial(m, bm)
        if qm is None:
            raise ArithmeticError("inexact polynomial division")
        qc = rem[m] / bc
        quo[qm] = qc
        for m2, c2 in b.terms.items():
            mm = (qm[0] + m2[0], qm[1] + m2[1])
            s = rem.get(mm, 0) - qc * c2
            if s:
                rem[mm] = s
            elif mm in rem:
                del rem[mm]
    return Poly(quo)


# --- gcd machinery: primitive PRS over Z after clearing denominators ---
from math import gcd as _int_gcd


def _zuni_trim(u):
    while u and not u[-1]:
        u.pop()
    return u


def _zuni_mul(u, v):
    if not u or not v:
        return []
    res = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                res[i + j] += a * b
    return _zuni_trim(res)


def _zuni_primitive(u):
    c = 0
    for x in u:
        c = _int_gcd(c, x)
        if c == 1:
            break
    if c > 1:
        u = [x // c for x in u]
    if u and u[-1] < 0:
        u = [-x for x in u]
    return u


def _zuni_prem(u, v):
    """Pseudo-remainder of integer coefficient lists."""
    r = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(r) - 1 >= dv and r:
        lr = r[-1]
        off = len(r) - 1 - dv
        r = [x * lv for x in r]
        for i, c in enumerate(v):
            r[off + i] -= lr * c
        _zuni_trim(r)
    return r


def _zuni_gcd(u, v):
    u = _zuni_primitive(_zuni_trim(list(u)))
    v = _zuni_primitive(_zuni_trim(list(v)))
    if not u:
        return v
    if not v:
        return u
    if len(u) < len(v):
        u, v = v, u
    while v:
        r = _zuni_prem(u, v)
        u, v = v, _zuni_primitive(r)
    return u


def _zuni_divexact(u, v):
    """Exact division of integer lists (v divides u over Z)."""
    if not u:
        return []
    if len(v) == 1:
        d = v[0]
        return [x // d for x in u]
    q = [0] * (len(u) - len(v) + 1)
    r = list(u)
    for pos in range(len(q) - 1, -1, -1):
        top = r[pos + len(v) - 1]
        if top % v[-1]:
            raise ArithmeticError("inexact integer polynomial division")
        c = top // v[-1]
        q[pos] = c
        if c:
            for i, b in enumerate(v):
                r[pos + i] -= c * b
    if any(r):
        raise ArithmeticError("inexact integer polynomial division")
    return _zuni_trim(q)


def _poly_to_int_kcoeffs(p):
    """Clear denominators; return dict deg_k -> integer kp-coefficient list."""
    denlcm = 1
    for c in p.terms.values():
        d = c.denominator
        denlcm = denlcm * d // _int_gcd(denlcm, d)
    out = {}
    for (a, b), c in p.terms.items():
        u = out.setdefault(a, {})
        u[b] = int(c * denlcm)
    return {a: _zuni_trim([u.get(i, 0) for i in range(max(u) + 1)])
            for a, u in out.items()}


def _zcont_k(d):
    """(integer content, primitive kp-poly content) over all k-coefficients."""
    cint = 0
    for u in d.values():
        for x in u:
            cint = _int_gcd(cint, x)
        if cint == 1:
            break
    g = []
    for u in d.values():
        g = _zuni_gcd(g, u)
        if len(g) == 1:
            break
    return (cint if cint else 1), g


def _zpp_k(d, cont):
    cint, g = cont
    trivial_int = cint == 1
    trivial_poly = len(g) == 1 and g[0] == 1
    if trivial_int and trivial_poly:
        return d
    out = {}
    for a, u in d.items():
        if not trivial_int:
            u = [x // cint for x in u]
        if not trivial_poly:
            u = _zuni_divexact(u, g)
        out[a] = u
    return out


def _zprem(u, v):
    """Pseudo-remainder in (Z[kp])[k], dicts deg_k -> integer list."""
    dv = max(v)
    lv = v[dv]
    r = {a: list(c) for a, c in u.items()}
    while r and max(r) >= dv:
        dr = max(r)
        lr = r[dr]
        nr = {a: _zuni_mul(c, lv) for a, c in r.items()}
        for a, c in v.items():
            shift = a + dr - dv
            sub = _zuni_mul(c, lr)
            cur = nr.get(shift, [])
            res = [0] * max(len(cur), len(sub))
            for i, x in enumerate(cur):
                res[i] += x
            for i, x in enumerate(sub):
                res[i] -= x
            res = _zuni_trim(res)
            if res:
                nr[shift] = res
            elif shift in nr:
                del nr[shift]
        r = nr
    return r


def _poly_from_int_kcoeffs(d):
    terms = {}
    for a, u in d.items():
        for b, c in enumerate(u):
            if c:
                terms[(a, b)] = Fraction(c)
    p = Poly.__new__(Poly)
    p.terms = terms
    return p


def _is_univar_kp(p):
    return all(m[0] == 0 for m in p.terms)


def _is_univar_k(p):
    return all(m[1] == 0 for m in p.terms)


def _poly_from_zuni(u, var_index):
    terms = {}
    for i, c in enumerate(u):
        if c:
            terms[(i, 0) if var_index == 0 else (0, i)] = Fraction(c)
    p = Poly.__new__(Poly)
    p.terms = terms
    return p


def _poly_to_zuni(p, var_index):
    denlcm = 1
    for c in p.terms.values():
        d = c.denominator
        denlcm = denlcm * d // _int_gcd(denlcm, d)
    u = [0] * (p.degree(var_index) + 1)
    for m, c in p.terms.items():
        u[m[var_index]] = int(c * denlcm)
    return u


def poly_gcd(a, b):
    """Monic gcd of two polynomials in Q[k, kp]."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_const() or b.is_const():
        return Poly.const(1)
    if _is_univar_k(a) and _is_univar_k(b):
        g = _zuni_gcd(_poly_to_zuni(a, 0), _poly_to_zuni(b, 0))
        return _monic(_poly_from_zuni(g, 0))
    if _is_univar_kp(a) and _is_univar_kp(b):
        g = _zuni_gcd(_poly_to_zuni(a, 1), _poly_to_zuni(b, 1))
        return _monic(_poly_from_zuni(g, 1))
    return _monic(_bivar_gcd(a, b))


def _monic(p):
    if p.is_zero():
        return p
    _, lc = p.lead()
    return p.scale(1 / lc) if lc != 1 else p


def _bivar_gcd(a, b):
    da, db = _poly_to_int_kcoeffs(a), _poly_to_int_kcoeffs(b)
    ca, cb = _zcont_k(da), _zcont_k(db)
    cont = _zuni_gcd(ca[1], cb[1])
    u, v = _zpp_k(da, ca), _zpp_k(db, cb)
    if max(u) < max(v):
        u, v = v, u
    while v:
        r = _zprem(u, v)
        u, v = v, (_zpp_k(r, _zcont_k(r)) if r else {})
    gp = _poly_from_int_kcoeffs(u)
    if len(cont) > 1 or cont[0] != 1:
        gp = gp * _poly_from_zuni(cont, 1)
    return gp


_ZERO = Poly.const(0)
_ONE = Poly.const(1)


class RatFunc:
    """Element of Q(k, kp) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        if not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
            _, lc = den.lead()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def const(cls, c):
        return cls._raw(Poly.const(c), _ONE)

    @classmethod
    def var_k(cls):
        return cls._raw(Poly.var("k"), _ONE)

    @classmethod
    def var_kp(cls):
        return cls._raw(Poly.var("kp"), _ONE)

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_one()

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.num.const_value()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num + other.num, _ONE)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        dr = poly_divexact(other.den, g)
        return RatFunc(self.num * dr + other.num * poly_divexact(self.den, g),
                       self.den * dr)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num - other.num, _ONE)
        if self.den == other.den:
            return RatFunc(self.num - other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            return RatFunc(self.num * other.den - other.num * self.den,
                           self.den * other.den)
        dr = poly_divexact(other.den, g)
        return RatFunc(self.num * dr - other.num * poly_divexact(self.den, g),
                       self.den * dr)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num * other.num, _ONE)
        # cross-cancel keeps products of reduced fractions reduced
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else poly_divexact(self.num, g1)
        d2 = other.den if g1.is_one() else poly_divexact(other.den, g1)
        n2 = other.num if g2.is_one() else poly_divexact(other.num, g2)
        d1 = self.den if g2.is_one() else poly_divexact(self.den, g2)
        den = d1 * d2
        num = n1 * n2
        if den.is_one():
            return RatFunc._raw(num, den)
        _, lc = den.lead()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc(other.den, other.num)

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __pow__(self, n):
        if n < 0:
            return RF_ONE / self ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute(self, k_val, kp_val=0):
        """Exact evaluation at rational (k, kp); raises EvaluationError at poles."""
        k_val = Fraction(k_val)
        kp_val = Fraction(kp_val)
        d = self.den.evaluate(k_val, kp_val)
        if d == 0:
            raise EvaluationError(f"pole of {self} at k={k_val}, kp={kp_val}")
        return self.num.evaluate(k_val, kp_val) / d

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc._raw(Poly.const(x), _ONE)
    return NotImplemented


RF_ZERO = RatFunc._raw(_ZERO, _ONE)
RF_ONE = RatFunc._raw(_ONE, _ONE)
K = RatFunc.var_k()
KP = RatFunc.var_kp()


def format_poly(p):
    if p.is_zero():
        return "0"
    parts = []
    for m in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[m]
        factors = []
        if m[0] == 1:
            factors.append("k")
        elif m[0] > 1:
            factors.append(f"k^{m[0]}")
        if m[1] == 1:
            factors.append("kp")
        elif m[1] > 1:
            factors.append(f"kp^{m[1]}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --- parser for the textual form (used by JSON round trips and the CLI) ---


def _tokenize(s):
    tokens = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(int(s[i:j]))
            i = j
        elif s.startswith("kp", i):
            tokens.append("kp")
            i += 2
        elif ch == "k":
            tokens.append("k")
            i += 1
        else:
            raise ValueError(f"bad character {ch!r} in rational function {s!r}")
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse_expr(self):
        if self.peek() == "-":
            self.take()
            value = -self.parse_term()
        else:
            value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self):
        value = self.parse_power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.parse_power()
            value = value * rhs if op == "*" else value / rhs
        return value

    def parse_power(self):
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            exp = self.take()
            if not isinstance(exp, int):
                raise ValueError("exponent must be an integer")
            out = RF_ONE
            for _ in range(exp):
                out = out * base
            return RF_ONE / out if neg else out
        return base

    def parse_atom(self):
        t = self.take()
        if t == "(":
            value = self.parse_expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses")
            return value
        if t == "-":
            return -self.parse_atom()
        if isinstance(t, int):
            return RatFunc.const(t)
        if t == "k":
            return K
        if t == "kp":
            return KP
        raise ValueError(f"unexpected token {t!r}")


def parse_ratfunc(s):
    """Parse the textual form emitted by str(RatFunc)."""
    parser = _Parser(_tokenize(s))
    value = parser.parse_expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing tokens in {s!r}")
    return value


class CouplingVector:
    """One coupling value per root-length class, plus the A_n extra modulus.

    Class 0 is the class of alpha_1; class 1 (if present) that of alpha_n; a
    third class only occurs for BC_n (the doubled roots).  W-invariance is
    structural: roots in one class share one value.
    """

    __slots__ = ("by_class", "extra")

    def __init__(self, by_class, extra=None):
        self.by_class = tuple(_coerce(v) for v in by_class)
        self.extra = _coerce(extra if extra is not None else 0)

    def value(self, class_index):
        return self.by_class[class_index]

    def __eq__(self, other):
        return (isinstance(other, CouplingVector)
                and self.by_class == other.by_class and self.extra == other.extra)

    def __repr__(self):
        return f"CouplingVector({self.by_class}, extra={self.extra})"

    def integer_values(self):
        """Class values as plain ints; raises if any is not a constant integer."""
        out = []
        for v in self.by_class:
            c = v.const_value()
            if c.denominator != 1:
                raise ValueError(f"coupling {v} is not an integer")
            out.append(int(c))
        return out


def couplings(rs, k=None, kp=None, k2=None):
    """Build the coupling vector for a root system.

    k is the value on the class of alpha_1, kp on the class of alpha_n when
    that differs (B, C, F, G) or the extra A_n modulus; k2 is the BC doubled
    root value.  Unspecified symbolic defaults: k, kp; k2 defaults to zero.
    """
    k = K if k is None else _coerce(k)
    kp = KP if kp is None else _coerce(kp)
    k2 = RF_ZERO if k2 is None else _coerce(k2)
    family = rs.spec.family
    if family == "A":
        return CouplingVector((k,), kp)
    if family in ("D", "E"):
        return CouplingVector((k,))
    if family == "BC":
        if rs.n_classes == 2:
            return CouplingVector((k, k2))
        return CouplingVector((k, kp, k2))
    return CouplingVector((k, kp))
