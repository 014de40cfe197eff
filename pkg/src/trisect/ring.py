"""Exact arithmetic in the Laurent polynomial ring Z[t1^+-1, ..., tb^+-1] and its
fraction field.

Polynomials are immutable maps from exponent tuples to nonzero Python ints.
The "leading" term is the lexicographically largest exponent tuple, with
t1 > t2 > ... .
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence


class DimensionError(ValueError):
    """Operands live in rings with a different number of variables."""


class UndefinedGCDError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    pass


Exps = tuple  # tuple[int, ...]


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_exps(a, b):
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# dict-level helpers; these skip normalization checks and are used in loops


def _dadd(p: dict, q: Mapping, scale: int = 1) -> dict:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _dmul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = _add_exps(e1, e2)
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _dmul_term(p: Mapping, e0, c0: int) -> dict:
    return {_add_exps(e, e0): c * c0 for e, c in p.items()}


def _lead(p: Mapping):
    e = max(p)
    return e, p[e]


def _divexact(p: Mapping, d: Mapping, n: int) -> dict:
    """Quotient of p by d; raises NotDivisibleError unless d divides p."""
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    if not p:
        return {}
    if len(d) == 1:
        (ed, cd), = d.items()
        out = {}
        for e, c in p.items():
            if c % cd:
                raise NotDivisibleError("coefficient not divisible")
            out[_sub_exps(e, ed)] = c // cd
        return out
    # bounds on the exponents any exact quotient can have
    lo = [min(e[i] for e in p) - min(e[i] for e in d) for i in range(n)]
    hi = [max(e[i] for e in p) - max(e[i] for e in d) for i in range(n)]
    ed, cd = _lead(d)
    rem = dict(p)
    quo: dict = {}
    while rem:
        er, cr = _lead(rem)
        if cr % cd:
            raise NotDivisibleError("leading coefficient not divisible")
        eq = _sub_exps(er, ed)
        if any(x < a or x > b for x, a, b in zip(eq, lo, hi)):
            raise NotDivisibleError("quotient exponent out of range")
        cq = cr // cd
        quo[eq] = cq
        rem = _dadd(rem, _dmul_term(d, eq, cq), -1)
    return quo


def _icontent(p: Mapping) -> int:
    g = 0
    for c in p.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _min_exps(p: Mapping, n: int):
    return tuple(min(e[i] for e in p) for i in range(n))


# --- gcd over Z[t1..tb] by recursive primitive remainder sequences ----------


def _split(p: Mapping, v: int) -> dict:
    """View p as a univariate polynomial in variable v: degree -> coefficient."""
    out: dict = {}
    for e, c in p.items():
        k = e[v]
        e0 = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[e0] = c
    return out


def _join(parts: Mapping, v: int) -> dict:
    out = {}
    for k, q in parts.items():
        for e, c in q.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def _deg(p: Mapping, v: int) -> int:
    return max(e[v] for e in p)


def _uses(p: Mapping, v: int) -> bool:
    return any(e[v] for e in p)


def _content_in(p: Mapping, v: int, n: int) -> dict:
    g: dict = {}
    for q in _split(p, v).values():
        g = _gcd_poly(g, q, v + 1, n)
        if len(g) == 1 and abs(next(iter(g.values()))) == 1 and not any(next(iter(g))):
            break
    return g


def _normalize_sign(p: dict) -> dict:
    if p and _lead(p)[1] < 0:
        return {e: -c for e, c in p.items()}
    return p


def _prem(a: dict, b: dict, v: int) -> dict:
    """Pseudo-remainder of a by b with respect to variable v."""
    db = _deg(b, v)
    parts_b = _split(b, v)
    lc = parts_b[db]
    r = a
    while r and _deg(r, v) >= db:
        dr = _deg(r, v)
        lcr = _split(r, v)[dr]
        shift = tuple(dr - db if i == v else 0 for i in range(len(next(iter(b)))))
        r = _dadd(_dmul(r, lc), _dmul(_dmul_term(b, shift, 1), lcr), -1)
    return r


def _gcd_poly(p: dict, q: dict, v: int, n: int) -> dict:
    """gcd of two polynomials (nonnegative exponents) using variables v..n-1."""
    if not p:
        return _normalize_sign(dict(q))
    if not q:
        return _normalize_sign(dict(p))
    zero = (0,) * n
    if v >= n:
        return {zero: igcd(p[zero], q[zero])}
    # skip variables neither polynomial depends on
    while v < n and not _uses(p, v) and not _uses(q, v):
        v += 1
    if v >= n:
        return {zero: igcd(p[zero], q[zero])}
    cp = _content_in(p, v, n)
    cq = _content_in(q, v, n)
    c = _gcd_poly(cp, cq, v + 1, n)
    a = _divexact(p, cp, n)
    b = _divexact(q, cq, n)
    if _deg(a, v) < _deg(b, v):
        a, b = b, a
    while b and _deg(b, v) > 0:
        r = _prem(a, b, v)
        if not r:
            a = b
            break
        if not _uses(r, v):
            a = {}
            break
        a, b = b, _divexact(r, _content_in(r, v, n), n)
    else:
        # b is constant in v (or zero): primitive parts are coprime in v
        if b:
            a = {}
    if not a:
        g = c
    else:
        a = _divexact(a, _content_in(a, v, n), n)
        g = _dmul(c, a)
    return _normalize_sign(g)


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Element of Z[t1^+-1, ..., tb^+-1]."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping | None = None, nvars: int = 0):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise DimensionError(f"exponent {e} has wrong length for b={nvars}")
                if c:
                    t[e] = t.get(e, 0) + int(c)
            t = {e: c for e, c in t.items() if c}
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: int(c)} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(1, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exps = tuple(int(x) for x in exps)
        return cls._raw({exps: int(coeff)} if coeff else {}, len(exps))

    @classmethod
    def var(cls, i: int, nvars: int) -> "LaurentPoly":
        """The generator t_{i+1} (0-based index)."""
        return cls.monomial(tuple(1 if j == i else 0 for j in range(nvars)))

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True for +-monomials, the units of the ring."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise DimensionError(f"ring mismatch: b={self.nvars} vs b={other.nvars}")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_dadd(self.terms, other.terms), self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_dadd(self.terms, other.terms, -1), self.nvars)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        return LaurentPoly._raw(_dmul(self.terms, other.terms), self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisibleError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise NotDivisibleError("negative power of a non-unit")
            return LaurentPoly.monomial(tuple(x * k for x in e), c if k % 2 else 1)
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises NotDivisibleError when other does not divide self."""
        self._check(other)
        return LaurentPoly._raw(_divexact(self.terms, other.terms, self.nvars), self.nvars)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.divexact(self)
        except NotDivisibleError:
            return False
        return True

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # ring maps
    def involute(self) -> "LaurentPoly":
        """Bar involution: every group element goes to its inverse."""
        return LaurentPoly._raw({tuple(-x for x in e): c for e, c in self.terms.items()}, self.nvars)

    def augment(self) -> int:
        return sum(self.terms.values())

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError("evaluation point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, images: Sequence["LaurentPoly"], nvars: int) -> "LaurentPoly":
        """Ring map sending t_i to the unit images[i] (in a ring with nvars variables)."""
        out = LaurentPoly.zero(nvars)
        for e, c in self.terms.items():
            m = LaurentPoly.const(c, nvars)
            for img, k in zip(images, e):
                m = m * img ** k
            out = out + m
        return out

    def content(self) -> int:
        return _icontent(self.terms)

    def min_exponents(self):
        return _min_exps(self.terms, self.nvars)

    def leading(self):
        """(exponents, coefficient) of the lex-leading term."""
        return _lead(self.terms)

    def canonical(self):
        return lp_canonical(self)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, b={self.nvars})"

    def __str__(self):
        return format_poly(self)


def lp_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    p._check(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def lp_involute(p: LaurentPoly) -> LaurentPoly:
    return p.involute()


def lp_augment(p: LaurentPoly) -> int:
    return p.augment()


def lp_canonical(p: LaurentPoly):
    """Return (canon, unit, sign) with canon = sign * unit^-1 * p.

    canon has minimal exponent zero in each variable and a positive lex-leading
    coefficient, so it is the same for every +-monomial multiple of p.
    """
    if p.is_zero():
        raise ValueError("zero has no canonical form")
    m = p.min_exponents()
    shifted = {_sub_exps(e, m): c for e, c in p.terms.items()}
    sign = 1 if _lead(shifted)[1] > 0 else -1
    if sign < 0:
        shifted = {e: -c for e, c in shifted.items()}
    return LaurentPoly._raw(shifted, p.nvars), LaurentPoly.monomial(m), sign


def canon(p: LaurentPoly) -> LaurentPoly:
    return lp_canonical(p)[0]


def lp_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in canonical unit form."""
    p._check(q)
    if p.is_zero() and q.is_zero():
        raise UndefinedGCDError("gcd(0, 0) is undefined")
    if p.is_zero():
        return canon(q)
    if q.is_zero():
        return canon(p)
    n = p.nvars
    a = {_sub_exps(e, p.min_exponents()): c for e, c in p.terms.items()}
    b = {_sub_exps(e, q.min_exponents()): c for e, c in q.terms.items()}
    g = _gcd_poly(a, b, 0, n)
    return canon(LaurentPoly._raw(g, n))


def lp_gcd_many(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    """gcd of a family; the empty family (or all zeros) gives 0."""
    g = LaurentPoly.zero(nvars)
    for p in polys:
        if p.is_zero():
            continue
        g = canon(p) if g.is_zero() else lp_gcd(g, p)
        if g.is_unit():
            break
    return g


def units_equal(p: LaurentPoly, q: LaurentPoly) -> bool:
    """p = +-monomial * q."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return canon(p) == canon(q)


# ---------------------------------------------------------------------------


class Frac:
    """Element of the fraction field, kept in lowest terms.

    The denominator has minimal exponent zero in every variable and a positive
    lex-leading coefficient; numerator and denominator are coprime up to units.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, _reduced: bool = False):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_int(cls, c: int, nvars: int) -> "Frac":
        return cls(LaurentPoly.const(c, nvars), LaurentPoly.one(nvars), _reduced=True)

    @classmethod
    def coerce(cls, x, nvars: int) -> "Frac":
        if isinstance(x, Frac):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        return cls.from_int(x, nvars)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den == 1

    def to_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        o = Frac.coerce(other, self.nvars)
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-Frac.coerce(other, self.nvars))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = Frac.coerce(other, self.nvars)
        return Frac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Frac":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Frac(self.den, self.num)

    def __truediv__(self, other):
        return self * Frac.coerce(other, self.nvars).inverse()

    def __rtruediv__(self, other):
        return Frac.coerce(other, self.nvars) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Frac(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = Frac.coerce(other, self.nvars)
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def involute(self) -> "Frac":
        return Frac(self.num.involute(), self.den.involute())

    def evaluate(self, point) -> Fraction:
        return self.num.evaluate(point) / self.den.evaluate(point)

    def canonical(self) -> "Frac":
        """Representative modulo +-monomials: both parts in canonical form."""
        if self.is_zero():
            return self
        return Frac(canon(self.num), canon(self.den), _reduced=True)

    def __repr__(self):
        return f"Frac({str(self)!r})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _reduce(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return num, LaurentPoly.one(num.nvars)
    g = lp_gcd(num, den)
    if not (g == 1):
        num = num.divexact(g)
        den = den.divexact(g)
    c, unit, sign = lp_canonical(den)
    # den = sign * unit * c, so num/den = (sign * unit^-1 * num) / c
    num = num * unit.involute() * sign
    return num, c


def frac_units_equal(a: Frac, b: Frac) -> bool:
    """a = +-monomial * b."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.canonical() == b.canonical()


# ---------------------------------------------------------------------------
# string form


def _format_term(e, c: int) -> tuple[int, str]:
    factors = []
    for i, k in enumerate(e):
        if k == 1:
            factors.append(f"t{i + 1}")
        elif k:
            factors.append(f"t{i + 1}^{k}")
    mono = "*".join(factors)
    a = abs(c)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    return (1 if c > 0 else -1), body


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        s, body = _format_term(e, p.terms[e])
        if not out:
            out.append(body if s > 0 else "-" + body)
        else:
            out.append(("+ " if s > 0 else "- ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*([+-])?\s*([^+\-\s][^+\-]*?)(?=\s*[+-]|\s*$)")
_FACTOR = re.compile(r"^t(\d+)(?:\^(-?\d+))?$")


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Parse the format produced by format_poly, e.g. "t1^2*t2^-1 - 3"."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    # protect negative exponents from the term splitter
    s = s.replace("^-", "^~")
    terms: dict = {}
    pos = 0
    first = True
    for m in _TOKEN.finditer(s):
        if m.start() != pos and s[pos:m.start()].strip():
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        if m.group(1) is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        first = False
        body = m.group(2).strip().replace("^~", "^-")
        coeff = 1
        exps = [0] * nvars
        for j, f in enumerate(x.strip() for x in body.split("*")):
            if f.isdigit():
                if j != 0:
                    raise ValueError(f"coefficient must come first in {body!r}")
                coeff = int(f)
                continue
            fm = _FACTOR.match(f)
            if not fm:
                raise ValueError(f"bad factor {f!r} in {text!r}")
            i = int(fm.group(1)) - 1
            if not 0 <= i < nvars:
                raise ValueError(f"variable t{i + 1} out of range for b={nvars}")
            exps[i] += int(fm.group(2)) if fm.group(2) else 1
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + sign * coeff
    if s[pos:].strip():
        raise ValueError(f"cannot parse polynomial {text!r}")
    return LaurentPoly(terms, nvars)
