"""Exact coefficient fields, monomial orders, ring contexts and polynomials.

Polynomials are immutable sparse maps from exponent tuples to nonzero
coefficients.  Coefficients are ``fractions.Fraction`` over the rationals
and plain ints in ``range(p)`` over a prime field.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .errors import (
    ArityMismatch,
    BadCoefficient,
    NotDivisible,
    ParseError,
    RingError,
    RingMismatch,
    UnknownVariable,
    ZeroPolynomial,
)

__all__ = [
    "Field",
    "QQ",
    "MonomialOrder",
    "LEX",
    "GREVLEX",
    "Ring",
    "Polynomial",
    "parse_polynomial",
    "lowest_degree_form",
    "ring_map_apply",
    "exact_divide",
    "polynomial_gcd",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (characteristic 0) or the prime field of order p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p:
            if not _is_prime(p):
                raise RingError(f"{p} is not prime")
            if p >= 2**31:
                raise RingError("prime fields are limited to p < 2^31")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"(?:Fp|GF|F)\s*[:(]?\s*(\d+)\s*\)?", t)
        if not m:
            raise RingError(f"unknown coefficient field {text!r}; use 'Q' or 'Fp:<prime>'")
        return cls(int(m.group(1)))

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    def __call__(self, value):
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(den, -1, p) % p
        return int(value) % p

    def inv(self, c):
        p = self.characteristic
        if p == 0:
            return 1 / Fraction(c)
        return pow(int(c), -1, p)

    def neg(self, c):
        p = self.characteristic
        return (-c) % p if p else -c


QQ = Field(0)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block`` (grevlex on each block, first
    ``split`` variables eliminated first)."""

    name: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.name not in ("lex", "grevlex", "block"):
            raise RingError(f"unknown monomial order {self.name!r}")
        if self.name == "block" and self.split < 0:
            raise RingError("block split must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        t = text.strip().lower()
        if t in ("lex", "plex"):
            return LEX
        if t in ("grevlex", "degrevlex", "drl"):
            return GREVLEX
        m = re.fullmatch(r"block\s*[:(]?\s*(\d+)\s*\)?", t)
        if m:
            return cls("block", int(m.group(1)))
        raise RingError(f"unknown monomial order {text!r}")

    def __str__(self):
        return f"block:{self.split}" if self.name == "block" else self.name

    def eliminates(self, k: int) -> bool:
        """True when the order eliminates the first ``k`` variables."""
        if k == 0:
            return True
        return self.name == "lex" or (self.name == "block" and self.split >= k)

    def key(self, npos: int = 0) -> Callable[[tuple], tuple]:
        return _order_key(self, npos)

    def heapkey(self, npos: int = 0) -> Callable[[tuple], tuple]:
        return _heap_key(self, npos)


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def _grevlex(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


@lru_cache(maxsize=None)
def _ring_key(order):
    if order.name == "lex":
        return lambda m: m
    if order.name == "grevlex":
        return _grevlex
    k = order.split
    return lambda m: _grevlex(m[:k]) + _grevlex(m[k:])


@lru_cache(maxsize=None)
def _order_key(order, npos):
    rk = _ring_key(order)
    if npos == 0:
        return rk
    # position-over-term: e_1 > e_2 > ... compared before the ring monomial
    return lambda m: m[:npos] + rk(m[npos:])


@lru_cache(maxsize=None)
def _heap_key(order, npos):
    k = _order_key(order, npos)
    return lambda m: tuple(-x for x in k(m))


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ring:
    """Polynomial ring context: ordered variable names, field, monomial order."""

    variables: tuple
    field: Field = QQ
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if len(set(vs)) != len(vs):
            raise RingError(f"duplicate variable names in {vs}")
        for v in vs:
            if not isinstance(v, str) or not _NAME.match(v):
                raise RingError(f"invalid variable name {v!r}")
        if self.order.name == "block" and self.order.split > len(vs):
            raise RingError("block split exceeds number of variables")

    @classmethod
    def from_text(cls, text: str, order: MonomialOrder = GREVLEX) -> "Ring":
        """Parse ``"x,y/Q"`` or ``"x,y/Fp:65537"`` (field defaults to Q)."""
        names, _, field = text.partition("/")
        vs = tuple(v.strip() for v in names.split(",") if v.strip())
        if not vs:
            raise RingError(f"no variables in ring description {text!r}")
        return cls(vs, Field.parse(field) if field.strip() else QQ, order)

    def __str__(self):
        return f"{','.join(self.variables)}/{self.field}"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.variables, self.field, order)

    def with_variables(self, variables, order: MonomialOrder | None = None) -> "Ring":
        return Ring(tuple(variables), self.field, order or self.order)

    def fresh_names(self, stem: str, count: int) -> list[str]:
        """``count`` names ``stem1..`` that do not clash with this ring."""
        taken = set(self.variables)
        out, i = [], 1
        while len(out) < count:
            if f"{stem}{i}" not in taken:
                out.append(f"{stem}{i}")
            i += 1
        return out

    def fresh_name(self, stem: str) -> str:
        return stem if stem not in self.variables else self.fresh_names(stem, 1)[0]

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps, c=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise ArityMismatch(f"exponent vector {exps} does not fit ring {self}")
        c = self.field(c)
        return Polynomial(self, {exps: c} if c else {})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"polynomial lives in {value.ring}, not {self}")
            return value
        if isinstance(value, str):
            return parse_polynomial(value, self)
        return self.constant(value)


def _format_coeff(c, field):
    if field.characteristic:
        return str(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping | None = None, *, clean: bool = True):
        self.ring = ring
        if terms is None:
            terms = {}
        elif clean:
            conv = ring.field
            terms = {tuple(m): conv(c) for m, c in terms.items()}
            terms = {m: c for m, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: str) -> int:
        i = self.ring.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self) -> set[str]:
        vs = self.ring.variables
        return {vs[i] for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        key = (order or self.ring.order).key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_monomial(self, order: MonomialOrder | None = None) -> tuple:
        if not self.terms:
            raise ZeroPolynomial("leading monomial of zero")
        return max(self.terms, key=(order or self.ring.order).key())

    def lead_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.lead_monomial(order)]

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field(0))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field(0))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine polynomials of {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                s = (v + c) % p if p else v + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out, clean=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, clean=False)
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                v = out.get(m)
                out[m] = c if v is None else v + c
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out, clean=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()}, clean=False)
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, clean=False)

    def mul_term(self, exps, c=1) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.characteristic
        out = {}
        for m, v in self.terms.items():
            mm = tuple(a + b for a, b in zip(m, exps))
            out[mm] = v * c % p if p else v * c
        return Polynomial(self.ring, out, clean=False)

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coefficient(order)))

    def derivative(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[mm] = c * m[i]
        return Polynomial(self.ring, out)

    def map_coefficients(self, ring: Ring) -> "Polynomial":
        """Reinterpret in a ring with the same number of variables."""
        if ring.nvars != self.ring.nvars:
            raise ArityMismatch("rings differ in number of variables")
        return Polynomial(ring, self.terms)

    def embed(self, ring: Ring, positions: Iterable[int]) -> "Polynomial":
        """Move into ``ring``: variable ``i`` goes to slot ``positions[i]``."""
        pos = list(positions)
        n = ring.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, x in enumerate(m):
                if x:
                    e[pos[i]] += x
            out[tuple(e)] = c
        return Polynomial(ring, out, clean=False)

    def evaluate(self, values: Mapping[str, object]):
        """Substitute field elements for every variable; returns a coefficient."""
        f = self.ring.field
        vals = [f(values[v]) for v in self.ring.variables]
        total = f(0)
        p = self.ring.characteristic
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v**e
            total = total + t
        return total % p if p else total

    # -- comparison / printing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        p = ring.characteristic
        out = []
        for m, c in self.sorted_terms():
            neg = False
            if not p and c < 0:
                neg, c = True, -c
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, m) if e
            )
            if not mono:
                body = _format_coeff(c, ring.field)
            elif c == 1:
                body = mono
            else:
                body = f"{_format_coeff(c, ring.field)}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, ring={str(self.ring)!r})"


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, toks = 0, []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def expr(self):
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v, p = self.take()
            if k != "num":
                raise ParseError("exponent must be a non-negative integer", p)
            base = base ** int(v)
        return base

    def atom(self):
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "num":
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise BadCoefficient("coefficient denominator must be an integer", p3)
                if int(v3) == 0:
                    raise BadCoefficient("zero denominator", p3)
                try:
                    return ring.constant(Fraction(int(val), int(v3)))
                except ZeroDivisionError:
                    raise BadCoefficient(
                        f"denominator {v3} vanishes in {ring.field}", p3
                    ) from None
            return ring.constant(int(val))
        if kind == "var":
            if val not in ring.variables:
                raise UnknownVariable(f"unknown variable {val!r}", pos)
            return ring.gen(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` in ``ring``.

    Grammar: signed terms joined by ``+``/``-``; a term is an optional
    coefficient ``a`` or ``a/b`` followed by variables with optional
    ``^exp``, factors separated by ``*`` or juxtaposition.  Parentheses
    are accepted as an extension.
    """
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", 0)
    f = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return f


def lowest_degree_form(f: Polynomial) -> tuple[int, Polynomial]:
    """Order (least total degree of a term) and the sum of terms of that degree."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no order")
    r = min(sum(m) for m in f.terms)
    return r, Polynomial(f.ring, {m: c for m, c in f.terms.items() if sum(m) == r}, clean=False)


def ring_map_apply(f: Polynomial, mapping: Mapping[str, object], target: Ring) -> Polynomial:
    """Apply the ring homomorphism sending each variable of ``f.ring`` to a
    polynomial of ``target`` (strings are parsed in ``target``)."""
    src = f.ring
    missing = [v for v in src.variables if v not in mapping]
    extra = [v for v in mapping if v not in src.variables]
    if missing or extra:
        raise ArityMismatch(f"map must cover exactly {src.variables}; missing {missing}, extra {extra}")
    if src.field != target.field:
        raise RingMismatch("source and target fields differ")
    images = [target(mapping[v]) for v in src.variables]
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    out = target.zero()
    for m, c in f.terms.items():
        t = target.constant(c)
        for i, e in enumerate(m):
            if e:
                t = t * power(i, e)
        out = out + t
    return out


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``q`` with ``f == q*g``; raises NotDivisible otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.ring != g.ring:
        raise RingMismatch("exact_divide needs a common ring")
    ring = f.ring
    p = ring.characteristic
    key = ring.order.key()
    lm = max(g.terms, key=key)
    inv = ring.field.inv(g.terms[lm])
    rest = [(m, c) for m, c in g.terms.items() if m != lm]
    r = dict(f.terms)
    q = {}
    while r:
        m = max(r, key=key)
        d = tuple(a - b for a, b in zip(m, lm))
        if min(d) < 0:
            raise NotDivisible(f"{g} does not divide {f}")
        c = r.pop(m) * inv
        if p:
            c %= p
        q[d] = c
        for gm, gc in rest:
            mm = tuple(a + b for a, b in zip(gm, d))
            v = r.get(mm, 0) - c * gc
            if p:
                v %= p
            if v:
                r[mm] = v
            else:
                r.pop(mm, None)
    return Polynomial(ring, q, clean=False)


def polynomial_gcd(polys: Iterable[Polynomial]) -> Polynomial:
    """Monic greatest common divisor (zero if every input is zero).

    Monomial and constant inputs are handled directly; otherwise sympy's
    multivariate gcd is used."""
    polys = [f for f in polys if f]
    if not polys:
        raise ZeroPolynomial("gcd of zero polynomials")
    ring = polys[0].ring
    if any(f.is_constant() for f in polys):
        return ring.one()
    if all(f.is_monomial() for f in polys):
        exps = [next(iter(f.terms)) for f in polys]
        return ring.monomial(tuple(min(col) for col in zip(*exps)))
    import sympy

    syms = sympy.symbols(ring.variables)
    p = ring.characteristic
    opts = {"modulus": p} if p else {"domain": "QQ"}

    def to_sym(f):
        if p:
            return sympy.Poly.from_dict({m: int(c) for m, c in f.terms.items()}, *syms, **opts)
        return sympy.Poly.from_dict(
            {m: sympy.Rational(c.numerator, c.denominator) for m, c in f.terms.items()}, *syms, **opts
        )

    g = to_sym(polys[0])
    for f in polys[1:]:
        g = g.gcd(to_sym(f))
        if g.is_ground:
            return ring.one()
    terms = {}
    for m, c in g.as_dict().items():
        if p:
            terms[tuple(m)] = int(c) % p
        else:
            c = sympy.Rational(c)
            terms[tuple(m)] = Fraction(int(c.p), int(c.q))
    return Polynomial(ring, terms).monic()
