"""Exact coefficient fields and sparse multivariate polynomials.

A polynomial is a map from exponent tuples to nonzero coefficients.  Two
coefficient fields are supported: the rationals (``Fraction``) and prime
fields F_p with p below 2**63 (plain ``int`` residues in ``[0, p)``).

Text syntax accepted by :meth:`PolyRing.parse`::

    x^2 + 3*x*y - 1/2*y^3

Printing is canonical: terms in descending graded reverse lexicographic
order, with signs folded into the coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ContextMismatch, ParseError

Exponent = tuple  # tuple[int, ...], one entry per ring variable


def grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp):
    return exp


def divides(a, b):
    """Monomial divisibility a | b."""
    return all(x <= y for x, y in zip(a, b))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field Q, elements are reduced ``Fraction`` objects."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def signed(self, c):
        return c

    def format(self, c):
        return str(c)

    def random_element(self, rng, bound=5):
        return Fraction(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def tag(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p fitting in a machine word."""

    def __init__(self, p: int):
        p = int(p)
        if p >= 2**63 or not _is_prime(p):
            raise ValueError(f"{p} is not a machine-word prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, value):
        p = self.p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def signed(self, c):
        """Symmetric representative, used for printing."""
        return c - self.p if c > self.p // 2 else c

    def format(self, c):
        return str(self.signed(c))

    def random_element(self, rng, bound=None):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def tag(self):
        return f"F{self.p}"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """``'Q'``/``'q'`` or ``'fp:101'``/``'F101'``/``'GF(101)'``."""
    t = tag.strip()
    if t.lower() in ("q", "qq"):
        return QQ
    m = re.fullmatch(r"(?:fp:|F|GF\(?)(\d+)\)?", t, flags=re.IGNORECASE)
    if not m:
        raise ValueError(f"unknown field {tag!r}")
    return GF(int(m.group(1)))


class PolyRing:
    """k[x_1, ..., x_n] with named variables and an optional positive grading."""

    def __init__(self, names: Sequence[str], field=QQ, weights: Sequence[int] | None = None):
        if isinstance(names, str):
            names = [n for n in re.split(r"[\s,]+", names) if n]
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.names)
        self.field = field
        if weights is None:
            weights = (1,) * self.nvars
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != self.nvars or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        self._index = {n: i for i, n in enumerate(self.names)}
        self._key = (self.names, self.field, self.weights)
        self.zero = Poly(self, {})
        self.one = self.const(1)
        self.gens = tuple(self.monomial(tuple(int(i == j) for j in range(self.nvars)))
                          for i in range(self.nvars))

    def __eq__(self, other):
        return self is other or (isinstance(other, PolyRing) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PolyRing({list(self.names)!r}, {self.field!r})"

    def const(self, c) -> Poly:
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp, c=1) -> Poly:
        c = self.field(c)
        return Poly(self, {tuple(exp): c} if c else {})

    def var(self, name: str) -> Poly:
        return self.gens[self._index[name]]

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring is self or value.ring == self:
                return value
            raise ContextMismatch(f"{value!r} is not in {self!r}")
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a polynomial")

    def parse(self, text: str, line: int = 1, column: int = 1) -> Poly:
        return _PolyParser(self, text, line, column).parse()

    def matrix(self, rows, shape=None):
        from .matrix import PolyMatrix
        return PolyMatrix(self, rows, shape)

    def weighted_degree(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def with_field(self, field) -> PolyRing:
        return PolyRing(self.names, field, self.weights)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, F.zero), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero
        F = self.ring.field
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                v = F.add(out.get(e, F.zero), F.mul(ca, cb))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> Poly:
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self) -> int:
        return max((self.ring.weighted_degree(e) for e in self.terms), default=-1)

    def homogeneous_degree(self):
        """Weighted degree if homogeneous, None if not (or zero)."""
        degs = {self.ring.weighted_degree(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneous_degree() is not None

    def leading_term(self, key=grevlex_key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            c = F.signed(c)
            neg = c < 0
            mag = -c if neg else c
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def evaluate_at_origin(p: Poly):
    """Constant term of p."""
    return p.constant_term()


def poly_divmod(p: Poly, d: Poly, key=grevlex_key):
    """Multivariate division by a single divisor: p = q*d + r, r reduced."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.ring != d.ring:
        raise ContextMismatch(f"{p.ring!r} vs {d.ring!r}")
    F = p.ring.field
    lead = max(d.terms, key=key)
    inv = F.inv(d.terms[lead])
    rest = dict(p.terms)
    q, r = {}, {}
    while rest:
        t = max(rest, key=key)
        c = rest[t]
        if divides(lead, t):
            m = tuple(a - b for a, b in zip(t, lead))
            qc = F.mul(c, inv)
            q[m] = F.add(q.get(m, F.zero), qc)
            for e, dc in d.terms.items():
                s = tuple(a + b for a, b in zip(e, m))
                v = F.sub(rest.get(s, F.zero), F.mul(qc, dc))
                if v:
                    rest[s] = v
                else:
                    rest.pop(s, None)
        else:
            r[t] = c
            del rest[t]
    return Poly(p.ring, {e: c for e, c in q.items() if c}), Poly(p.ring, r)


def reduce_mod(p: Poly, f: Poly) -> Poly:
    """Canonical representative of p modulo the principal ideal (f)."""
    return poly_divmod(p, f)[1]


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _PolyParser:
    def __init__(self, ring, text, line, column):
        self.ring = ring
        self.text = text
        self.line0 = line
        self.col0 = column
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.i = 0

    def _where(self, offset):
        before = self.text[:offset]
        nl = before.count("\n")
        if nl:
            return self.line0 + nl, offset - before.rfind("\n")
        return self.line0, self.col0 + offset

    def error(self, expected):
        if self.i < len(self.tokens):
            kind, val, off = self.tokens[self.i]
            line, col = self._where(off)
            raise ParseError(line, col, expected, val)
        line, col = self._where(len(self.text.rstrip()))
        raise ParseError(line, col, expected, "end of input")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.error("polynomial")
        p = self.expr()
        if self.i != len(self.tokens):
            self.error("operator or end of expression")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.i
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if q.degree() != 0:
                    self.i = pos
                    self.error("nonzero constant divisor")
                p = p.scale(self.ring.field.inv(q.constant_term()))
        return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "int":
                self.error("non-negative integer exponent")
            self.take()
            return base ** int(val)
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring._index:
                self.error(f"a ring variable ({', '.join(self.ring.names)})")
            self.take()
            return self.ring.var(val)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("')'")
            self.take()
            return p
        self.error("number, variable or '('")


def random_poly(ring: PolyRing, rng, max_degree: int = 2, nterms: int = 3,
                homogeneous: int | None = None, min_degree: int = 0) -> Poly:
    """Random polynomial with at most ``nterms`` terms (test and demo helper)."""
    F = ring.field
    if homogeneous is not None:
        monos = [e for d in range(homogeneous + 1) for e in _exponents(ring.nvars, d)
                 if ring.weighted_degree(e) == homogeneous]
    else:
        monos = [e for d in range(min_degree, max_degree + 1) for e in _exponents(ring.nvars, d)]
    terms = {}
    for _ in range(nterms):
        if not monos:
            break
        e = rng.choice(monos)
        c = F.random_element(rng)
        if c:
            terms[e] = F.add(terms.get(e, F.zero), c)
    return Poly(ring, {e: c for e, c in terms.items() if c})


@lru_cache(maxsize=None)
def _exponents(n: int, d: int):
    """All exponent tuples of length n and total degree d."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in _exponents(n - 1, d - first):
            out.append((first,) + rest)
    return out


def monomials_of_degree(n: int, d: int) -> Iterable[tuple]:
    return list(_exponents(n, d))
