"""Exact sparse multivariate polynomials over Q or a prime field.

Polynomials are immutable maps from exponent tuples to nonzero
coefficients.  Rational coefficients are ``gmpy2.mpq``; prime-field
coefficients are plain ints in ``[0, p)``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz


class RingMismatchError(ValueError):
    pass


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rational"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rational":
            if self.characteristic != 0:
                raise ValueError("rational field has characteristic 0")
        elif self.kind == "prime":
            p = self.characteristic
            if p < 2 or not gmpy2.is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def __call__(self, value) -> object:
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        if self.kind == "rational":
            if isinstance(value, str):
                return mpq(value)
            return mpq(value)
        p = self.characteristic
        q = mpq(value)
        num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} not invertible mod {p}")
        return num * pow(den, -1, p) % p

    @property
    def zero(self):
        return mpq(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return mpq(1) if self.kind == "rational" else 1

    def inv(self, a):
        if self.kind == "rational":
            return 1 / a
        return pow(int(a), -1, self.characteristic)

    def norm(self, a):
        return a if self.kind == "rational" else a % self.characteristic

    def fmt(self, a) -> str:
        return str(a)


QQ = FieldSpec.rational()


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex, lex, or a two-block elimination order.

    ``block_split`` counts the variables of the first block (the ones to be
    eliminated); each block is compared by weighted degrevlex.
    """

    kind: str = "degrevlex"
    block_split: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block_split < 1:
            raise ValueError("block order needs block_split >= 1")

    def sort_key(self, exp: tuple, weights: tuple) -> tuple:
        if self.kind == "lex":
            return exp
        if self.kind == "degrevlex":
            return _drl_key(exp, weights)
        k = self.block_split
        return (_drl_key(exp[:k], weights[:k]), _drl_key(exp[k:], weights[k:]))


def _drl_key(exp, weights):
    return (sum(e * w for e, w in zip(exp, weights)), tuple(-e for e in reversed(exp)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    order: MonomialOrder = DEGREVLEX
    field: FieldSpec = QQ
    weights: tuple = ()

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        w = tuple(self.weights) or (1,) * len(names)
        if len(w) != len(names) or any(x < 1 for x in w):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", w)
        if self.order.kind == "block" and self.order.block_split >= len(names):
            raise ValueError("block_split must leave a nonempty second block")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.variables)}

    def gens(self) -> list["Poly"]:
        return [self.var(v) for v in self.variables]

    def var(self, name: str | int) -> "Poly":
        i = name if isinstance(name, int) else self.index[name]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def sort_key(self, exp):
        return self.order.sort_key(exp, self.weights)

    def with_order(self, order: MonomialOrder, weights: tuple | None = None) -> "PolyRing":
        return PolyRing(self.variables, order, self.field, self.weights if weights is None else weights)

    def with_field(self, field: FieldSpec) -> "PolyRing":
        return PolyRing(self.variables, self.order, field, self.weights)

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            return text.to_ring(self)
        if isinstance(text, str):
            return parse_poly(self, text)
        return self.const(text)


def polyring(names: str | Sequence[str], order: MonomialOrder = DEGREVLEX,
             field: FieldSpec = QQ, weights: tuple = ()) -> PolyRing:
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return PolyRing(tuple(names), order, field, tuple(weights))


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def from_terms(cls, ring: PolyRing, items: Iterable) -> "Poly":
        acc: dict = {}
        F = ring.field
        for exp, c in items:
            exp = tuple(exp)
            acc[exp] = acc.get(exp, F.zero) + F(c)
        if F.is_prime:
            p = F.characteristic
            return cls(ring, {e: c % p for e, c in acc.items() if c % p})
        return cls(ring, {e: c for e, c in acc.items() if c})

    def _new(self, terms: dict) -> "Poly":
        return Poly(self.ring, terms)

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring.variables} vs {other.ring.variables}")
            return other
        return self.ring.const(other)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.norm(out.get(e, F.zero) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return self._new({e: F.norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.ring.field
        if not self.terms or not other.terms:
            return self._new({})
        out: dict = {}
        get = out.get
        zero = F.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, zero) + c1 * c2
        if F.is_prime:
            p = F.characteristic
            return self._new({e: c % p for e, c in out.items() if c % p})
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c)
        if not c:
            return self._new({})
        return self._new({e: F.norm(v * c) for e, v in self.terms.items()})

    def mul_monomial(self, exp: tuple, c=1) -> "Poly":
        F = self.ring.field
        c = F(c)
        return self._new({tuple(a + b for a, b in zip(e, exp)): F.norm(v * c) for e, v in self.terms.items()})

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection ------------------------------------------------------------
    def sorted_terms(self) -> list:
        key = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_exp(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.sort_key)

    def lead_coeff(self):
        return self.terms[self.lead_exp()]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, weights: tuple | None = None) -> bool:
        w = weights or (1,) * self.ring.nvars
        return len({sum(a * b for a, b in zip(e, w)) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def support(self) -> set:
        """Indices of variables occurring in the polynomial."""
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def coefficient(self, exp: tuple):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def primitive(self) -> "Poly":
        """Content-free integer form with positive leading coefficient (Q),
        monic form (prime fields)."""
        if not self.terms:
            return self
        F = self.ring.field
        if F.is_prime:
            return self.monic()
        den = mpz(1)
        for c in self.terms.values():
            den = gmpy2.lcm(den, c.denominator)
        num = mpz(0)
        for c in self.terms.values():
            num = gmpy2.gcd(num, (c * den).numerator)
        s = mpq(den, num)
        if self.lead_coeff() < 0:
            s = -s
        return self._new({e: c * s for e, c in self.terms.items()})

    def evaluate(self, point: Sequence) -> object:
        F = self.ring.field
        vals = [F(v) for v in point]
        total = F.zero
        for e, c in self.terms.items():
            t = c
            for v, a in zip(vals, e):
                if a:
                    t = t * v ** a
            total = total + t
        return F.norm(total)

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Move into a ring with (a superset of) the same variable names."""
        if ring == self.ring:
            return self
        idx = [ring.index[v] for v in self.ring.variables]
        n = ring.nvars
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, a in zip(idx, e):
                ne[i] = a
            out[tuple(ne)] = ring.field(c) if ring.field != self.ring.field else c
        return Poly.from_terms(ring, out.items()) if ring.field != self.ring.field else Poly(ring, out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.variables
    prime = f.ring.field.is_prime
    parts = []
    for exp, c in f.sorted_terms():
        mono = "*".join(
            (n if a == 1 else f"{n}^{a}") for n, a in zip(names, exp) if a
        )
        neg = (c < 0) if not prime else False
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError("unexpected character", text, pos + (len(text[pos:]) - len(text[pos:].lstrip())))
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            out.append(("var", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg):
        raise PolyParseError(msg, self.text, self.peek()[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                self.i -= 1
                self.fail("exponent must be a nonnegative integer")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            try:
                return self.ring.const(mpq(val))
            except ZeroDivisionError:
                raise PolyParseError("coefficient not invertible in the field", self.text, pos)
        if kind == "var":
            self.take()
            if val not in self.ring.index:
                raise PolyParseError(f"unknown variable {val!r}", self.text, pos)
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return inner
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.power()
        self.fail("expected a number, variable or '('")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    return _Parser(ring, text).parse()


# ring maps --------------------------------------------------------------------

def ring_map_apply(f: Poly, images: Sequence[Poly]) -> Poly:
    """Substitute ``images[i]`` for the i-th variable of ``f``'s ring."""
    if len(images) != f.ring.nvars:
        raise ValueError(f"need {f.ring.nvars} images, got {len(images)}")
    target = images[0].ring if images else f.ring
    for g in images:
        if g.ring != target:
            raise RingMismatchError("images live in different rings")
    result = target.zero()
    powers: dict = {}

    def pw(i, a):
        key = (i, a)
        if key not in powers:
            powers[key] = images[i] ** a
        return powers[key]

    for e, c in f.terms.items():
        t = target.const(c)
        for i, a in enumerate(e):
            if a:
                t = t * pw(i, a)
        result = result + t
    return result


# binary forms ------------------------------------------------------------------

def _univariate(f: Poly, i: int, j: int) -> list:
    """Dehomogenize a binary form in variables i, j at x_j = 1; dense coeffs, low→high."""
    d = f.total_degree()
    coeffs = [f.ring.field.zero] * (d + 1)
    for e, c in f.terms.items():
        coeffs[e[i]] = c
    return coeffs


def _upoly_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _upoly_rem(a: list, b: list, F: FieldSpec) -> list:
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        q = F.norm(a[-1] * inv)
        shift = len(a) - len(b)
        for k, c in enumerate(b):
            a[shift + k] = F.norm(a[shift + k] - q * c)
        _upoly_trim(a)
    return a


def upoly_gcd(a: list, b: list, F: FieldSpec) -> list:
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _upoly_rem(a, b, F)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.norm(c * inv) for c in a]


def binary_form_gcd(forms: Sequence[Poly]) -> Poly:
    """Monic gcd of homogeneous forms in (at most) two variables.

    The gcd is 1 exactly when the forms have no common zero in P^1 over the
    algebraic closure.
    """
    forms = [f for f in forms]
    if not forms:
        raise ValueError("no forms given")
    ring = forms[0].ring
    support = set()
    for f in forms:
        if f.ring != ring:
            raise RingMismatchError("forms in different rings")
        if not f.is_homogeneous():
            raise ValueError(f"{f} is not homogeneous")
        support |= f.support()
    nz = [f for f in forms if f]
    if not nz:
        raise ValueError("all forms are zero")
    if len(support) > 2:
        raise ValueError("forms involve more than two variables")
    F = ring.field
    if not support:
        return ring.one()
    if len(support) == 1:
        (i,) = support
        m = min(min(e[i] for e in f.terms) for f in nz)
        e = [0] * ring.nvars
        e[i] = m
        return Poly(ring, {tuple(e): F.one})
    i, j = sorted(support)
    # the factor x_j^k is invisible after setting x_j = 1
    low_j = min(min(e[j] for e in f.terms) for f in nz)
    g = _upoly_trim(_univariate(nz[0], i, j))
    for f in nz[1:]:
        if len(g) == 1:
            break
        g = upoly_gcd(g, _univariate(f, i, j), F)
    dg = len(g) - 1
    out = {}
    for k, c in enumerate(g):
        if c:
            e = [0] * ring.nvars
            e[i] = k
            e[j] = dg - k + low_j
            out[tuple(e)] = c
    return Poly(ring, out).monic()


def linear_factor_roots(g: Poly) -> list:
    """Rational points (a:b) of P^1 where a binary form vanishes."""
    support = sorted(g.support())
    if not g or len(support) == 0:
        return []
    ring = g.ring
    if len(support) == 1:
        support = support + [k for k in range(ring.nvars) if k != support[0]][:1]
    i, j = support
    pts = []
    if all(e[j] >= 1 for e in g.terms):
        pts.append((1, 0))
    coeffs = _univariate(g, i, j)
    for r in rational_roots(coeffs, ring.field):
        pts.append((r, 1))
    return pts


def rational_roots(coeffs: list, F: FieldSpec) -> list:
    """Roots in the ground field of a dense univariate polynomial (low→high)."""
    coeffs = _upoly_trim(list(coeffs))
    if len(coeffs) <= 1:
        return []
    if F.is_prime:
        p = F.characteristic
        if p > 10 ** 6:
            raise ValueError("root search over large prime fields is not supported")
        out = []
        for r in range(p):
            v = 0
            for c in reversed(coeffs):
                v = (v * r + c) % p
            if v == 0:
                out.append(r)
        return out
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** k for k, c in enumerate(coeffs))
    roots = sympy.Poly(expr, x).ground_roots()
    return sorted(mpq(int(sympy.fraction(r)[0]), int(sympy.fraction(r)[1])) for r in roots)


# linear algebra over the field --------------------------------------------

def rref(rows: list, F: FieldSpec) -> tuple[list, list]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(M)) if M[k][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.norm(v * inv) for v in M[r]]
        for k in range(len(M)):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [F.norm(a - f * b) for a, b in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def matrix_rank(rows: list, F: FieldSpec = QQ) -> int:
    rows = [[F(v) for v in r] for r in rows]
    return len(rref(rows, F)[1])


def nullspace(rows: list, ncols: int, F: FieldSpec) -> list:
    """Basis of {v : rows · v = 0}, one vector per free column."""
    R, pivots = rref(rows, F) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.norm(-row[fc])
        basis.append(v)
    return basis


def linear_coeff_matrix(forms: Sequence[Poly]) -> list:
    """Rows = forms, columns = variables, entries = coefficients."""
    out = []
    for f in forms:
        if any(sum(e) != 1 for e in f.terms):
            raise ValueError(f"{f} is not a linear form")
        n = f.ring.nvars
        row = [f.ring.field.zero] * n
        for e, c in f.terms.items():
            row[e.index(1)] = c
        out.append(row)
    return out


def random_linear_forms(ring: PolyRing, count: int, seed: int, bound: int = 1000) -> list:
    rng = random.Random(seed)
    F = ring.field
    out = []
    for _ in range(count):
        if F.is_prime:
            coeffs = [rng.randrange(F.characteristic) for _ in range(ring.nvars)]
        else:
            coeffs = [rng.randint(-bound, bound) for _ in range(ring.nvars)]
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * ring.nvars
            e[i] = 1
            terms[tuple(e)] = c
        out.append(Poly.from_terms(ring, terms.items()))
    return out


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Quotient f / g, raising ``ValueError`` if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    F = ring.field
    key = ring.sort_key
    lg = g.lead_exp()
    inv = F.inv(g.terms[lg])
    rem = dict(f.terms)
    quot = {}
    while rem:
        le = max(rem, key=key)
        if any(a < b for a, b in zip(le, lg)):
            raise ValueError("not divisible")
        s = tuple(a - b for a, b in zip(le, lg))
        q = F.norm(rem[le] * inv)
        quot[s] = q
        for e, c in g.terms.items():
            ne = tuple(a + b for a, b in zip(e, s))
            v = F.norm(rem.get(ne, F.zero) - q * c)
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return Poly(ring, quot)
