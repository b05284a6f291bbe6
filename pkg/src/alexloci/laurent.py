"""Integral Laurent polynomials in n variables t1..tn and matrices over them."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

from sympy import ZZ
from sympy.polys.rings import ring

from .errors import InputError
from .exactla import rank_q

Exponent = tuple[int, ...]


class LaurentPoly:
    """An element of Z[t1^{+-1}, ..., tn^{+-1}], stored as exponent -> coefficient."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], int] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise InputError(f"exponent {e} does not have {nvars} entries")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPoly":
        """The variable t_{i+1} (zero-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    # basic protocol -----------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def coefficient(self, e: Sequence[int]) -> int:
        return self._terms.get(tuple(e), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        return self.is_monomial() and abs(next(iter(self._terms.values()))) == 1

    def is_associate_of_constant(self) -> bool:
        """True for 0 and for c * t^u."""
        return len(self._terms) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise InputError("Laurent polynomials in different numbers of variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise InputError("negative power of a non-unit Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly(self.nvars, {tuple(-x * (-k) for x in e): c ** (-k)})
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, u: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, u)): c for e, c in self._terms.items()})

    # evaluation ---------------------------------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a point of (Q^*)^n."""
        total = Fraction(0)
        for e, c in self._terms.items():
            v = Fraction(c)
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total

    def eval_mod_p(self, values: Sequence[int], p: int) -> int:
        total = 0
        for e, c in self._terms.items():
            v = c % p
            for x, k in zip(values, e):
                if k < 0 and x % p == 0:
                    raise InputError("negative power of a coordinate that vanishes mod p")
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    def value_at_one(self) -> int:
        return sum(self._terms.values())

    # normal forms -------------------------------------------------------
    def normalize(self) -> "LaurentPoly":
        """Unit-normalized associate: minimal exponents zero, leading coefficient positive."""
        if not self._terms:
            return self
        mins = [min(e[i] for e in self._terms) for i in range(self.nvars)]
        out = {tuple(a - b for a, b in zip(e, mins)): c for e, c in self._terms.items()}
        lead = max(out)
        if out[lead] < 0:
            out = {e: -c for e, c in out.items()}
        return LaurentPoly(self.nvars, out)

    def is_associate(self, other: "LaurentPoly") -> bool:
        return self.normalize() == other.normalize()

    def content(self) -> int:
        return reduce(igcd, self._terms.values(), 0)

    # text ---------------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {to_text(self)!r})"


# ---------------------------------------------------------------------------
# text form


def _monomial_text(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"t{i + 1}")
        elif k:
            parts.append(f"t{i + 1}^{k}")
    return "*".join(parts)


def to_text(f: LaurentPoly) -> str:
    """Human-readable form, terms in decreasing lex order, e.g. ``t1*t2*t3 - 1``."""
    if f.is_zero():
        return "0"
    out = []
    for e in sorted(f.terms, reverse=True):
        c = f.coefficient(e)
        mono = _monomial_text(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|t(\d+)|(\*\*|[-+*^()]))")


def parse_laurent(text: str, nvars: int | None = None) -> LaurentPoly:
    """Parse text such as ``t1*t2 - 1`` or ``(t1 - 1)^2*t2^-1``."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"unexpected character {text[pos:].strip()[:1]!r}", pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            if int(m.group(2)) < 1:
                raise InputError("variables are numbered from t1", start)
            tokens.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    if not tokens:
        raise InputError("empty polynomial")
    n = nvars if nvars is not None else max([int(v) for k, v, _ in tokens if k == "var"] or [0])
    for k, v, p in tokens:
        if k == "var" and int(v) > n:
            raise InputError(f"variable t{v} exceeds the {n} available variables", p)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("end", "", len(text))

    def take():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def expr():
        sign = 1
        if peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[:2] in (("op", "-"), ("op", "+")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek()[:2] == ("op", "*") or peek()[0] in ("var", "int") or peek()[:2] == ("op", "("):
            if peek()[:2] == ("op", "*"):
                take()
            acc = acc * factor()
        return acc

    def factor():
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            sign = 1
            if peek()[:2] in (("op", "-"), ("op", "+")):
                sign = -1 if take()[1] == "-" else 1
            tok = take()
            if tok[0] != "int":
                raise InputError("expected an integer exponent", tok[2])
            base = base ** (sign * int(tok[1]))
        return base

    def atom():
        tok = take()
        if tok[0] == "int":
            return LaurentPoly.constant(int(tok[1]), n)
        if tok[0] == "var":
            return LaurentPoly.variable(int(tok[1]) - 1, n)
        if tok[:2] == ("op", "("):
            inner = expr()
            close = take()
            if close[:2] != ("op", ")"):
                raise InputError("expected ')'", close[2])
            return inner
        if tok[:2] == ("op", "-"):
            return -atom()
        raise InputError(f"unexpected token {tok[1]!r}", tok[2])

    result = expr()
    if i != len(tokens):
        raise InputError(f"unexpected token {tokens[i][1]!r}", tokens[i][2])
    return result


# ---------------------------------------------------------------------------
# gcd


def _to_sympy(f: LaurentPoly, R):
    mins = [min(e[i] for e in f.terms) for i in range(f.nvars)]
    return R({tuple(a - b for a, b in zip(e, mins)): c for e, c in f.terms.items()})


def laurent_gcd(polys: Iterable[LaurentPoly], nvars: int | None = None) -> LaurentPoly:
    """Normalized gcd in the Laurent ring; 0 for an all-zero (or empty) family.

    Units are stripped before lifting to the polynomial ring, so the polynomial
    gcd there is the Laurent gcd up to a unit.
    """
    polys = list(polys)
    if nvars is None:
        if not polys:
            raise InputError("cannot infer the number of variables of an empty gcd")
        nvars = polys[0].nvars
    nonzero = [f for f in polys if not f.is_zero()]
    for f in polys:
        if f.nvars != nvars:
            raise InputError("gcd of Laurent polynomials in different rings")
    if not nonzero:
        return LaurentPoly(nvars, {})
    if nvars == 0:
        return LaurentPoly.constant(reduce(igcd, (f.value_at_one() for f in nonzero)), 0)
    if any(f.is_unit() for f in nonzero):
        return LaurentPoly.constant(1, nvars)
    R, *_ = ring(",".join(f"t{i + 1}" for i in range(nvars)), ZZ)
    # cheapest polynomials first, so the running gcd shrinks quickly
    nonzero.sort(key=lambda f: len(f.terms))
    g = None
    for f in nonzero:
        p = _to_sympy(f, R)
        g = p if g is None else g.gcd(p)
        if g.is_ground and abs(g.LC) == 1:
            return LaurentPoly.constant(1, nvars)
    result = LaurentPoly(nvars, {tuple(e): int(c) for e, c in g.terms()})
    return result.normalize()


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """f / g in the Laurent ring, raising when g does not divide f."""
    if g.is_zero():
        raise InputError("division by zero")
    if f.is_zero():
        return f
    R, *_ = ring(",".join(f"t{i + 1}" for i in range(f.nvars)), ZZ)
    fm = [min(e[i] for e in f.terms) for i in range(f.nvars)]
    gm = [min(e[i] for e in g.terms) for i in range(g.nvars)]
    q, r = _to_sympy(f, R).div(_to_sympy(g, R))
    if r:
        raise InputError("divisor does not divide dividend")
    shift = tuple(a - b for a, b in zip(fm, gm))
    return LaurentPoly(f.nvars, {tuple(e): int(c) for e, c in q.terms()}).shift(shift)


# ---------------------------------------------------------------------------
# geometry of supports


@dataclass(frozen=True)
class NewtonPolytope:
    vertices: tuple[Exponent, ...]
    is_segment: bool

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "is_segment": self.is_segment}


def _feasible(a: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Whether a x = b has a solution with x >= 0 (phase-one simplex, Bland's rule)."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        rows.append([sign * x for x in a[i]] + [Fraction(int(k == i)) for k in range(m)] + [sign * b[i]])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, written as reduced costs
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            if j < n or j == width:
                obj[j] -= rows[i][j]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][width] / rows[i][enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            break
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for k in range(m):
            if k != i and rows[k][enter]:
                f = rows[k][enter]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
        if obj[enter]:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, rows[i])]
        basis[i] = enter
    return obj[width] == 0


def _in_hull(point: Exponent, others: Sequence[Exponent]) -> bool:
    if not others:
        return False
    d = len(point)
    a = [[Fraction(o[k]) for o in others] for k in range(d)] + [[Fraction(1)] * len(others)]
    b = [Fraction(x) for x in point] + [Fraction(1)]
    return _feasible(a, b)


def newton_polytope(f: LaurentPoly) -> NewtonPolytope:
    if f.is_zero():
        raise InputError("the zero polynomial has no Newton polytope")
    pts = f.support()
    verts = tuple(p for p in pts if not _in_hull(p, [q for q in pts if q != p]))
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    collinear = rank_q(diffs) <= 1 if diffs else True
    return NewtonPolytope(verts, collinear)


def _det_int(u: Sequence[Sequence[int]]) -> int:
    n = len(u)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= u[i][perm[i]]
            if not prod:
                break
        total += -prod if inv % 2 else prod
    return total


def integer_determinant(u: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a small square integer matrix (Bareiss)."""
    a = [list(map(int, r)) for r in u]
    n = len(a)
    if n <= 3:
        return _det_int(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def monomial_substitute(f: LaurentPoly, u: Sequence[Sequence[int]]) -> LaurentPoly:
    """Apply t^v -> t^{U v} for a unimodular integer matrix U."""
    n = f.nvars
    if len(u) != n or any(len(r) != n for r in u):
        raise InputError("substitution matrix has the wrong shape")
    if abs(integer_determinant(u)) != 1:
        raise InputError("substitution matrix is not unimodular")
    return LaurentPoly(n, {tuple(sum(u[i][j] * e[j] for j in range(n)) for i in range(n)): c
                           for e, c in f.terms.items()})


# ---------------------------------------------------------------------------
# matrices


class LaurentMatrix:
    """A rows x cols matrix over the Laurent ring in ``nvars`` variables."""

    def __init__(self, nvars: int, entries: Sequence[Sequence[LaurentPoly]], cols: int | None = None):
        self.nvars = nvars
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)
        for r in self.entries:
            if len(r) != self.cols:
                raise InputError("ragged Laurent matrix")
            for f in r:
                if f.nvars != nvars:
                    raise InputError("matrix entry lives in the wrong ring")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentMatrix) and other.nvars == self.nvars
                and other.cols == self.cols and other.entries == self.entries)

    def eval_mod_p(self, values: Sequence[int], p: int) -> list[list[int]]:
        if len(values) != self.nvars:
            raise InputError("evaluation point has the wrong number of coordinates")
        if any(v % p == 0 for v in values):
            raise InputError("evaluation point must have nonzero coordinates")
        return [[f.eval_mod_p(values, p) for f in row] for row in self.entries]

    def to_text(self) -> list[list[str]]:
        return [[to_text(f) for f in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.to_text()})"


def eval_matrix(m: LaurentMatrix, values: Sequence[int], p: int) -> list[list[int]]:
    return m.eval_mod_p(values, p)


def determinant(entries: Sequence[Sequence[LaurentPoly]], nvars: int) -> LaurentPoly:
    """Division-free determinant by memoised Laplace expansion along rows."""
    k = len(entries)
    if k == 0:
        return LaurentPoly.constant(1, nvars)
    memo: dict[tuple[int, frozenset], LaurentPoly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> LaurentPoly:
        if row == k:
            return LaurentPoly.constant(1, nvars)
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = LaurentPoly(nvars, {})
        for idx, c in enumerate(cols):
            a = entries[row][c]
            if a.is_zero():
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
            if sub.is_zero():
                continue
            term = a * sub
            acc = acc - term if idx % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(k)))


def factor_laurent(f: LaurentPoly) -> tuple[int, list[tuple[LaurentPoly, int]]]:
    """Factor into an integer content and normalized irreducible non-unit factors."""
    if f.is_zero():
        raise InputError("cannot factor the zero polynomial")
    if f.nvars == 0:
        return f.value_at_one(), []
    R, *_ = ring(",".join(f"t{i + 1}" for i in range(f.nvars)), ZZ)
    content, factors = _to_sympy(f, R).factor_list()
    out = []
    for g, k in factors:
        lp = LaurentPoly(f.nvars, {tuple(e): int(c) for e, c in g.terms()})
        if lp.is_monomial():
            continue
        norm = lp.normalize()
        if norm != lp:
            if lp == -norm and k % 2:
                content = -content
        out.append((norm, k))
    out.sort(key=lambda fk: sorted(fk[0].terms.items()))
    return int(content), out
