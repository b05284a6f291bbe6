"""Finite group presentations, free words, Fox calculus and abelianization."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .exactla import hermite_normal_form, smith_normal_form
from .laurent import LaurentMatrix, LaurentPoly

Syllable = tuple[int, int]


@dataclass(frozen=True)
class Word:
    """A freely reduced word, stored as syllables (generator index, nonzero exponent)."""

    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def from_syllables(cls, items: Iterable[Sequence[int]]) -> "Word":
        stack: list[list[int]] = []
        for g, e in items:
            if e == 0:
                continue
            if stack and stack[-1][0] == g:
                stack[-1][1] += e
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([g, e])
        return cls(tuple((g, e) for g, e in stack))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        """From signed one-based letters, e.g. [1, 2, -1, -2] is [x1, x2]."""
        items = []
        for a in letters:
            if a == 0:
                raise InputError("letter 0 is not a generator")
            items.append((abs(a) - 1, 1 if a > 0 else -1))
        return cls.from_syllables(items)

    @classmethod
    def generator(cls, i: int, e: int = 1) -> "Word":
        return cls.from_syllables([(i, e)])

    def letters(self) -> list[int]:
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([s * (g + 1)] * abs(e))
        return out

    def __mul__(self, other: "Word") -> "Word":
        return Word.from_syllables(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def exponent_sums(self, q: int) -> list[int]:
        out = [0] * q
        for g, e in self.syllables:
            out[g] += e
        return out

    def max_generator(self) -> int:
        return max((g for g, _ in self.syllables), default=-1)

    def evaluate_mod_p(self, values: Sequence[int], p: int) -> int:
        v = 1
        for g, e in self.syllables:
            v = v * pow(values[g], e, p) % p
        return v

    def evaluate_cyclic(self, residues: Sequence[int], n: int) -> int:
        return sum(residues[g] * e for g, e in self.syllables) % n

    def text(self, names: Sequence[str]) -> str:
        if not self.syllables:
            return "1"
        return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self.syllables)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


class GroupRingElement:
    """A finitely supported Z-combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def evaluate_mod_p(self, values: Sequence[int], p: int) -> int:
        return sum(c * w.evaluate_mod_p(values, p) for w, c in self.terms.items()) % p

    def text(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0].letters())):
            body = w.text(names)
            if abs(c) != 1:
                body = f"{abs(c)}*{body}" if body != "1" else str(abs(c))
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"GroupRingElement({self.text([f'x{i + 1}' for i in range(64)])})"


def fox_derivative(word: Word, j: int) -> GroupRingElement:
    """Fox derivative with respect to generator j (zero-based)."""
    out: dict[Word, int] = {}
    prefix = Word()
    for a in word.letters():
        g = abs(a) - 1
        step = Word.generator(g, 1 if a > 0 else -1)
        if a > 0:
            if g == j:
                out[prefix] = out.get(prefix, 0) + 1
            prefix = prefix * step
        else:
            prefix = prefix * step
            if g == j:
                out[prefix] = out.get(prefix, 0) - 1
    return GroupRingElement(out)


# ---------------------------------------------------------------------------
# parsing

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(("ident", m.group(0), i))
            i = m.end()
            continue
        if ch.isdigit() or (ch in "+-" and i + 1 < len(text) and text[i + 1].isdigit()):
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch in "<>|,()[]^":
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise InputError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


def _split_ident(name: str, gens: Mapping[str, int], pos: int) -> list[int]:
    """Split a run like ``x1x2x3`` into generator indices when the split is unique."""
    if name in gens:
        return [gens[name]]
    n = len(name)
    ways: list[list[list[int]]] = [[] for _ in range(n + 1)]
    ways[n] = [[]]
    for i in range(n - 1, -1, -1):
        for g, idx in gens.items():
            if name.startswith(g, i):
                for rest in ways[i + len(g)]:
                    ways[i].append([idx] + rest)
                    if len(ways[i]) > 1:
                        break
            if len(ways[i]) > 1:
                break
    if not ways[0]:
        raise InputError(f"unknown generator {name!r}", pos)
    if len(ways[0]) > 1:
        raise InputError(f"ambiguous juxtaposition {name!r}", pos)
    return ways[0][0]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.gens: dict[str, int] = {}

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] if tok[0] != "end" else "end of input"
            raise InputError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def presentation(self) -> "GroupPresentation":
        self.take("op", "<")
        names = []
        if self.peek()[:2] == ("op", "|"):
            raise InputError("empty generator list", self.peek()[2])
        while True:
            tok = self.take("ident")
            if tok[1] in self.gens:
                raise InputError(f"duplicate generator {tok[1]!r}", tok[2])
            self.gens[tok[1]] = len(names)
            names.append(tok[1])
            if self.peek()[:2] == ("op", ","):
                self.take()
                continue
            break
        self.take("op", "|")
        rels = []
        if self.peek()[:2] != ("op", ">"):
            while True:
                rels.append(self.word())
                if self.peek()[:2] == ("op", ","):
                    self.take()
                    continue
                break
        self.take("op", ">")
        self.take("end")
        return GroupPresentation(names, rels)

    def word(self) -> Word:
        w = self.term()
        while self.peek()[0] == "ident" or self.peek()[:2] in (("op", "("), ("op", "[")) \
                or self.peek()[:2] == ("int", "1"):
            w = w * self.term()
        return w

    def term(self) -> Word:
        head, base = self.factor()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take("int")
            k = int(tok[1])
            if k == 0:
                raise InputError("exponent 0 is not allowed", tok[2])
            base = base ** k
        return head * base

    def factor(self) -> tuple[Word, Word]:
        """(prefix, base): a following exponent applies to ``base`` only."""
        tok = self.peek()
        if tok[0] == "ident":
            self.take()
            idx = _split_ident(tok[1], self.gens, tok[2])
            # an exponent binds to the last generator of a juxtaposed run
            head = Word.from_syllables([(g, 1) for g in idx[:-1]])
            return head, Word.generator(idx[-1])
        if tok[:2] == ("int", "1"):
            self.take()
            return Word(), Word()
        if tok[:2] == ("op", "("):
            self.take()
            w = self.word()
            self.take("op", ")")
            return Word(), w
        if tok[:2] == ("op", "["):
            self.take()
            u = self.word()
            self.take("op", ",")
            v = self.word()
            self.take("op", "]")
            return Word(), commutator(u, v)
        got = tok[1] if tok[0] != "end" else "end of input"
        raise InputError(f"unexpected {got!r}", tok[2])


def parse_presentation(text: str) -> "GroupPresentation":
    return _Parser(text).presentation()


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Abelianization:
    """H1 of a presentation: free rank, torsion, and generator images.

    ``images[j]`` are the coordinates of generator j in the chosen basis of
    H1 modulo torsion. ``torsion_images[j]`` are its residues modulo each
    torsion coefficient.
    """

    rank: int
    torsion: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]
    torsion_images: tuple[tuple[int, ...], ...]


class GroupPresentation:
    def __init__(self, generators: Sequence[str], relators: Sequence[Word]):
        generators = list(generators)
        if not generators:
            raise InputError("empty generator list")
        if len(set(generators)) != len(generators):
            raise InputError("duplicate generator names")
        for name in generators:
            if not _IDENT.fullmatch(name):
                raise InputError(f"invalid generator name {name!r}")
        self.generators = tuple(generators)
        self.relators = tuple(relators)
        for r in self.relators:
            if r.max_generator() >= len(self.generators):
                raise InputError("relator uses an undeclared generator")

    @classmethod
    def parse(cls, text: str) -> "GroupPresentation":
        return parse_presentation(text)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupPresentation) and self.generators == other.generators
                and self.relators == other.relators)

    def __hash__(self):
        return hash((self.generators, self.relators))

    def serialize(self) -> str:
        rels = ", ".join(r.text(self.generators) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"

    __str__ = serialize

    def __repr__(self) -> str:
        return f"GroupPresentation({self.serialize()!r})"

    def with_relators(self, extra: Iterable[Word]) -> "GroupPresentation":
        return GroupPresentation(self.generators, list(self.relators) + list(extra))

    def exponent_matrix(self) -> list[list[int]]:
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def has_commutator_relators(self) -> bool:
        return all(not any(row) for row in self.exponent_matrix())

    def fox_jacobian(self) -> list[list[GroupRingElement]]:
        return [[fox_derivative(r, j) for j in range(self.ngens)] for r in self.relators]

    @cached_property
    def abelianization(self) -> Abelianization:
        q = self.ngens
        snf = smith_normal_form(self.exponent_matrix(), transforms=True, ncols=q)
        right = snf.right
        r = snf.rank
        free_cols = [[right[j][k] for j in range(q)] for k in range(r, q)]
        basis_rows = hermite_normal_form(free_cols, q) if free_cols else []
        images = tuple(tuple(row[j] for row in basis_rows) for j in range(q))
        tors_idx = [k for k in range(r) if snf.factors[k] > 1]
        torsion = tuple(snf.factors[k] for k in tors_idx)
        timages = tuple(tuple(right[j][k] % snf.factors[k] for k in tors_idx) for j in range(q))
        return Abelianization(q - r, torsion, images, timages)

    @property
    def b1(self) -> int:
        return self.abelianization.rank

    def word_image(self, w: Word) -> tuple[int, ...]:
        ab = self.abelianization
        out = [0] * ab.rank
        for g, e in w.syllables:
            for k, x in enumerate(ab.images[g]):
                out[k] += e * x
        return tuple(out)

    def ring_image(self, elt: GroupRingElement) -> LaurentPoly:
        n = self.abelianization.rank
        out: dict[tuple[int, ...], int] = {}
        for w, c in elt.terms.items():
            e = self.word_image(w)
            out[e] = out.get(e, 0) + c
        return LaurentPoly(n, out)

    def alexander_matrix(self) -> LaurentMatrix:
        """The Fox Jacobian pushed to the group ring of H1 modulo torsion (relators x generators)."""
        n = self.abelianization.rank
        rows = [[self.ring_image(fox_derivative(r, j)) for j in range(self.ngens)] for r in self.relators]
        return LaurentMatrix(n, rows, cols=self.ngens)

    def evaluated_jacobian(self, values: Sequence[int], p: int) -> list[list[int]]:
        """Fox Jacobian at a character given by generator values in F_p^*."""
        jac = self.fox_jacobian()
        return [[e.evaluate_mod_p(values, p) for e in row] for row in jac]

    def permutation_lift(self, residues: Sequence[int], n: int) -> list[list[int]]:
        return permutation_lift(self, residues, n)


def _shift_matrix(k: int, n: int) -> list[list[int]]:
    return [[int((i + k) % n == j) for j in range(n)] for i in range(n)]


def check_epimorphism(p: GroupPresentation, residues: Sequence[int], n: int) -> list[int]:
    if n < 1:
        raise InputError("cyclic modulus must be positive")
    if len(residues) != p.ngens:
        raise InputError("one residue per generator is required")
    res = [int(x) % n for x in residues]
    g = n
    for x in res:
        g = gcd(g, x)
    if g != 1:
        raise InputError("the residues do not generate Z_n")
    for idx, r in enumerate(p.relators):
        if r.evaluate_cyclic(res, n):
            raise InputError(f"relator {idx + 1} does not map to 0 in Z_{n}")
    return res


def permutation_lift(p: GroupPresentation, residues: Sequence[int], n: int) -> list[list[int]]:
    """Integer matrix (m*n x q*n) replacing each group element by a cyclic permutation matrix.

    Its cokernel is H1 of the n-fold cyclic cover plus a free summand of rank n-1.
    """
    res = check_epimorphism(p, residues, n)
    m, q = p.nrels, p.ngens
    out = [[0] * (q * n) for _ in range(m * n)]
    for i, r in enumerate(p.relators):
        for j in range(q):
            for w, c in fox_derivative(r, j).terms.items():
                k = w.evaluate_cyclic(res, n)
                for a in range(n):
                    out[i * n + a][j * n + (a + k) % n] += c
    return out
