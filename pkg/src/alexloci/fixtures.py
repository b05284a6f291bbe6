"""Named presentations used throughout the examples and tests."""

from __future__ import annotations

from .errors import InputError
from .presentations import GroupPresentation, Word, commutator


def _gens(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def free_group(n: int) -> GroupPresentation:
    return GroupPresentation(_gens(n), [])


def free_abelian(n: int) -> GroupPresentation:
    x = [Word.generator(i) for i in range(n)]
    return GroupPresentation(_gens(n), [commutator(x[i], x[j]) for i in range(n) for j in range(i + 1, n)])


def pencil(n: int) -> GroupPresentation:
    """Complement of n concurrent affine lines: [x_i, x_1...x_n] for i < n."""
    x = [Word.generator(i) for i in range(n)]
    total = Word()
    for w in x:
        total = total * w
    return GroupPresentation(_gens(n), [commutator(x[i], total) for i in range(n - 1)])


def near_pencil(n: int) -> GroupPresentation:
    """n-1 parallel lines and one transverse line: Z x F_{n-1}, transverse line last."""
    x = [Word.generator(i) for i in range(n)]
    return GroupPresentation(_gens(n), [commutator(x[i], x[n - 1]) for i in range(n - 1)])


def surface_group(g: int) -> GroupPresentation:
    names = []
    rel = Word()
    for i in range(g):
        names += [f"a{i + 1}", f"b{i + 1}"]
        rel = rel * commutator(Word.generator(2 * i), Word.generator(2 * i + 1))
    return GroupPresentation(names, [rel])


def baumslag_solitar_12() -> GroupPresentation:
    return GroupPresentation.parse("<x1,x2 | x1 x2 x1^-1 x2^-2>")


def heisenberg() -> GroupPresentation:
    return GroupPresentation.parse("<x1,x2 | [[x1,x2],x1], [[x1,x2],x2]>")


def quadric_resonance_group() -> GroupPresentation:
    """Four generators, three commutator relators; first resonance is a quadric cone."""
    return GroupPresentation.parse(
        "<x1,x2,x3,x4 | [x1,x2], [x1,x4][x2^-2,x3], [x1^-1,x3][x2,x4]>")


def cyclic(n: int) -> GroupPresentation:
    return GroupPresentation(["x"], [Word.generator(0, n)])


def pure_braid(n: int) -> GroupPresentation:
    """Artin's presentation of the pure braid group P_n, built as iterated semidirect products.

    Generators A_ij (i < j) are ordered A12, A13, A23, A14, A24, A34, ... so that
    their product in this order is the full twist. For each j, every A_rs with
    s < j acts on the free group <A_1j, ..., A_{j-1}j> by Artin's formulas.
    """
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    index = {pr: k for k, pr in enumerate(pairs)}

    def a(i, j, e=1):
        return Word.generator(index[(i, j)], e)

    rels = []
    for j in range(3, n + 1):
        for s in range(2, j):
            for r in range(1, s):
                for i in range(1, j):
                    conj = a(r, s, -1) * a(i, j) * a(r, s)
                    if i < r or i > s:
                        image = a(i, j)
                    elif i == s:
                        image = a(r, j) * a(i, j) * a(r, j, -1)
                    elif i == r:
                        image = a(r, j) * a(s, j) * a(i, j) * a(s, j, -1) * a(r, j, -1)
                    else:  # r < i < s
                        c = a(r, j) * a(s, j) * a(r, j, -1) * a(s, j, -1)
                        image = c * a(i, j) * c.inverse()
                    rels.append(conj * image.inverse())
    names = [f"a{i}{j}" if n < 10 else f"a{i}_{j}" for i, j in pairs]
    return GroupPresentation(names, rels)


def full_twist(n: int) -> Word:
    """Product of the pure braid generators in their presentation order."""
    w = Word()
    for k in range(n * (n - 1) // 2):
        w = w * Word.generator(k)
    return w


_FAMILIES = {
    "free": free_group,
    "abelian": free_abelian,
    "pencil": pencil,
    "near-pencil": near_pencil,
    "surface": surface_group,
    "cyclic": cyclic,
    "pure-braid": pure_braid,
}

_SINGLE = {
    "baumslag-solitar": baumslag_solitar_12,
    "heisenberg": heisenberg,
    "quadric": quadric_resonance_group,
}


def fixture_names() -> list[str]:
    return sorted(f"{k}:N" for k in _FAMILIES) + sorted(_SINGLE)


def named(text: str) -> GroupPresentation:
    """Look up a fixture such as 'pencil:4' or 'heisenberg'."""
    name, _, arg = text.partition(":")
    if name in _SINGLE and not arg:
        return _SINGLE[name]()
    if name in _FAMILIES and arg:
        try:
            n = int(arg)
        except ValueError:
            n = -1
        if n < 1:
            raise InputError(f"fixture {name} needs a positive integer parameter")
        return _FAMILIES[name](n)
    raise InputError(f"unknown fixture {text!r}; known: {', '.join(fixture_names())}")
