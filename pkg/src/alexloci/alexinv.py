"""Alexander polynomial, Alexander norm and Newton-polytope obstructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .errors import CapExceeded, InputError, cap
from .laurent import LaurentMatrix, LaurentPoly, NewtonPolytope, determinant, laurent_gcd, newton_polytope
from .presentations import GroupPresentation


def count_minors(rows: int, cols: int, size: int) -> int:
    if size > rows or size > cols:
        return 0
    return comb(rows, size) * comb(cols, size)


def iter_minors(matrix: LaurentMatrix, size: int, limit: int | None = None) -> Iterator[LaurentPoly]:
    """All size x size minors, raising CapExceeded past ``limit``."""
    limit = cap("minors") if limit is None else limit
    total = count_minors(matrix.rows, matrix.cols, size)
    if total > limit:
        raise CapExceeded(f"{total} minors of size {size} exceed the cap of {limit}")
    for cols in itertools.combinations(range(matrix.cols), size):
        for rows in itertools.combinations(range(matrix.rows), size):
            sub = [[matrix.entries[i][j] for j in cols] for i in rows]
            yield determinant(sub, matrix.nvars)


def elementary_ideal_gcd(matrix: LaurentMatrix, i: int, limit: int | None = None) -> LaurentPoly:
    """gcd of the generators of the i-th elementary ideal of coker(matrix).

    The ideal is generated by the (cols - i)-minors; it is the unit ideal when
    i >= cols and zero when cols - i exceeds the number of rows.
    """
    n = matrix.nvars
    size = matrix.cols - i
    if size <= 0:
        return LaurentPoly.constant(1, n)
    if size > matrix.rows:
        return LaurentPoly(n, {})
    minors = iter_minors(matrix, size, limit)

    def early_stop():
        # stream minors into the gcd and stop once it is a unit
        acc: list[LaurentPoly] = []
        g = LaurentPoly(n, {})
        for f in minors:
            if f.is_zero():
                continue
            if f.is_unit():
                return LaurentPoly.constant(1, n)
            acc.append(f)
            if len(acc) >= 16:
                g = laurent_gcd([g] + acc, n)
                acc = []
                if g.is_unit():
                    return g
        return laurent_gcd([g] + acc, n)

    return early_stop()


def alexander_polynomial(p: GroupPresentation, limit: int | None = None) -> LaurentPoly:
    """Normalized gcd of the codimension-one minors of the Alexander matrix."""
    return elementary_ideal_gcd(p.alexander_matrix(), 1, limit)


def alexander_norm(delta: LaurentPoly, phi: Sequence[int]) -> int:
    """Width of the support of delta in the direction phi."""
    if delta.is_zero():
        raise InputError("the Alexander norm is undefined for the zero polynomial")
    if len(phi) != delta.nvars:
        raise InputError("class has the wrong number of coordinates")
    vals = [sum(a * b for a, b in zip(e, phi)) for e in delta.support()]
    return max(vals) - min(vals)


@dataclass(frozen=True)
class NewtonReport:
    delta: LaurentPoly
    b1: int
    polytope: NewtonPolytope | None
    kahler_obstructed: bool
    quasikahler_obstructed: bool

    def to_json(self) -> dict:
        return {
            "delta": str(self.delta),
            "b1": self.b1,
            "newton": self.polytope.to_json() if self.polytope else None,
            "kahler_obstructed": self.kahler_obstructed,
            "quasikahler_obstructed": self.quasikahler_obstructed,
        }


def newton_segment_report(p: GroupPresentation, limit: int | None = None) -> NewtonReport:
    """Kahler and quasi-Kahler obstructions read off the Alexander polynomial.

    A Kahler group has constant Alexander polynomial (up to units); for a
    quasi-Kahler group with b1 != 2 and nonzero polynomial the Newton polytope
    is a segment or a point.
    """
    delta = alexander_polynomial(p, limit)
    b1 = p.b1
    poly = None if delta.is_zero() else newton_polytope(delta)
    kahler = not delta.is_associate_of_constant()
    quasi = b1 != 2 and poly is not None and not poly.is_segment
    return NewtonReport(delta, b1, poly, kahler, quasi)
