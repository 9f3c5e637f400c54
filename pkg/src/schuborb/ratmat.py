"""Tiny exact rational matrices: immutable tuples of Fractions.

Dimensions here stay in single digits, so naive algorithms are fine; what
matters is that unipotence and nilpotence tests are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ZeroDivisionError):
    pass


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((Fraction(0),) * c for _ in range(r))


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    if ca == 0:
        return zeros(ra, cb)
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def scale(c, a: Matrix) -> Matrix:
    f = Fraction(c)
    return tuple(tuple(f * x for x in row) for row in a)


def inverse(a: Matrix) -> Matrix:
    n, c = shape(a)
    if n != c:
        raise ValueError("only square matrices invert")
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        f = work[col][col]
        work[col] = [x / f for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                g = work[r][col]
                work[r] = [x - g * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def power(a: Matrix, e: int) -> Matrix:
    n, c = shape(a)
    if n != c:
        raise ValueError("only square matrices take powers")
    if e < 0:
        return power(inverse(a), -e)
    out = identity(n)
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def is_identity(a: Matrix) -> bool:
    n, c = shape(a)
    return n == c and a == identity(n)


def is_nilpotent(a: Matrix) -> bool:
    n, c = shape(a)
    if n != c:
        raise ValueError("nilpotence needs a square matrix")
    if n == 0:
        return True
    return is_zero(power(a, n))


def is_unipotent(a: Matrix) -> bool:
    n, _ = shape(a)
    return is_nilpotent(sub(a, identity(n)))


def to_json(a: Matrix) -> list[list[list[int]]]:
    return [[[x.numerator, x.denominator] for x in row] for row in a]


def from_json(data: Sequence[Sequence[Sequence[int]]]) -> Matrix:
    return tuple(tuple(Fraction(n, d) for n, d in row) for row in data)
