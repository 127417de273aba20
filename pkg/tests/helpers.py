"""Random builders shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from modrep.classify import DUAL_UNIT_TANGENT, SYMPLECTIC, UNIT_TANGENT
from modrep.cohomology import Cocycle, coboundary, left_h_to_right, nontrivial_h_class
from modrep.exactla import RationalMatrix
from modrep.presentation import GroupWord
from modrep.reps import direct_sum_with_trivial, symplectic_rep
from modrep.surface import Surface
from modrep.suspension import (
    SuspensionSpec,
    affine_suspension,
    coaffine_suspension,
    double_suspension,
    gl_twist,
)

# (criterion number, line) pairs printed at the end of a pytest run
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def random_word(rng: random.Random, names, length: int) -> GroupWord:
    return GroupWord((rng.choice(names), rng.choice((-2, -1, 1, 2))) for _ in range(length))


def random_matrix(rng: random.Random, rows: int, cols: int, lo=-3, hi=3) -> RationalMatrix:
    return RationalMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng: random.Random, n: int) -> RationalMatrix:
    """Product of a random unit lower and unit upper triangular matrix, then a permutation."""
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)]
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    p = RationalMatrix([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])
    return p @ RationalMatrix(lower) @ RationalMatrix(upper)


def random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        m = random_matrix(rng, n, n)
        if m.det() != 0:
            return m


def nontrivial_right(s: Surface) -> Cocycle:
    return left_h_to_right(nontrivial_h_class(s))


def mixed_left(rng, s: Surface, b: int, nontrivial: bool) -> Cocycle:
    """Left cocycle with b columns; first column carries the class when asked."""
    h = symplectic_rep(s)
    f = nontrivial_h_class(s)
    n = h.dimension
    vals = coboundary(h, random_matrix(rng, n, b)).values
    if nontrivial:
        c = rng.choice([1, 2, -1, Fraction(1, 2), 3])
        vals = {k: v + RationalMatrix.block([[f.values[k].scale(c), RationalMatrix.zeros(n, b - 1)]]) for k, v in vals.items()}
    return Cocycle(h, "left", vals)


def mixed_right(rng, s: Surface, a: int, nontrivial: bool) -> Cocycle:
    h = symplectic_rep(s)
    phi = nontrivial_right(s)
    n = h.dimension
    vals = coboundary(h, random_matrix(rng, a, n), "right").values
    if nontrivial:
        c = rng.choice([1, 2, -1, Fraction(1, 3), -2])
        vals = {k: v + RationalMatrix.block([[phi.values[k].scale(c)], [RationalMatrix.zeros(a - 1, n)]]) for k, v in vals.items()}
    return Cocycle(h, "right", vals)


def random_double_suspension(rng, s: Surface, max_side: int = 2):
    """Random consistent double suspension over H; returns (rep, expected verdict, trivial dim)."""
    a = rng.randint(0, max_side)
    b = rng.randint(0, max_side)
    side = rng.choice(["none", "left", "right"])
    if side == "left" and b == 0:
        side = "none"
    if side == "right" and a == 0:
        side = "none"
    h = symplectic_rep(s)
    phi1 = mixed_right(rng, s, a, side == "right") if a else Cocycle(h, "right", {k: RationalMatrix.zeros(0, h.dimension) for k in h.images})
    phi2 = mixed_left(rng, s, b, side == "left") if b else Cocycle(h, "left", {k: RationalMatrix.zeros(h.dimension, 0) for k in h.images})
    rep = double_suspension(SuspensionSpec(h, a, b, phi1, phi2))
    verdict = {"none": SYMPLECTIC, "right": UNIT_TANGENT, "left": DUAL_UNIT_TANGENT}[side]
    k = a + b - (0 if side == "none" else 1)
    return rep, verdict, k


CONSTRUCTIONS = ("direct_sum", "coboundary_affine", "coboundary_coaffine", "gl_twisted", "nontrivial_affine", "nontrivial_coaffine", "double")


def random_construction(rng, g: int, kind: str):
    """One randomized construction padded to dimension at most 3g-3.

    Returns (rep, expected verdict, trivial dimension).
    """
    s = Surface(g)
    h = symplectic_rep(s)
    n = 2 * g
    room = 3 * g - 3 - n
    if kind == "direct_sum":
        k = rng.randint(0, room)
        return direct_sum_with_trivial(h, k), SYMPLECTIC, k
    if kind == "coboundary_affine":
        b = rng.randint(1, room)
        rep = affine_suspension(h, coboundary(h, random_matrix(rng, n, b)), b)
        k = rng.randint(0, room - b)
        return direct_sum_with_trivial(rep, k), SYMPLECTIC, b + k
    if kind == "coboundary_coaffine":
        a = rng.randint(1, room)
        rep = coaffine_suspension(h, coboundary(h, random_matrix(rng, a, n), "right"), a)
        k = rng.randint(0, room - a)
        return direct_sum_with_trivial(rep, k), SYMPLECTIC, a + k
    if kind == "gl_twisted":
        b = rng.randint(1, room)
        phi = mixed_left(rng, s, b, rng.random() < 0.5)
        nontriv = not phi_is_coboundary(phi)
        B = random_invertible(rng, b)
        rep = affine_suspension(h, gl_twist(phi, B), b)
        return rep, (DUAL_UNIT_TANGENT if nontriv else SYMPLECTIC), b - (1 if nontriv else 0)
    if kind == "nontrivial_affine":
        b = rng.randint(1, room)
        rep = affine_suspension(h, mixed_left(rng, s, b, True), b)
        return rep, DUAL_UNIT_TANGENT, b - 1
    if kind == "nontrivial_coaffine":
        a = rng.randint(1, room)
        rep = coaffine_suspension(h, mixed_right(rng, s, a, True), a)
        return rep, UNIT_TANGENT, a - 1
    if kind == "double":
        while True:
            rep, verdict, k = random_double_suspension(rng, s, max_side=room)
            if rep.dimension <= 3 * g - 3:
                return rep, verdict, k
    raise ValueError(kind)


def phi_is_coboundary(phi) -> bool:
    from modrep.cohomology import is_coboundary

    return is_coboundary(phi) is not None


def swap(verdict: str) -> str:
    return {UNIT_TANGENT: DUAL_UNIT_TANGENT, DUAL_UNIT_TANGENT: UNIT_TANGENT}.get(verdict, verdict)


def fraction_rank(rows) -> int:
    """Gaussian elimination over Fraction; an oracle independent of exactla."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def fraction_matmul(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def random_nilpotent(rng, n: int):
    """Conjugate of a random strictly upper triangular matrix, as nested Fractions."""
    u = [[(rng.choice([0, 0, 1, -1, 2]) if j > i else 0) for j in range(n)] for i in range(n)]
    p = random_unimodular(rng, n)
    pl = [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in p.tolist()]
    pinv = [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in p.inverse().tolist()]
    return fraction_matmul(fraction_matmul(pl, u), pinv)


def rank_of_powers_partition(n_rows):
    """Jordan graded dims from ranks of N^j, computed with fraction_rank."""
    n = len(n_rows)
    ranks = [n]
    power = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    while ranks[-1] > 0:
        power = fraction_matmul(power, n_rows)
        ranks.append(fraction_rank(power))
        if ranks[-1] == ranks[-2]:
            break
    return tuple(ranks[k - 1] - ranks[k] for k in range(1, len(ranks)) if ranks[k - 1] - ranks[k] > 0)
