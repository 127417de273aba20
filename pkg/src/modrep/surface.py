"""Surface combinatorics for Σ_{g,1}: homology basis, pairing, curve systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .exactla import RationalMatrix, Subspace


class DimensionMismatch(ValueError):
    pass


class ChainTooLong(ValueError):
    pass


class InvalidSurface(ValueError):
    pass


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary_components: int = 1

    def __post_init__(self):
        if self.genus < 3:
            raise InvalidSurface(f"genus must be at least 3, got {self.genus}")
        if self.boundary_components != 1:
            raise InvalidSurface("only one boundary component is supported")

    @property
    def rank(self) -> int:
        return 2 * self.genus


def basis_vector(g: int, kind: str, i: int) -> tuple[int, ...]:
    """x_i or y_i (1-based) in the basis (x_1..x_g, y_1..y_g)."""
    v = [0] * (2 * g)
    v[(i - 1) + (g if kind == "y" else 0)] = 1
    return tuple(v)


def pairing_matrix(g: int) -> RationalMatrix:
    """J with u^T J v = <u, v> and <x_i, y_i> = 1."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    return RationalMatrix(rows)


def intersection_pairing(s: Surface, u: Sequence[int], v: Sequence[int]) -> int:
    g = s.genus
    if len(u) != 2 * g or len(v) != 2 * g:
        raise DimensionMismatch(f"expected vectors of length {2 * g}")
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def is_primitive(v: Sequence[int]) -> bool:
    d = 0
    for x in v:
        d = gcd(d, int(x))
    return d == 1


@dataclass(frozen=True)
class CurveClass:
    name: str
    homology: tuple[int, ...]
    nonseparating: bool = True

    def __post_init__(self):
        object.__setattr__(self, "homology", tuple(int(x) for x in self.homology))
        if self.nonseparating and not is_primitive(self.homology):
            raise ValueError(f"curve {self.name}: nonseparating class must be primitive")
        if not self.nonseparating and any(self.homology):
            raise ValueError(f"curve {self.name}: separating class must be zero")


def chain_class(g: int, i: int) -> tuple[int, ...]:
    """i-th class (1-based) of x_1, y_1, x_1+x_2, y_2, x_2+x_3, ..."""
    if i == 1:
        return basis_vector(g, "x", 1)
    k = (i + 1) // 2
    if i % 2 == 0:
        return basis_vector(g, "y", k)
    a, b = basis_vector(g, "x", k - 1), basis_vector(g, "x", k)
    return tuple(p + q for p, q in zip(a, b))


def standard_chain(s: Surface, k: int) -> list[CurveClass]:
    if k > 2 * s.genus:
        raise ChainTooLong(f"a chain in genus {s.genus} has at most {2 * s.genus} curves")
    if k < 1:
        raise ValueError("chain length must be positive")
    return [CurveClass(f"a{i}", chain_class(s.genus, i)) for i in range(1, k + 1)]


def is_standard_chain(s: Surface, classes: Sequence[Sequence[int]]) -> bool:
    """Pairing pattern of a chain plus linear independence."""
    k = len(classes)
    for i in range(k):
        for j in range(i + 1, k):
            p = intersection_pairing(s, classes[i], classes[j])
            if j == i + 1 and abs(p) != 1:
                return False
            if j > i + 1 and p != 0:
                return False
    return Subspace(2 * s.genus, classes).dim == k


@dataclass(frozen=True)
class CurveSystem:
    surface: Surface
    curves: tuple[CurveClass, ...]
    geometric_intersections: tuple[tuple[int, ...], ...]
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.curves)
        gi = self.geometric_intersections
        if len(gi) != n or any(len(r) != n for r in gi):
            raise DimensionMismatch("intersection matrix does not match the curve count")
        for i in range(n):
            for j in range(n):
                if gi[i][j] != gi[j][i]:
                    raise ValueError("geometric intersection matrix must be symmetric")
                p = intersection_pairing(self.surface, self.curves[i].homology, self.curves[j].homology)
                if abs(p) > gi[i][j]:
                    raise ValueError(
                        f"algebraic intersection of {self.curves[i].name},{self.curves[j].name} exceeds geometric"
                    )

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.curves]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def curve(self, name: str) -> CurveClass:
        return self.curves[self.index(name)]

    def intersection(self, a: str, b: str) -> int:
        return self.geometric_intersections[self.index(a)][self.index(b)]

    def pairs(self, count: int) -> list[tuple[str, str]]:
        """Unordered generator pairs with the given geometric intersection."""
        names = self.names
        return [
            (names[i], names[j])
            for i in range(len(names))
            for j in range(i + 1, len(names))
            if self.geometric_intersections[i][j] == count
        ]

    def to_json(self) -> dict:
        return {
            "genus": self.surface.genus,
            "boundary": self.surface.boundary_components,
            "curves": [{"name": c.name, "homology": list(c.homology)} for c in self.curves],
            "geometric_intersections": [list(r) for r in self.geometric_intersections],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CurveSystem":
        s = Surface(int(doc["genus"]), int(doc.get("boundary", 1)))
        curves = tuple(CurveClass(c["name"], tuple(c["homology"])) for c in doc["curves"])
        gi = tuple(tuple(int(x) for x in r) for r in doc["geometric_intersections"])
        return cls(s, curves, gi)


def humphries_system(s: Surface) -> CurveSystem:
    """The 2g+1 generator curves a0, a1..a_{2g}.

    a1..a_{2g} is the standard chain and a0 = x_2 meets a4 = y_2 once and
    misses everything else.
    """
    g = s.genus
    chain = standard_chain(s, 2 * g)
    a0 = CurveClass("a0", basis_vector(g, "x", 2))
    curves = (a0,) + tuple(chain)
    n = len(curves)
    gi = [[0] * n for _ in range(n)]
    for i in range(1, 2 * g):
        gi[i][i + 1] = gi[i + 1][i] = 1
    gi[0][4] = gi[4][0] = 1
    return CurveSystem(s, curves, tuple(tuple(r) for r in gi))


def generator_curve_system(s: Surface) -> CurveSystem:
    """Bundled curve system for s (hash-checked when a data file exists)."""
    from .data import load_curve_system

    return load_curve_system(s.genus)
