"""Core representations: symplectic transvections, duals, trivial padding."""

from __future__ import annotations

from typing import Mapping

from .exactla import RationalMatrix
from .surface import CurveClass, Surface, generator_curve_system, pairing_matrix


class SeparatingCurve(ValueError):
    pass


class InvalidRepresentation(ValueError):
    pass


class Representation:
    """Generator name -> invertible matrix, for the generators of Mod(surface)."""

    def __init__(self, surface: Surface, images: Mapping[str, RationalMatrix], check: bool = True):
        self.surface = surface
        self.images = dict(images)
        dims = {m.shape for m in self.images.values()}
        if len(dims) != 1:
            raise InvalidRepresentation("generator images must share one square shape")
        (n, m), = dims
        if n != m:
            raise InvalidRepresentation("generator images must be square")
        self.dimension = n
        if check:
            for name, mat in self.images.items():
                if mat.det() == 0:
                    raise InvalidRepresentation(f"image of {name} is singular")
        self._inverses: dict[str, RationalMatrix] = {}

    @property
    def generators(self) -> list[str]:
        return list(self.images)

    def inverse_image(self, name: str) -> RationalMatrix:
        if name not in self._inverses:
            self._inverses[name] = self.images[name].inverse()
        return self._inverses[name]

    def conjugate(self, x: RationalMatrix) -> "Representation":
        """s -> X ρ(s) X^-1"""
        xi = x.inverse()
        return Representation(self.surface, {s: x @ m @ xi for s, m in self.images.items()}, check=False)

    def is_trivial(self) -> bool:
        return all(m.is_identity() for m in self.images.values())

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.surface == other.surface
            and self.images == other.images
        )

    def __repr__(self):
        return f"Representation(g={self.surface.genus}, dim={self.dimension})"

    def to_json(self) -> dict:
        from .data import curve_system_hash

        return {
            "genus": self.surface.genus,
            "boundary": self.surface.boundary_components,
            "dimension": self.dimension,
            "curve_system_hash": curve_system_hash(generator_curve_system(self.surface)),
            "generators": [{"name": s, "matrix": m.to_json()} for s, m in self.images.items()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Representation":
        from .data import curve_system_hash

        s = Surface(int(doc["genus"]), int(doc.get("boundary", 1)))
        expected = curve_system_hash(generator_curve_system(s))
        if doc.get("curve_system_hash") != expected:
            raise InvalidRepresentation("curve system hash does not match the bundled data")
        images = {g["name"]: RationalMatrix.from_json(g["matrix"]) for g in doc["generators"]}
        rep = cls(s, images)
        if rep.dimension != int(doc["dimension"]):
            raise InvalidRepresentation("declared dimension does not match the matrices")
        return rep


def transvection_matrix(s: Surface, c: CurveClass) -> RationalMatrix:
    """Matrix of x -> x + <x, c> c on H_1 in the basis (x_1..x_g, y_1..y_g)."""
    if not c.nonseparating or not any(c.homology):
        raise SeparatingCurve(f"{c.name} is separating; its twist acts trivially on homology")
    n = 2 * s.genus
    if len(c.homology) != n:
        raise ValueError("homology vector has the wrong length")
    col = RationalMatrix.column(c.homology)
    # <x, c> = x^T J c, so the map is I + c (J c)^T
    row = (pairing_matrix(s.genus) @ col).T
    return RationalMatrix.identity(n) + col @ row


def symplectic_rep(s: Surface) -> Representation:
    cs = generator_curve_system(s)
    return Representation(s, {c.name: transvection_matrix(s, c) for c in cs.curves}, check=False)


def trivial_rep(s: Surface, k: int) -> Representation:
    cs = generator_curve_system(s)
    return Representation(s, {n: RationalMatrix.identity(k) for n in cs.names}, check=False)


def dual_rep(rep: Representation) -> Representation:
    return Representation(rep.surface, {s: rep.inverse_image(s).T for s in rep.images}, check=False)


def direct_sum(*reps: Representation) -> Representation:
    names = reps[0].generators
    return Representation(
        reps[0].surface,
        {s: RationalMatrix.block_diagonal(*(r.images[s] for r in reps)) for s in names},
        check=False,
    )


def direct_sum_with_trivial(rep: Representation, k: int) -> Representation:
    if k == 0:
        return rep
    return direct_sum(rep, trivial_rep(rep.surface, k))
