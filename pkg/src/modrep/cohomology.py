"""First cohomology of Mod(Σ_{g,1}) with matrix-module coefficients.

Cocycles are determined by their values on generators.  A left cocycle f
with values in W satisfies f(gh) = f(g) + ρ(g) f(h); a right cocycle φ with
values in Hom(W, C^a) satisfies φ(gh) = φ(h) + φ(g) ρ(h).  Z^1 is the
solution space of the relator constraints f(R) = 0, written out with Fox
derivatives.  Right cocycles of ρ are handled as left cocycles of the dual
ρ* = ρ^{-T} through ψ(g) = ρ(g)^{-T} φ(g)^T.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import ZERO, RationalMatrix, Subspace, kernel, solve
from .presentation import RelatorCatalog, evaluate_cocycle, fox_blocks, relator_catalog, verify_representation
from .reps import Representation, dual_rep, symplectic_rep
from .surface import Surface, pairing_matrix


class UnverifiedRepresentation(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


@dataclass
class Cocycle:
    base_rep: Representation
    chirality: str
    values: dict

    def __post_init__(self):
        if self.chirality not in ("left", "right"):
            raise ValueError("chirality must be 'left' or 'right'")
        n = self.base_rep.dimension
        for s, v in self.values.items():
            if (self.chirality == "left" and v.rows != n) or (self.chirality == "right" and v.cols != n):
                raise ShapeMismatch(f"value on {s} has shape {v.shape}")

    @property
    def width(self) -> int:
        """b for left cocycles (n x b values), a for right ones (a x n)."""
        v = next(iter(self.values.values()))
        return v.cols if self.chirality == "left" else v.rows

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.base_rep, self.chirality, {s: self.values[s] + other.values[s] for s in self.values})

    def scale(self, c) -> "Cocycle":
        return Cocycle(self.base_rep, self.chirality, {s: v.scale(c) for s, v in self.values.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def evaluate(self, word) -> RationalMatrix:
        return evaluate_cocycle(self.base_rep, self, word)

    def relator_residuals(self, cat: RelatorCatalog) -> list[tuple[str, RationalMatrix]]:
        return [(r.label, v) for r in cat.relators if not (v := self.evaluate(r.word)).is_zero()]

    def is_valid(self, cat: RelatorCatalog | None = None) -> bool:
        cat = cat or relator_catalog(self.base_rep.surface)
        return not self.relator_residuals(cat)

    def to_json(self, base_rep_ref: str = "") -> dict:
        return {
            "chirality": self.chirality,
            "base_rep_ref": base_rep_ref,
            "values": {s: v.to_json() for s, v in self.values.items()},
        }

    @classmethod
    def from_json(cls, doc: dict, base_rep: Representation) -> "Cocycle":
        return cls(
            base_rep,
            doc["chirality"],
            {s: RationalMatrix.from_json(v) for s, v in doc["values"].items()},
        )


@dataclass
class CocycleSpace:
    z1_basis: list
    b1_dim: int
    h1_dim: int
    chirality: str = "left"
    coboundary_span: Subspace | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {"z1_dim": len(self.z1_basis), "b1_dim": self.b1_dim, "h1_dim": self.h1_dim}


# ---------------------------------------------------------------------------
# translation between chiralities


def right_to_left(phi: Cocycle) -> Cocycle:
    """φ for ρ  ->  ψ(g) = ρ(g)^{-T} φ(g)^T for ρ*."""
    rep = phi.base_rep
    dual = dual_rep(rep)
    return Cocycle(dual, "left", {s: dual.images[s] @ v.T for s, v in phi.values.items()})


def left_to_right(psi: Cocycle, rep: Representation) -> Cocycle:
    """Inverse of right_to_left; rep is the representation whose dual carries psi."""
    return Cocycle(rep, "right", {s: v.T @ rep.images[s] for s, v in psi.values.items()})


def left_h_to_right(f: Cocycle) -> Cocycle:
    """Left cocycle in H to a right cocycle in Hom(H, C) via the pairing.

    φ(g) = f(g)^T J^T ρ(g), using ρ^T J^T ρ = J^T.
    """
    rep = f.base_rep
    jt = pairing_matrix(rep.surface.genus).T
    return Cocycle(rep, "right", {s: v.T @ jt @ rep.images[s] for s, v in f.values.items()})


# ---------------------------------------------------------------------------
# coboundaries


def coboundary(rep: Representation, v: RationalMatrix, chirality: str = "left") -> Cocycle:
    """δ(v)(s) = (ρ(s) - I) v on the left, v (ρ(s) - I) on the right."""
    n = rep.dimension
    ident = RationalMatrix.identity(n)
    if chirality == "left":
        if v.rows != n:
            raise ShapeMismatch(f"expected {n} rows, got {v.rows}")
        return Cocycle(rep, "left", {s: (m - ident) @ v for s, m in rep.images.items()})
    if v.cols != n:
        raise ShapeMismatch(f"expected {n} columns, got {v.cols}")
    return Cocycle(rep, "right", {s: v @ (m - ident) for s, m in rep.images.items()})


def is_coboundary(phi: Cocycle) -> RationalMatrix | None:
    """Witness v with δ(v) = φ, or None."""
    rep = phi.base_rep
    ident = RationalMatrix.identity(rep.dimension)
    names = list(phi.values)
    if phi.chirality == "left":
        a = RationalMatrix.block([[rep.images[s] - ident] for s in names])
        b = RationalMatrix.block([[phi.values[s]] for s in names])
        return solve(a, b)
    a = RationalMatrix.block([[(rep.images[s] - ident).T] for s in names])
    b = RationalMatrix.block([[phi.values[s].T] for s in names])
    x = solve(a, b)
    return None if x is None else x.T


# ---------------------------------------------------------------------------
# cocycle spaces


def constraint_matrix(rep: Representation, cat: RelatorCatalog) -> RationalMatrix:
    """Rows f(R) = Σ_s (∂R/∂s) f(s) for all relators; columns grouped per generator."""
    names = list(cat.generators)
    n = rep.dimension
    col = {s: i * n for i, s in enumerate(names)}
    rows = []
    for r in cat.relators:
        blocks = fox_blocks(rep, r.word)
        for i in range(n):
            row = [ZERO] * (n * len(names))
            for s, d in blocks.items():
                off = col[s]
                for j, x in enumerate(d.row_tuple(i)):
                    if x:
                        row[off + j] = x
            rows.append(row)
    return RationalMatrix(rows, n * len(names))


def _left_space(rep: Representation, cat: RelatorCatalog) -> CocycleSpace:
    names = list(cat.generators)
    n = rep.dimension
    z = kernel(constraint_matrix(rep, cat))
    basis = []
    for vec in z.vectors():
        vals = {s: RationalMatrix.column(vec[i * n:(i + 1) * n]) for i, s in enumerate(names)}
        basis.append(Cocycle(rep, "left", vals))
    ident = RationalMatrix.identity(n)
    delta = RationalMatrix.block([[rep.images[s] - ident] for s in names])
    b = Subspace.column_space(delta)
    return CocycleSpace(basis, b.dim, z.dim - b.dim, "left", b)


def cocycle_space(
    rep: Representation, cat: RelatorCatalog | None = None, chirality: str = "left", check: bool = True
) -> CocycleSpace:
    cat = cat or relator_catalog(rep.surface)
    if check and not verify_representation(rep, cat).passed:
        raise UnverifiedRepresentation("representation fails a relator")
    if chirality == "left":
        return _left_space(rep, cat)
    sp = _left_space(dual_rep(rep), cat)
    basis = [left_to_right(c, rep) for c in sp.z1_basis]
    return CocycleSpace(basis, sp.b1_dim, sp.h1_dim, "right", None)


def _stack(phi: Cocycle, names) -> tuple:
    return tuple(x for s in names for x in phi.values[s].col_tuple(0))


def nontrivial_h_class(s: Surface) -> Cocycle:
    """Deterministic left cocycle in Z^1(Mod; H) that is not a coboundary."""
    rep = symplectic_rep(s)
    cat = relator_catalog(s)
    sp = _left_space(rep, cat)
    names = list(cat.generators)
    for c in sp.z1_basis:
        if not sp.coboundary_span.contains(_stack(c, names)):
            return c
    raise ArithmeticError("Z^1 equals B^1; the relator catalog is inconsistent")


# ---------------------------------------------------------------------------
# connecting map for the surface group


def connecting_map_surface_group(g: int, lam, shifts=None):
    """Coinvariant value of δ(ab) for the module C ⊕_φ H with φ = λ·ab.

    π1Σ_g acts trivially on H and by (u, v) -> (u + λ<[γ], v>, v).  ``shifts``
    optionally gives the C-components of the 2g lifts (x_1..x_g, y_1..y_g);
    the result does not depend on them.
    """
    from .exactla import Q

    lam = Q(lam)
    n = 2 * g
    j = pairing_matrix(g)

    def unit(k):
        return RationalMatrix.column([1 if i == k else 0 for i in range(n)])

    def act(gamma: RationalMatrix) -> RationalMatrix:
        top = RationalMatrix.block([[RationalMatrix.identity(1), (gamma.T @ j).scale(lam)]])
        bottom = RationalMatrix.block([[RationalMatrix.zeros(n, 1), RationalMatrix.identity(n)]])
        return RationalMatrix.block([[top], [bottom]])

    shifts = [0] * n if shifts is None else list(shifts)
    ident = RationalMatrix.identity(n + 1)
    total = RationalMatrix.zeros(n + 1, 1)
    prefix = ident
    for i in range(g):
        x, y = unit(i), unit(g + i)
        mx, my = act(x), act(y)
        lift_x = RationalMatrix.column([shifts[i]] + list(x.col_tuple(0)))
        lift_y = RationalMatrix.column([shifts[g + i]] + list(y.col_tuple(0)))
        term = (ident - my) @ lift_x + (mx - ident) @ lift_y
        total = total + prefix @ term
        comm = mx @ my @ mx.inverse() @ my.inverse()
        prefix = prefix @ comm
    if not total.slice(1, n + 1, 0, 1).is_zero():
        raise ArithmeticError("connecting map value does not lie in the submodule C")
    return total[0, 0]
