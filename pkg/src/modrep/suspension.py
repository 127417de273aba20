"""Affine, co-affine and double cocycle suspensions."""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import Cocycle, dual_rep, left_h_to_right, nontrivial_h_class
from .exactla import Q, RationalMatrix, solve
from .presentation import RelatorCatalog, evaluate_word, relator_catalog
from .reps import Representation, symplectic_rep
from .surface import Surface


class CocycleInvalid(ValueError):
    pass


class CoboundaryEquationViolated(ValueError):
    def __init__(self, relator: str, residual: RationalMatrix):
        super().__init__(f"coboundary equation fails on relator {relator}")
        self.relator = relator
        self.residual = residual


class HypothesisViolated(ValueError):
    pass


def _check_cocycle(phi: Cocycle, cat: RelatorCatalog, chirality: str):
    if phi.chirality != chirality:
        raise CocycleInvalid(f"expected a {chirality} cocycle")
    bad = phi.relator_residuals(cat)
    if bad:
        raise CocycleInvalid(f"cocycle fails on relator {bad[0][0]}")


def affine_suspension(base: Representation, phi: Cocycle, b: int, cat=None) -> Representation:
    """s -> [[ρ(s), φ(s)], [0, I_b]]"""
    cat = cat or relator_catalog(base.surface)
    _check_cocycle(phi, cat, "left")
    if phi.width != b:
        raise CocycleInvalid(f"cocycle has {phi.width} columns, expected {b}")
    n = base.dimension
    images = {
        s: RationalMatrix.block([[m, phi.values[s]], [RationalMatrix.zeros(b, n), RationalMatrix.identity(b)]])
        for s, m in base.images.items()
    }
    return Representation(base.surface, images, check=False)


def coaffine_suspension(base: Representation, phi: Cocycle, a: int, cat=None) -> Representation:
    """s -> [[I_a, φ(s)], [0, ρ(s)]]"""
    cat = cat or relator_catalog(base.surface)
    _check_cocycle(phi, cat, "right")
    if phi.width != a:
        raise CocycleInvalid(f"cocycle has {phi.width} rows, expected {a}")
    n = base.dimension
    images = {
        s: RationalMatrix.block([[RationalMatrix.identity(a), phi.values[s]], [RationalMatrix.zeros(n, a), m]])
        for s, m in base.images.items()
    }
    return Representation(base.surface, images, check=False)


@dataclass
class SuspensionSpec:
    base: Representation
    a: int
    b: int
    phi1: Cocycle | None = None
    phi2: Cocycle | None = None
    alpha: dict | None = None

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "a": self.a,
            "b": self.b,
            "phi1": None if self.phi1 is None else self.phi1.to_json("base"),
            "phi2": None if self.phi2 is None else self.phi2.to_json("base"),
            "alpha": None if self.alpha is None else {s: m.to_json() for s, m in self.alpha.items()},
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SuspensionSpec":
        base = Representation.from_json(doc["base"])
        phi1 = Cocycle.from_json(doc["phi1"], base) if doc.get("phi1") else None
        phi2 = Cocycle.from_json(doc["phi2"], base) if doc.get("phi2") else None
        alpha = doc.get("alpha")
        if alpha is not None:
            alpha = {s: RationalMatrix.from_json(m) for s, m in alpha.items()}
        return cls(base, int(doc["a"]), int(doc["b"]), phi1, phi2, alpha)


def _zero_left(base, b):
    return Cocycle(base, "left", {s: RationalMatrix.zeros(base.dimension, b) for s in base.images})


def _zero_right(base, a):
    return Cocycle(base, "right", {s: RationalMatrix.zeros(a, base.dimension) for s in base.images})


def _double_images(base, a, b, phi1, phi2, alpha):
    n = base.dimension
    z = RationalMatrix.zeros
    out = {}
    for s, m in base.images.items():
        out[s] = RationalMatrix.block(
            [
                [RationalMatrix.identity(a), phi1.values[s], alpha[s]],
                [z(n, a), m, phi2.values[s]],
                [z(b, a), z(b, n), RationalMatrix.identity(b)],
            ]
        )
    return out


def _corner(m: RationalMatrix, a: int, b: int) -> RationalMatrix:
    return m.slice(0, a, m.cols - b, m.cols)


def solve_alpha(base: Representation, phi1: Cocycle, phi2: Cocycle, cat=None) -> dict:
    """Generator values of α making the double suspension a representation.

    The corner block of a relator's image is Σ_s e_{R,s} α(s) + C_R with
    e_{R,s} the exponent sum of s in R and C_R its value at α = 0.  Raises
    CoboundaryEquationViolated with the first relator that cannot be met.
    """
    cat = cat or relator_catalog(base.surface)
    _check_cocycle(phi1, cat, "right")
    _check_cocycle(phi2, cat, "left")
    a, b = phi1.width, phi2.width
    names = list(cat.generators)
    zero = {s: RationalMatrix.zeros(a, b) for s in names}
    trial = Representation(base.surface, _double_images(base, a, b, phi1, phi2, zero), check=False)
    rows, rhs, labels = [], [], []
    for r in cat.relators:
        rows.append([r.word.exponent_sum(s) for s in names])
        rhs.append(-_corner(evaluate_word(trial, r.word), a, b))
        labels.append(r.label)
    # solve one entry of α at a time; the coefficient matrix is shared
    coeff = RationalMatrix(rows)
    sol = {s: [[0] * b for _ in range(a)] for s in names}
    for i in range(a):
        for j in range(b):
            target = RationalMatrix.column([m[i, j] for m in rhs])
            x = solve(coeff, target)
            if x is None:
                raise _first_failure(coeff, target, labels, rhs, i, j)
            for k, s in enumerate(names):
                sol[s][i][j] = x[k, 0]
    return {s: RationalMatrix(v, b) for s, v in sol.items()}


def _first_failure(coeff, target, labels, rhs, i, j):
    # smallest prefix of the relator list that is already inconsistent
    for k in range(1, coeff.rows + 1):
        sub = coeff.slice(0, k, 0, coeff.cols)
        if solve(sub, target.slice(0, k, 0, 1)) is None:
            return CoboundaryEquationViolated(labels[k - 1], -rhs[k - 1])
    return CoboundaryEquationViolated(labels[-1], -rhs[-1])


def double_suspension(spec: SuspensionSpec, cat=None) -> Representation:
    """s -> [[I_a, φ1(s), α(s)], [0, ρ(s), φ2(s)], [0, 0, I_b]]"""
    base = spec.base
    cat = cat or relator_catalog(base.surface)
    phi1 = spec.phi1 if spec.phi1 is not None else _zero_right(base, spec.a)
    phi2 = spec.phi2 if spec.phi2 is not None else _zero_left(base, spec.b)
    _check_cocycle(phi1, cat, "right")
    _check_cocycle(phi2, cat, "left")
    if phi1.width != spec.a or phi2.width != spec.b:
        raise CocycleInvalid("cocycle widths do not match a and b")
    alpha = spec.alpha
    if alpha is None:
        alpha = solve_alpha(base, phi1, phi2, cat)
    rep = Representation(base.surface, _double_images(base, spec.a, spec.b, phi1, phi2, alpha), check=False)
    for r in cat.relators:
        m = evaluate_word(rep, r.word)
        if not m.is_identity():
            raise CoboundaryEquationViolated(r.label, _corner(m, spec.a, spec.b))
    return rep


def cohomologous_iso(base: Representation, phi1: Cocycle, phi2: Cocycle, lam, h0: RationalMatrix) -> RationalMatrix:
    """Block matrix F with F·susp(φ1)(s)·F^-1 = susp(φ2)(s) for affine suspensions.

    Requires φ2 = λ φ1 + δ(h0) on generators, δ(h0)(s) = (ρ(s) - I) h0.
    """
    lam = Q(lam)
    if lam == 0:
        raise HypothesisViolated("λ must be nonzero")
    n = base.dimension
    ident = RationalMatrix.identity(n)
    for s, m in base.images.items():
        if phi2.values[s] != phi1.values[s].scale(lam) + (m - ident) @ h0:
            raise HypothesisViolated(f"φ2 ≠ λφ1 + δ(h0) on generator {s}")
    b = h0.cols
    return RationalMatrix.block([[RationalMatrix.scalar(n, lam), -h0], [RationalMatrix.zeros(b, n), RationalMatrix.identity(b)]])


def gl_twist(phi: Cocycle, B: RationalMatrix) -> Cocycle:
    """φ^B(g) = φ(g) B^-1 for left cocycles; B φ(g) for right ones."""
    if phi.chirality == "left":
        bi = B.inverse()
        return Cocycle(phi.base_rep, "left", {s: v @ bi for s, v in phi.values.items()})
    B.inverse()
    return Cocycle(phi.base_rep, "right", {s: B @ v for s, v in phi.values.items()})


def gl_twist_intertwiner(phi: Cocycle, B: RationalMatrix) -> RationalMatrix:
    """Block matrix conjugating susp(φ) to susp(φ^B)."""
    n = phi.base_rep.dimension
    if phi.chirality == "left":
        return RationalMatrix.block_diagonal(RationalMatrix.identity(n), B)
    return RationalMatrix.block_diagonal(B, RationalMatrix.identity(n))


# ---------------------------------------------------------------------------
# the unit tangent representation and its dual


def unit_tangent_cocycle(s: Surface) -> Cocycle:
    """Right cocycle in Hom(H, C) representing the nontrivial class."""
    return left_h_to_right(nontrivial_h_class(s))


def unit_tangent_rep(s: Surface) -> Representation:
    """H̃ := co-affine suspension of H by the nontrivial class, a = 1."""
    return coaffine_suspension(symplectic_rep(s), unit_tangent_cocycle(s), 1)


def dual_unit_tangent_rep(s: Surface) -> Representation:
    return dual_rep(unit_tangent_rep(s))
