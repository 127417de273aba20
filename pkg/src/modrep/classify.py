"""Classification of low-dimensional representations of Mod(Σ_{g,1}).

Pipeline: verify relators, read off the bi-affine flag V1 ≤ V2 (fixed space
and its sum with the span of all ρ(s) - I), test the two extension cocycles
for being coboundaries, pick the matching model among H, H̃, H̃* padded by
trivial summands, and certify with an explicit intertwiner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .cohomology import Cocycle, is_coboundary
from .exactla import ZERO, RationalMatrix, Subspace, kernel, sparse_kernel
from .presentation import relator_catalog, verify_representation
from .reps import Representation, direct_sum_with_trivial, symplectic_rep
from .suspension import dual_unit_tangent_rep, unit_tangent_rep
from .surface import Surface

TRIVIAL = "Trivial"
SYMPLECTIC = "SymplecticPlusTrivial"
UNIT_TANGENT = "UnitTangentPlusTrivial"
DUAL_UNIT_TANGENT = "DualUnitTangentPlusTrivial"
OUT_OF_RANGE = "OutOfRange"
NOT_VERIFIED = "NotVerified"

MODEL_VERDICTS = (SYMPLECTIC, UNIT_TANGENT, DUAL_UNIT_TANGENT)
SEARCH_SEED = 20240
SEARCH_RETRIES = 32


def fixed_space(rep: Representation) -> Subspace:
    n = rep.dimension
    ident = RationalMatrix.identity(n)
    if not rep.images:
        return Subspace.full(n)
    return kernel(RationalMatrix.block([[m - ident] for m in rep.images.values()]))


def invariant_closure(rep: Representation, sub: Subspace) -> Subspace:
    cur = sub
    while True:
        nxt = cur
        for m in rep.images.values():
            nxt = nxt + cur.image(m)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def augmentation_span(rep: Representation) -> Subspace:
    """Invariant span of all images of ρ(s) - I."""
    n = rep.dimension
    ident = RationalMatrix.identity(n)
    cols = []
    for m in rep.images.values():
        d = m - ident
        cols.extend(d.col_tuple(j) for j in range(n))
    return invariant_closure(rep, Subspace(n, cols))


def biaffine_flag(rep: Representation) -> tuple[Subspace, Subspace] | None:
    v1 = fixed_space(rep)
    v2 = v1 + augmentation_span(rep)
    if v2.dim == v1.dim:
        return None
    return v1, v2


# ---------------------------------------------------------------------------
# intertwiners


def commutant_basis(rep1: Representation, rep2: Representation) -> list[RationalMatrix]:
    """Basis of {X : X ρ1(s) = ρ2(s) X for all s}."""
    n, m = rep1.dimension, rep2.dimension
    rows = []
    for s, a in rep1.images.items():
        b = rep2.images[s]
        acols = [[(k, a[k, j]) for k in range(n) if a[k, j]] for j in range(n)]
        brows = [[(k, b[i, k]) for k in range(m) if b[i, k]] for i in range(m)]
        for i in range(m):
            for j in range(n):
                row = {}
                for k, x in acols[j]:
                    row[i * n + k] = row.get(i * n + k, ZERO) + x
                for k, x in brows[i]:
                    idx = k * n + j
                    row[idx] = row.get(idx, ZERO) - x
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    vecs = sparse_kernel(rows, m * n)
    return [RationalMatrix([v[i * n:(i + 1) * n] for i in range(m)], n) for v in vecs]


def intertwiner(rep1: Representation, rep2: Representation, seed: int = SEARCH_SEED) -> RationalMatrix | None:
    """Invertible X with X ρ1(s) X^-1 = ρ2(s) for every generator s, or None."""
    if rep1.dimension != rep2.dimension or set(rep1.images) != set(rep2.images):
        return None
    basis = commutant_basis(rep1, rep2)
    if not basis:
        return None
    for x in basis:
        if x.det() != 0:
            return x
    rng = random.Random(seed)
    for _ in range(SEARCH_RETRIES):
        x = RationalMatrix.zeros(rep1.dimension, rep1.dimension)
        for b in basis:
            c = rng.randint(-7, 7)
            if c:
                x = x + b.scale(c)
        if x.det() != 0:
            return x
    return None


def conjugates_to(rep: Representation, model: Representation, x: RationalMatrix) -> bool:
    return all(x @ m == model.images[s] @ x for s, m in rep.images.items()) and x.det() != 0


# ---------------------------------------------------------------------------
# models


@lru_cache(maxsize=32)
def _core(verdict: str, g: int) -> Representation:
    s = Surface(g)
    if verdict == SYMPLECTIC:
        return symplectic_rep(s)
    if verdict == UNIT_TANGENT:
        return unit_tangent_rep(s)
    if verdict == DUAL_UNIT_TANGENT:
        return dual_unit_tangent_rep(s)
    raise ValueError(verdict)


def model_representation(verdict: str, g: int, trivial_dim: int) -> Representation:
    return direct_sum_with_trivial(_core(verdict, g), trivial_dim)


def max_classified_dimension(g: int) -> int:
    return 3 * g - 3


# ---------------------------------------------------------------------------
# report


@dataclass
class ClassificationReport:
    verdict: str
    dimension: int
    genus: int
    trivial_dim: int | None = None
    in_range: bool = True
    flag: tuple | None = None
    intertwiner: RationalMatrix | None = None
    witnesses: dict = field(default_factory=dict)
    invariants: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def summary(self) -> str:
        name = {
            TRIVIAL: "trivial",
            SYMPLECTIC: "H",
            UNIT_TANGENT: "H~",
            DUAL_UNIT_TANGENT: "H~*",
        }.get(self.verdict)
        if name is None:
            return f"{self.verdict} (dimension {self.dimension}, genus {self.genus})"
        if self.verdict == TRIVIAL:
            text = f"trivial of dimension {self.dimension}"
        else:
            text = f"{name} + C^{self.trivial_dim}"
        if not self.in_range:
            text += f" (dimension exceeds 3g-3 = {max_classified_dimension(self.genus)})"
        return text

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "genus": self.genus,
            "dimension": self.dimension,
            "trivial_dim": self.trivial_dim,
            "in_range": self.in_range,
            "flag": None
            if self.flag is None
            else [{"dim": v.dim, "basis": v.basis.to_json()} for v in self.flag],
            "intertwiner": None if self.intertwiner is None else self.intertwiner.to_json(),
            "witnesses": {
                k: (None if v is None else v.to_json()) for k, v in self.witnesses.items()
            },
            "invariants": self.invariants,
            "notes": list(self.notes),
        }


def _adapted_basis(v1: Subspace, v2: Subspace) -> tuple[RationalMatrix, int, int]:
    """Columns: basis of V1, then completion to V2, then completion to V."""
    n = v1.ambient_dim
    cols = v1.vectors()
    for v in v2.vectors():
        if not Subspace(n, cols).contains(v):
            cols.append(v)
    mid = len(cols) - v1.dim
    for v in Subspace.full(n).vectors():
        if not Subspace(n, cols).contains(v):
            cols.append(v)
    return RationalMatrix.from_columns(cols), v1.dim, mid


def extension_data(rep: Representation, v1: Subspace, v2: Subspace):
    """Core representation and the two extension cocycles in the flag-adapted basis."""
    p, a, m = _adapted_basis(v1, v2)
    pinv = p.inverse()
    n = rep.dimension
    b = n - a - m
    core, phi1, phi2 = {}, {}, {}
    for s, mat in rep.images.items():
        q = pinv @ mat @ p
        core[s] = q.slice(a, a + m, a, a + m)
        phi1[s] = q.slice(0, a, a, a + m)
        phi2[s] = q.slice(a, a + m, a + m, n)
    core_rep = Representation(rep.surface, core, check=False)
    c1 = Cocycle(core_rep, "right", phi1) if a else None
    c2 = Cocycle(core_rep, "left", phi2) if b else None
    return core_rep, c1, c2, (a, m, b)


def classify_representation(rep: Representation, cat=None) -> ClassificationReport:
    g = rep.surface.genus
    n = rep.dimension
    cat = cat or relator_catalog(rep.surface)
    rep_ = ClassificationReport(OUT_OF_RANGE, n, g, in_range=n <= max_classified_dimension(g))
    if set(rep.images) != set(cat.generators):
        rep_.verdict = NOT_VERIFIED
        rep_.notes.append("generator set differs from the presentation")
        return rep_
    ver = verify_representation(rep, cat)
    if not ver.passed:
        rep_.verdict = NOT_VERIFIED
        rep_.notes.append("failing relators: " + ", ".join(r.label for r in ver.failures()))
        return rep_
    if rep.is_trivial():
        rep_.verdict = TRIVIAL
        rep_.trivial_dim = n
        rep_.intertwiner = RationalMatrix.identity(n)
        return rep_
    fixed = fixed_space(rep)
    aug = augmentation_span(rep)
    rep_.invariants = {"fixed_dim": fixed.dim, "coinvariant_dim": n - aug.dim}
    flag = biaffine_flag(rep)
    if flag is None:
        rep_.notes.append("no nontrivial core")
        return rep_
    v1, v2 = flag
    rep_.flag = flag
    core, c1, c2, (a, m, b) = extension_data(rep, v1, v2)
    rep_.invariants.update({"a": a, "core_dim": m, "b": b})
    w1 = is_coboundary(c1) if c1 is not None else RationalMatrix.zeros(0, m)
    w2 = is_coboundary(c2) if c2 is not None else RationalMatrix.zeros(m, 0)
    rep_.witnesses = {"phi1": w1, "phi2": w2}
    if m != 2 * g:
        rep_.notes.append(f"core has dimension {m}, not 2g")
        return rep_
    if w1 is None and w2 is None:
        rep_.notes.append("both extension classes are nontrivial")
        return rep_
    if w1 is None:
        verdict, k = UNIT_TANGENT, a + b - 1
    elif w2 is None:
        verdict, k = DUAL_UNIT_TANGENT, a + b - 1
    else:
        verdict, k = SYMPLECTIC, a + b
    f, q = rep_.invariants["fixed_dim"], rep_.invariants["coinvariant_dim"]
    expected = {SYMPLECTIC: (k, k), UNIT_TANGENT: (k + 1, k), DUAL_UNIT_TANGENT: (k, k + 1)}[verdict]
    if (f, q) != expected:
        rep_.notes.append(f"fixed/coinvariant dimensions {(f, q)} do not fit {verdict}")
        return rep_
    model = model_representation(verdict, g, k)
    x = intertwiner(rep, model)
    if x is None:
        rep_.notes.append(f"no invertible intertwiner to the {verdict} model")
        return rep_
    rep_.verdict = verdict
    rep_.trivial_dim = k
    rep_.intertwiner = x
    return rep_


def certificate_is_sound(rep: Representation, report: ClassificationReport) -> bool:
    if report.verdict == TRIVIAL:
        return rep.is_trivial()
    if report.verdict not in MODEL_VERDICTS or report.intertwiner is None:
        return False
    model = model_representation(report.verdict, rep.surface.genus, report.trivial_dim)
    return conjugates_to(rep, model, report.intertwiner)
