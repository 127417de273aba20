"""Words in Dehn-twist generators, relator catalogs, and evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exactla import NotInvertible, RationalMatrix
from .surface import CurveSystem, Surface

TAGS = ("braid", "commutation", "lantern", "chain", "other")


class UnknownGenerator(KeyError):
    pass


class GroupWord:
    """Freely reduced word; adjacent letters with the same generator are merged."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        out: list[list] = []
        for name, e in letters:
            e = int(e)
            if e == 0:
                continue
            if out and out[-1][0] == name:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([name, e])
        self.letters = tuple((n, e) for n, e in out)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Space separated tokens like ``a1 a2^-1 a3^2``."""
        letters = []
        for tok in text.split():
            if "^" in tok:
                n, e = tok.split("^")
                letters.append((n, int(e)))
            else:
                letters.append((tok, 1))
        return cls(letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "GroupWord":
        if k < 0:
            return self.inverse() ** (-k)
        return GroupWord(self.letters * k)

    def inverse(self) -> "GroupWord":
        return GroupWord((n, -e) for n, e in reversed(self.letters))

    def conjugate(self, by: "GroupWord") -> "GroupWord":
        """by^-1 · self · by"""
        return by.inverse() * self * by

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.letters if n == name)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __repr__(self):
        return f"GroupWord({self})"

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)

    def to_json(self) -> list:
        return [[n, e] for n, e in self.letters]

    @classmethod
    def from_json(cls, data) -> "GroupWord":
        return cls((str(n), int(e)) for n, e in data)


def W(*names: str) -> GroupWord:
    return GroupWord((n, 1) for n in names)


@dataclass(frozen=True)
class Relator:
    word: GroupWord
    tag: str
    label: str

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown relator tag {self.tag!r}")


@dataclass(frozen=True)
class RelatorCatalog:
    surface: Surface
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]

    def by_tag(self, tag: str) -> list[Relator]:
        return [r for r in self.relators if r.tag == tag]

    def words(self) -> list[GroupWord]:
        return [r.word for r in self.relators]

    def to_json(self) -> dict:
        return {
            "genus": self.surface.genus,
            "generators": list(self.generators),
            "relators": [
                {"label": r.label, "tag": r.tag, "word": r.word.to_json()} for r in self.relators
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RelatorCatalog":
        return cls(
            Surface(int(doc["genus"])),
            tuple(doc["generators"]),
            tuple(Relator(GroupWord.from_json(r["word"]), r["tag"], r["label"]) for r in doc["relators"]),
        )


# Conjugating word taking a0 to the curve b3 of the lantern; found by a
# bidirectional search in the free-group twist model and verified there.
_B3_CONJUGATOR = [
    ("a6", -1), ("a5", -1), ("a4", -1), ("a0", -1), ("a3", -1), ("a2", -1), ("a1", 1),
    ("a4", -1), ("a5", -1), ("a6", -1), ("a3", -1), ("a4", -1), ("a5", -1),
    ("a2", 1), ("a3", 1), ("a4", 1),
]


def lantern_curves() -> dict[str, GroupWord]:
    """Twists b0..b3 as conjugates of a0."""
    a0 = W("a0")
    b0 = a0.conjugate(W("a4", "a3", "a2", "a1", "a1", "a2", "a3", "a4"))
    b1 = a0.conjugate(W("a4", "a5", "a3", "a4"))
    b2 = b1.conjugate(W("a2", "a3", "a1", "a2"))
    x = GroupWord(_B3_CONJUGATOR)
    b3 = a0.conjugate(x.inverse())
    return {"b0": b0, "b1": b1, "b2": b2, "b3": b3}


def build_catalog(cs: CurveSystem) -> RelatorCatalog:
    """Wajnryb-type presentation of Mod(Σ_{g,1}) over the Humphries generators.

    Braid or commutation relators for every generator pair, the 3-chain
    relation (a1 a2 a3)^4 = a0 b0 and the lantern a0 b2 b1 = a1 a3 a5 b3.
    """
    names = cs.names
    rels = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            k = cs.geometric_intersections[i][j]
            if k == 1:
                w = GroupWord([(a, 1), (b, 1), (a, 1), (b, -1), (a, -1), (b, -1)])
                rels.append(Relator(w, "braid", f"braid({a},{b})"))
            elif k == 0:
                w = GroupWord([(a, 1), (b, 1), (a, -1), (b, -1)])
                rels.append(Relator(w, "commutation", f"comm({a},{b})"))
            else:
                raise ValueError(f"generators {a},{b} intersect {k} times")
    lc = lantern_curves()
    chain = (W("a1", "a2", "a3") ** 4) * (W("a0") * lc["b0"]).inverse()
    rels.append(Relator(chain, "chain", "chain3"))
    lantern = W("a0") * lc["b2"] * lc["b1"] * (W("a1", "a3", "a5") * lc["b3"]).inverse()
    rels.append(Relator(lantern, "lantern", "lantern"))
    return RelatorCatalog(cs.surface, tuple(names), tuple(rels))


def relator_catalog(s: Surface) -> RelatorCatalog:
    from .data import load_catalog

    return load_catalog(s.genus)


# ---------------------------------------------------------------------------
# evaluation


def _image(rep, name: str) -> RationalMatrix:
    try:
        return rep.images[name]
    except KeyError:
        raise UnknownGenerator(name) from None


def _inverse_image(rep, name: str) -> RationalMatrix:
    inv = getattr(rep, "inverse_image", None)
    if inv is not None:
        return inv(name)
    return _image(rep, name).inverse()


def evaluate_word(rep, w: GroupWord) -> RationalMatrix:
    out = RationalMatrix.identity(rep.dimension)
    for name, e in w:
        m = _image(rep, name) if e > 0 else _inverse_image(rep, name)
        for _ in range(abs(e)):
            out = out @ m
    return out


def evaluate_cocycle(rep, phi, w: GroupWord) -> RationalMatrix:
    """Extend phi from generators to w.

    Left: f(gh) = f(g) + ρ(g) f(h).  Right: f(gh) = f(h) + f(g) ρ(h).
    ``phi`` is a Cocycle or anything with ``values`` and ``chirality``.
    """
    values = phi.values
    right = phi.chirality == "right"
    shape = next(iter(values.values())).shape if values else (rep.dimension, 1)
    acc = RationalMatrix.zeros(*shape)
    if right:
        for name, e in w:
            if name not in values:
                raise UnknownGenerator(name)
            if e > 0:
                m, v = _image(rep, name), values[name]
            else:
                m = _inverse_image(rep, name)
                v = -(values[name] @ m)
            for _ in range(abs(e)):
                acc = acc @ m + v
        return acc
    prefix = RationalMatrix.identity(rep.dimension)
    for name, e in w:
        if name not in values:
            raise UnknownGenerator(name)
        if e > 0:
            m, v = _image(rep, name), values[name]
        else:
            m = _inverse_image(rep, name)
            v = -(m @ values[name])
        for _ in range(abs(e)):
            acc = acc + prefix @ v
            prefix = prefix @ m
    return acc


@dataclass
class RelatorResult:
    label: str
    tag: str
    passed: bool


@dataclass
class VerificationReport:
    results: list[RelatorResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[RelatorResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "relators": [{"label": r.label, "tag": r.tag, "passed": r.passed} for r in self.results],
        }


def verify_representation(rep, cat: RelatorCatalog) -> VerificationReport:
    results = []
    for r in cat.relators:
        try:
            ok = evaluate_word(rep, r.word).is_identity()
        except NotInvertible:
            ok = False
        results.append(RelatorResult(r.label, r.tag, ok))
    return VerificationReport(results)


def fox_blocks(rep, w: GroupWord) -> dict[str, RationalMatrix]:
    """Left Fox derivatives of w evaluated in rep: f(w) = Σ_s D_s f(s)."""
    n = rep.dimension
    out: dict[str, RationalMatrix] = {}
    prefix = RationalMatrix.identity(n)
    for name, e in w:
        if e > 0:
            m = _image(rep, name)
            for _ in range(e):
                out[name] = out[name] + prefix if name in out else prefix
                prefix = prefix @ m
        else:
            m = _inverse_image(rep, name)
            for _ in range(-e):
                prefix = prefix @ m
                out[name] = out[name] - prefix if name in out else -prefix
    return out
