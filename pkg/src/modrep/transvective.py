"""Transvective structure: ρ(T_c) = I + v_c α_c, and the chain identities."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import ONE, Q, RationalMatrix, Subspace, matrix_power, solve
from .presentation import GroupWord, evaluate_word


class NotTransvective(ValueError):
    pass


class DegenerateChain(ValueError):
    pass


@dataclass(frozen=True)
class TransvectionData:
    vector: RationalMatrix  # n x 1
    covector: RationalMatrix  # 1 x n

    def __post_init__(self):
        if (self.covector @ self.vector)[0, 0] != 0:
            raise NotTransvective("α(v) must vanish")

    def outer(self) -> RationalMatrix:
        return self.vector @ self.covector

    def alpha(self, v: RationalMatrix):
        return (self.covector @ v)[0, 0]

    def rescale(self, t) -> "TransvectionData":
        t = Q(t)
        return TransvectionData(self.vector.scale(t), self.covector.scale(1 / t))


def extract_transvection(m: RationalMatrix) -> TransvectionData:
    """Factor m - I = v α, v normalized to have first nonzero entry 1."""
    if not m.is_square():
        raise NotTransvective("matrix is not square")
    n = m.rows
    nm = m - RationalMatrix.identity(n)
    if nm.rank() != 1:
        raise NotTransvective(f"rank(m - I) = {nm.rank()}")
    if not (nm @ nm).is_zero():
        raise NotTransvective("(m - I)^2 ≠ 0")
    j0 = next(j for j in range(n) if any(nm[i, j] for i in range(n)))
    col = nm.col_tuple(j0)
    i0 = next(i for i in range(n) if col[i])
    v = RationalMatrix.column([x / col[i0] for x in col])
    alpha = RationalMatrix.row(nm.row_tuple(i0))
    return TransvectionData(v, alpha)


def braid_identity(da: TransvectionData, db: TransvectionData):
    """α_a(v_b) α_b(v_a); -1 for curves meeting once."""
    return da.alpha(db.vector) * db.alpha(da.vector)


def disjoint_identity(da: TransvectionData, dc: TransvectionData):
    return (da.alpha(dc.vector), dc.alpha(da.vector))


def normalize_chain(datas: list[TransvectionData]) -> list[TransvectionData]:
    """Rescale so that α_i(v_{i+1}) = 1 and α_{i+1}(v_i) = -1."""
    if not datas:
        return []
    out = [datas[0]]
    c = ONE
    for i in range(1, len(datas)):
        p = datas[i - 1].alpha(datas[i].vector)
        if p == 0:
            raise DegenerateChain(f"α_{i}(v_{i + 1}) = 0")
        c = c * p
        out.append(TransvectionData(datas[i].vector.scale(1 / c), datas[i].covector.scale(c)))
    return out


def pairing_table(datas: list[TransvectionData]) -> RationalMatrix:
    """Entry (i, j) = α_i(v_j)."""
    return RationalMatrix([[a.alpha(b.vector) for b in datas] for a in datas])


def is_normalized_pattern(table: RationalMatrix) -> bool:
    k = table.rows
    for i in range(k):
        for j in range(k):
            want = 1 if j == i + 1 else -1 if j == i - 1 else 0
            if table[i, j] != want:
                return False
    return True


# ---------------------------------------------------------------------------
# separating twists through chain relations


def genus_one_word(a: str, b: str) -> GroupWord:
    """(T_a^2 T_b)^4, a genus-one separating twist."""
    return GroupWord([(a, 2), (b, 1)]) ** 4


def genus_two_word(a: str, b: str, c: str, d: str) -> GroupWord:
    """(T_a^2 T_b T_c T_d)^8, a genus-two separating twist."""
    return GroupWord([(a, 2), (b, 1), (c, 1), (d, 1)]) ** 8


def displayed_pattern_one(k: int, al: list) -> RationalMatrix:
    """Expected image of T_a^2 T_b (k = 1), its square (2) or 4th power (4).

    Basis v_a, v_b, v_c, v_d (normalized chain) followed by a vector x, with
    al = [α_a(x), α_b(x), α_c(x), α_d(x)].
    """
    aa, ab, _, _ = al
    if k == 1:
        rows = [[-1, 2, 0, 0, 2 * (aa + ab)], [-1, 1, 1, 0, ab], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]
    elif k == 2:
        rows = [[-1, 0, 2, 0, 2 * ab], [0, -1, 2, 0, -2 * aa], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]
    elif k == 4:
        rows = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]
    else:
        raise ValueError(k)
    return RationalMatrix(rows + [[0, 0, 0, 0, 1]])


def displayed_pattern_two(k: int, al: list) -> RationalMatrix:
    """Same for T_a^2 T_b T_c T_d with k in (1, 2, 4, 8)."""
    aa, ab, ac, ad = al
    if k == 1:
        rows = [
            [-1, 0, 0, 2, 2 * (aa + ab + ac + ad)],
            [-1, 0, 0, 1, ab + ac + ad],
            [0, -1, 0, 1, ac + ad],
            [0, 0, -1, 1, ad],
        ]
    elif k == 2:
        rows = [
            [1, 0, 2, 0, 2 * ad],
            [1, 0, -1, -1, -2 * aa - ab - ac],
            [1, 0, -1, 0, -ab + ad],
            [0, 1, -1, 0, -ac + ad],
        ]
    elif k == 4:
        rows = [
            [-1, 0, 0, 0, 2 * (ab + ad)],
            [0, -1, 0, 0, -2 * aa],
            [0, 0, -1, 0, 2 * ad],
            [0, 0, 0, -1, -2 * (aa + ac)],
        ]
    elif k == 8:
        rows = [[1 if i == j else 0 for j in range(5)] for i in range(4)]
    else:
        raise ValueError(k)
    return RationalMatrix(rows + [[0, 0, 0, 0, 1]])


def chain_block(m: RationalMatrix, chain: list[TransvectionData], x: RationalMatrix) -> RationalMatrix:
    """Matrix of m on span(v_1..v_k) plus the extra column m x - x, in that basis.

    Assumes span(v_i) is m-invariant and m x - x lies in it.
    """
    k = len(chain)
    vs = RationalMatrix.block([[d.vector for d in chain]])
    target = RationalMatrix.block([[m @ vs, m @ x - x]])
    coeffs = solve(vs, target)
    if coeffs is None:
        raise ValueError("chain span is not invariant")
    bottom = RationalMatrix.row([0] * k + [1])
    return RationalMatrix.block([[coeffs], [bottom]])


def displayed_generator(i: int, al: list) -> RationalMatrix:
    """Normalized-basis matrix of ρ(T) for the i-th chain curve (0-based), extra column α(x)."""
    rows = [[1 if r == c else 0 for c in range(5)] for r in range(5)]
    if i > 0:
        rows[i][i - 1] = -1
    if i < 3:
        rows[i][i + 1] = 1
    rows[i][4] = al[i]
    return RationalMatrix(rows)


DISPLAYED = (
    ("g1^1", displayed_pattern_one, 1),
    ("g1^2", displayed_pattern_one, 2),
    ("g2^1", displayed_pattern_two, 1),
    ("g2^2", displayed_pattern_two, 2),
    ("g2^4", displayed_pattern_two, 4),
)

# powers that are not displayed but asserted to be the identity
IDENTITY_POWERS = (("g1^4", displayed_pattern_one, 4), ("g2^8", displayed_pattern_two, 8))


@dataclass
class CheckReport:
    chain: list[str]
    genus_one_identity: bool
    genus_two_identity: bool | None
    powers: dict = field(default_factory=dict)
    pattern_mismatches: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Both separating twists act trivially."""
        return self.genus_one_identity and self.genus_two_identity is not False

    @property
    def patterns_match(self) -> bool:
        return not any(self.pattern_mismatches.values())

    def to_json(self) -> dict:
        return {
            "chain": self.chain,
            "passed": self.passed,
            "genus_one_identity": self.genus_one_identity,
            "genus_two_identity": self.genus_two_identity,
            "patterns_match": self.patterns_match,
            "pattern_mismatches": {
                k: [{"row": i, "col": j, "computed": str(a), "displayed": str(b)} for i, j, a, b in v]
                for k, v in self.pattern_mismatches.items()
            },
            "powers": {k: m.to_json() for k, m in self.powers.items()},
        }


def separating_twist_check(rep, chain: list[str], patterns: bool = True) -> CheckReport:
    """Evaluate the chain-relation separating twists and compare powers with the displayed matrices."""
    from .presentation import UnknownGenerator

    if len(chain) < 2:
        raise ValueError("need a chain of length at least 2")
    for name in chain:
        if name not in rep.images:
            raise UnknownGenerator(name)
    a, b = chain[0], chain[1]
    m1 = evaluate_word(rep, GroupWord([(a, 2), (b, 1)]))
    powers = {"g1^1": m1, "g1^2": matrix_power(m1, 2)}
    powers["g1^4"] = matrix_power(powers["g1^2"], 2)
    one = powers["g1^4"].is_identity() and evaluate_word(rep, genus_one_word(a, b)).is_identity()
    two = None
    if len(chain) >= 4:
        c, d = chain[2], chain[3]
        m2 = evaluate_word(rep, GroupWord([(a, 2), (b, 1), (c, 1), (d, 1)]))
        powers.update({"g2^1": m2, "g2^2": matrix_power(m2, 2)})
        powers["g2^4"] = matrix_power(powers["g2^2"], 2)
        powers["g2^8"] = matrix_power(powers["g2^4"], 2)
        two = powers["g2^8"].is_identity()
    mism = {}
    if patterns and len(chain) >= 4:
        mism = pattern_mismatches(rep, chain[:4], powers)
    return CheckReport(list(chain), one, two, powers, mism)


def _normalized_chain_frame(rep, chain):
    datas = normalize_chain([extract_transvection(rep.images[s]) for s in chain])
    span = Subspace(rep.dimension, [d.vector.col_tuple(0) for d in datas])
    extras = [RationalMatrix.column(v) for v in span.complement_basis()]
    return datas, extras


def pattern_mismatches(rep, chain: list[str], powers: dict, table=DISPLAYED + IDENTITY_POWERS) -> dict:
    """Entries where the normalized-basis powers differ from the displayed matrices.

    Every standard basis vector outside the chain span serves as the extra
    vector x in turn.  Values are lists of (row, col, computed, displayed).
    """
    datas, extras = _normalized_chain_frame(rep, chain)
    out = {}
    for key, fn, k in table:
        bad = set()
        for x in extras:
            al = [d.alpha(x) for d in datas]
            got, want = chain_block(powers[key], datas, x), fn(k, al)
            for i in range(5):
                for j in range(5):
                    if got[i, j] != want[i, j]:
                        bad.add((i, j, got[i, j], want[i, j]))
        out[key] = sorted(bad, key=lambda t: (t[0], t[1], str(t[2])))
    return out


def generator_block_mismatches(rep, chain: list[str]) -> list:
    """Compare ρ(T_a)..ρ(T_d) in the normalized frame with their displayed matrices."""
    datas, extras = _normalized_chain_frame(rep, chain)
    bad = []
    for i, s in enumerate(chain[:4]):
        for x in extras:
            al = [d.alpha(x) for d in datas]
            if chain_block(rep.images[s], datas, x) != displayed_generator(i, al):
                bad.append(s)
                break
    return bad
