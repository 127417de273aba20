"""Dehn twists acting on the free group π1(Σ_{g,1}).

Independent oracle for the relator catalog.  Σ_{g,2} is a disk with 2g+1
bands attached (a plumbing of the generator curves); capping one boundary
component gives Σ_{g,1}, whose fundamental group is free of rank 2g.  Every
generator twist acts as an explicit automorphism, and Mod(Σ_{g,1}) acts
faithfully on π1, so a word is trivial in the mapping class group iff its
automorphism is the identity.

Free group letters are nonzero ints; -x is the inverse of x.  Band k carries
the free generator k+1.
"""

from __future__ import annotations

from functools import lru_cache


def reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def inverse(w):
    return [-x for x in reversed(w)]


def cyclic_normal_form(w) -> tuple:
    """Canonical representative of the conjugacy class of w or w^-1."""
    w = reduce(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    if not w:
        return ()
    best = None
    for ww in (w, inverse(w)):
        for i in range(len(ww)):
            r = tuple(ww[i:] + ww[:i])
            if best is None or r < best:
                best = r
    return best


def band_sequence(g: int) -> list[int]:
    """Order of band feet around the disk.

    Bands 1..2g form the chain; band 0 straddles one foot of band 4.
    """
    n = 2 * g
    seq = [1, 2, 1]
    for k in range(3, n + 1):
        seq += [k, k - 1]
    seq.append(n)
    idx = seq.index(4)
    return seq[:idx] + [0, 4, 0] + seq[idx + 1:]


def _feet(seq):
    f = {}
    for i, b in enumerate(seq):
        f.setdefault(b, []).append(i)
    return f


def boundary_words(seq, bands=None):
    """Boundary components of the sub-ribbon graph on the given bands.

    Returns (gaps, word) pairs; the gap after the last foot holds the basepoint.
    """
    pos = [i for i, b in enumerate(seq) if bands is None or b in bands]
    sub = [seq[i] for i in pos]
    f = _feet(sub)
    partner = {}
    for p, q in f.values():
        partner[p] = q
        partner[q] = p
    n = len(sub)
    seen = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        gap, word, gaps = start, [], []
        while gap not in seen:
            seen.add(gap)
            gaps.append(gap)
            p = (gap + 1) % n
            b = sub[p]
            word.append(b + 1 if p == f[b][0] else -(b + 1))
            gap = partner[p]
        comps.append((gaps, word))
    return comps


def _twist(seq, k, sign):
    f = _feet(seq)
    km, kp = f[k]
    lo, hi = min(km, kp), max(km, kp)
    sigma = (-1 if km < kp else 1) * sign
    x = k + 1
    aut = {}
    for j, (jm, jp) in f.items():
        w = [j + 1]
        if j != k:
            if lo < jm < hi:
                w = [x * sigma] + w
            if lo < jp < hi:
                w = w + [-x * sigma]
        aut[j + 1] = w
    return aut


def apply(aut, w):
    out = []
    for x in w:
        out += aut[x] if x > 0 else inverse(aut[-x])
    return reduce(out)


def compose(a, b):
    """a after b."""
    return {x: apply(a, w) for x, w in b.items()}


class TwistModel:
    """Generator twists of Σ_{g,1} as automorphisms of F_{2g}."""

    def __init__(self, g: int, sign: int = 1):
        seq = band_sequence(g)
        n = len(seq)
        comps = boundary_words(seq)
        capped = [w for gaps, w in comps if (n - 1) not in gaps][0]
        # solve the capped boundary word for band 0's generator
        i = next(j for j, x in enumerate(capped) if abs(x) == 1)
        w = capped[i:] + capped[:i]
        rest = w[1:]
        self.g = g
        self.seq = seq
        self.proj = {x: [x] for x in range(2, 2 * g + 2)}
        self.proj[1] = reduce(inverse(rest) if w[0] > 0 else rest)
        self.twists = {}
        for k in range(2 * g + 1):
            self.twists[k] = (self._quot(_twist(seq, k, sign)), self._quot(_twist(seq, k, -sign)))

    def _quot(self, aut):
        return {x: apply(self.proj, aut[x]) for x in range(2, 2 * self.g + 2)}

    def identity(self):
        return {x: [x] for x in range(2, 2 * self.g + 2)}

    def word_aut(self, word):
        """Automorphism of a word of (band index, exponent) letters, leftmost applied last."""
        res = self.identity()
        for k, e in word:
            a = self.twists[k][0 if e > 0 else 1]
            for _ in range(abs(e)):
                res = compose(res, a)
        return res

    def is_identity(self, word) -> bool:
        a = self.word_aut(word)
        return all(a[x] == [x] for x in a)

    def curve(self, k: int) -> tuple:
        """Free homotopy class of generator curve k."""
        return cyclic_normal_form(self.proj[k + 1])

    def image_curve(self, word, curve) -> tuple:
        return cyclic_normal_form(apply(self.word_aut(word), list(curve)))

    def sub_boundaries(self, bands) -> list[tuple]:
        return [cyclic_normal_form(apply(self.proj, w)) for _, w in boundary_words(self.seq, set(bands))]

    def abelianize(self, curve) -> tuple[int, ...]:
        v = [0] * (2 * self.g)
        for x in curve:
            v[abs(x) - 2] += 1 if x > 0 else -1
        return tuple(v)


@lru_cache(maxsize=8)
def twist_model(g: int, sign: int = 1) -> TwistModel:
    return TwistModel(g, sign)


def word_is_trivial(g: int, letters, index_of) -> bool:
    """letters: (name, exponent) pairs; index_of maps generator names to band indices."""
    return twist_model(g).is_identity([(index_of[n], e) for n, e in letters])
