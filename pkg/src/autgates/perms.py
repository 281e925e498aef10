"""Permutations and permutation groups with a base and strong generating set.

Conventions, used consistently across the package:

* ``apply_perm(v, p)[i] == v[p.images[i]]`` (a permutation rearranges the
  coordinates of a vector).
* ``compose(p, q)`` is "apply p, then q"; with the rule above this means
  ``compose(p, q).images[i] == p.images[q.images[i]]`` and
  ``apply_perm(apply_perm(v, p), q) == apply_perm(v, compose(p, q))``.

Internally the BSGS machinery uses the point action pt -> images[pt], for
which ``compose(p, q)`` acts as "q first, then p"; all transversal and
sifting formulas below are written for that action.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import BitVector


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __call__(self, pt: int) -> int:
        return self.images[pt]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Apply self, then other (same as ``compose(self, other)``)."""
        return compose(self, other)

    def order(self) -> int:
        n = 1
        for cyc in self.cycles():
            m = len(cyc)
            n = n * m // _gcd(n, m)
        return n

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            seen.add(i)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation acting on vectors as p followed by q."""
    if p.degree != q.degree:
        raise ValueError("degree mismatch")
    pi = p.images
    return Permutation(tuple(pi[j] for j in q.images))


def _pcompose(p: Permutation, q: Permutation) -> Permutation:
    """Point-action composition: (_pcompose(p, q))(pt) = p(q(pt))."""
    return compose(p, q)


def apply_perm(v: BitVector, p: Permutation) -> BitVector:
    """Rearrange coordinates: result[i] = v[p.images[i]]."""
    if v.length != p.degree:
        raise ValueError("length mismatch")
    bits = 0
    vb = v.bits
    for i, j in enumerate(p.images):
        bits |= ((vb >> j) & 1) << i
    return BitVector(v.length, bits)


def apply_perm_mask(mask: int, p: Permutation) -> int:
    """apply_perm on a raw bitmask."""
    bits = 0
    for i, j in enumerate(p.images):
        bits |= ((mask >> j) & 1) << i
    return bits


class PermGroup:
    """Permutation group represented by a base and strong generating set.

    The BSGS is built with deterministic, complete Schreier generator
    processing, so orders and membership tests are exact and reproducible.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation],
                 base_hint: Sequence[int] = ()):
        self.degree = degree
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity():
                gens.append(g)
        self.generators = tuple(gens)
        self._base: list[int] = []
        self._level_gens: list[list[Permutation]] = []
        # orbit maps: point -> transversal u with u(base) = point
        self._orbits: list[dict[int, Permutation]] = []
        for b in base_hint:
            self._new_level(b)
        for g in self.generators:
            self._place_generator(g)
        for level in range(len(self._base) - 1, -1, -1):
            self._complete_level(level)

    # -- BSGS construction ---------------------------------------------------

    def _new_level(self, base_point: int):
        self._base.append(base_point)
        self._level_gens.append([])
        self._orbits.append({base_point: Permutation.identity(self.degree)})

    def _gens_at(self, level: int) -> list[Permutation]:
        out = []
        for lvl in range(level, len(self._level_gens)):
            out.extend(self._level_gens[lvl])
        return out

    def _place_generator(self, g: Permutation) -> int:
        """Insert g at the first level whose base point it moves."""
        lvl = 0
        while True:
            if lvl == len(self._base):
                moved = min(i for i, j in enumerate(g.images) if i != j)
                self._new_level(moved)
            if g.images[self._base[lvl]] != self._base[lvl]:
                break
            lvl += 1
        self._level_gens[lvl].append(g)
        for i in range(lvl + 1):
            self._rebuild_orbit(i)
        return lvl

    def _rebuild_orbit(self, level: int):
        base = self._base[level]
        orbit = {base: Permutation.identity(self.degree)}
        frontier = [base]
        gens = self._gens_at(level)
        while frontier:
            new_frontier = []
            for pt in frontier:
                u = orbit[pt]
                for g in gens:
                    img = g.images[pt]
                    if img not in orbit:
                        orbit[img] = _pcompose(g, u)  # maps base -> img
                        new_frontier.append(img)
            frontier = new_frontier
        self._orbits[level] = orbit

    def _complete_level(self, level: int):
        """Process all Schreier generators at this level.

        Assumes deeper levels are complete on entry and leaves them complete.
        """
        restart = True
        while restart:
            restart = False
            orbit = self._orbits[level]
            gens = self._gens_at(level)
            for pt in sorted(orbit):
                u = orbit[pt]
                for g in gens:
                    u_img = orbit[g.images[pt]]
                    sgen = _pcompose(u_img.inverse(), _pcompose(g, u))
                    residue = self._strip(sgen, level + 1)
                    if residue is None:
                        continue
                    placed = self._place_generator(residue)
                    for lvl in range(placed, level, -1):
                        self._complete_level(lvl)
                    restart = True
                    break
                if restart:
                    break

    def _strip(self, g: Permutation, level: int) -> Permutation | None:
        """Sift g through levels >= level; None when g reduces to identity."""
        h = g
        for lvl in range(level, len(self._base)):
            b = self._base[lvl]
            img = h.images[b]
            if img == b:
                continue
            orbit = self._orbits[lvl]
            if img not in orbit:
                return h
            h = _pcompose(orbit[img].inverse(), h)
        return None if h.is_identity() else h

    def add_generator(self, g: Permutation):
        """Extend the group by a new generator, keeping the BSGS complete."""
        if g.degree != self.degree:
            raise ValueError("generator degree mismatch")
        if g.is_identity() or g in self:
            return
        self.generators = self.generators + (g,)
        placed = self._place_generator(g)
        for lvl in range(placed, -1, -1):
            self._complete_level(lvl)

    # -- queries ---------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for orbit in self._orbits:
            n *= len(orbit)
        return n

    def base(self) -> tuple[int, ...]:
        return tuple(self._base)

    def strong_generators(self) -> list[Permutation]:
        return self._gens_at(0)

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        if g.is_identity():
            return True
        return self._strip(g, 0) is None

    def basic_orbits(self) -> list[list[int]]:
        return [sorted(o) for o in self._orbits]

    def stabilizer_orbits(self, fixed: Sequence[int]) -> list[set[int]]:
        """Orbits of the pointwise stabilizer of the given base prefix.

        ``fixed`` must be a prefix of the base; the strong generators fixing
        it generate the full stabilizer because the BSGS is complete.
        """
        if tuple(fixed) != tuple(self._base[: len(fixed)]):
            raise ValueError("fixed points must be a prefix of the base")
        gens = self._gens_at(len(fixed)) if len(fixed) < len(self._base) else []
        return point_orbits(self.degree, gens)

    def elements(self) -> list[Permutation]:
        """All group elements; refuses above 10**6."""
        if self.order() > 10**6:
            raise ValueError("group too large to enumerate")
        elems = [Permutation.identity(self.degree)]
        for level in range(len(self._base) - 1, -1, -1):
            elems = [
                _pcompose(t, e)
                for t in self._orbits[level].values()
                for e in elems
            ]
        return elems

    def random_element(self, rng) -> Permutation:
        g = Permutation.identity(self.degree)
        for orbit in self._orbits:
            t = orbit[rng.choice(sorted(orbit))]
            g = _pcompose(g, t)
        return g

    def same_group(self, other: "PermGroup") -> bool:
        if self.degree != other.degree or self.order() != other.order():
            return False
        return self.is_subgroup_of(other) and other.is_subgroup_of(self)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def point_orbits(degree: int, gens: Sequence[Permutation]) -> list[set[int]]:
    """Orbits of {0..degree-1} under the group generated by gens."""
    seen = [False] * degree
    orbits = []
    for start in range(degree):
        if seen[start]:
            continue
        orb = {start}
        frontier = [start]
        seen[start] = True
        while frontier:
            pt = frontier.pop()
            for g in gens:
                img = g.images[pt]
                if not seen[img]:
                    seen[img] = True
                    orb.add(img)
                    frontier.append(img)
        orbits.append(orb)
    return orbits
