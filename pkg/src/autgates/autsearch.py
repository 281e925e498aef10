"""Code automorphism groups by backtracking with partition refinement.

The search works on a "word structure": n points together with a
permutation-invariant set of words, each word assigning a nonzero symbol to
some points (for a linear code, the codewords of one or two low weight
classes with the single symbol 1).  Point colorings are refined against
word incidences; the backtracking assigns images to a fixed spine of base
points, pruning with color compatibility and with orbits of the subgroup
found so far, in the style of the standard graph-automorphism searches.

A permutation found at a leaf maps point p to point sigma(p); it is stored
as the ``Permutation`` with ``images = sigma^{-1}`` so that ``apply_perm``
moves a word supported on S to one supported on sigma(S).
"""

from __future__ import annotations

from typing import Callable, Sequence

from .codes import LinearCode, dual
from .errors import CapacityError
from .gf2 import BitVector
from .perms import PermGroup, Permutation, apply_perm, apply_perm_mask

DEFAULT_NODE_BUDGET = 500_000


# ---------------------------------------------------------------------------
# Word structures and refinement


class WordStructure:
    """Points 0..n-1 plus words; a word maps some points to symbols 1..s."""

    def __init__(self, n: int, words: Sequence[tuple[int, ...]]):
        self.n = n
        self.words = list(words)
        # incidence[p] = tuple of (word index, symbol) covering point p
        incidence: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for w, masks in enumerate(self.words):
            for s, mask in enumerate(masks, start=1):
                m = mask
                while m:
                    p = (m & -m).bit_length() - 1
                    incidence[p].append((w, s))
                    m &= m - 1
        self.incidence = [tuple(lst) for lst in incidence]

    @classmethod
    def single_symbol(cls, n: int, masks: Sequence[int]) -> "WordStructure":
        return cls(n, [(m,) for m in masks])


class _Refiner:
    """Shared canonical coloring for the two sides of the search."""

    def __init__(self, struct: WordStructure):
        self.struct = struct
        self._point_ids: dict = {}
        self._word_ids: dict = {}

    def _canon(self, table: dict, sig) -> int:
        if sig not in table:
            table[sig] = len(table)
        return table[sig]

    def refine(self, individualized: Sequence[int]) -> tuple[int, ...] | None:
        """Stable point coloring with the given points individualized.

        Colors are canonical across calls: two sides are compatible iff the
        multisets of their colors agree.
        """
        st = self.struct
        n = st.n
        colors = [0] * n
        for pos, p in enumerate(individualized):
            colors[p] = -1 - pos
        colors = [self._canon(self._point_ids, ("init", c)) for c in colors]
        partition = _partition_of(colors)
        while True:
            word_colors = [
                self._canon(
                    self._word_ids,
                    tuple(
                        sorted(
                            (colors[p], s)
                            for s, mask in enumerate(masks, start=1)
                            for p in _bits(mask)
                        )
                    ),
                )
                for masks in st.words
            ]
            new_colors = [
                self._canon(
                    self._point_ids,
                    (
                        colors[p],
                        tuple(sorted((word_colors[w], s) for w, s in st.incidence[p])),
                    ),
                )
                for p in range(n)
            ]
            new_partition = _partition_of(new_colors)
            if new_partition == partition:
                return tuple(new_colors)
            colors = new_colors
            partition = new_partition


def _bits(mask: int):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


def _partition_of(colors: Sequence[int]) -> tuple[int, ...]:
    """Partition fingerprint: each point mapped to the first point sharing
    its color (invariant under renaming of color ids)."""
    first: dict[int, int] = {}
    out = []
    for p, c in enumerate(colors):
        out.append(first.setdefault(c, p))
    return tuple(out)


# ---------------------------------------------------------------------------
# The backtracking search


def search_colored_automorphisms(
    struct: WordStructure,
    leaf_check: Callable[[Permutation], bool],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> PermGroup:
    """Group of all point permutations preserving the word structure and
    passing ``leaf_check``.

    ``leaf_check`` must accept exactly the automorphisms of the underlying
    object; the word structure only has to be invariant under them (it
    prunes, the leaf check decides).
    """
    n = struct.n
    refiner = _Refiner(struct)
    nodes = 0
    spine_base: list[int] = []
    group: PermGroup | None = None  # created lazily with the spine as base

    def group_ref() -> PermGroup:
        nonlocal group
        if group is None:
            group = PermGroup(n, [], base_hint=spine_base)
        return group

    def leaf_perm(src_colors, tgt_colors) -> Permutation | None:
        by_color = {}
        for p, c in enumerate(src_colors):
            by_color.setdefault(c, [[], []])[0].append(p)
        for p, c in enumerate(tgt_colors):
            by_color.setdefault(c, [[], []])[1].append(p)
        sigma = [None] * n
        for c, (src, tgt) in by_color.items():
            if len(src) != 1 or len(tgt) != 1:
                return None
            sigma[src[0]] = tgt[0]
        inv = [0] * n
        for p, t in enumerate(sigma):
            inv[t] = p
        return Permutation(tuple(inv))

    def recurse(src_ind: list[int], tgt_ind: list[int], spine: bool) -> Permutation | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise CapacityError(
                f"automorphism search exceeded {node_budget} nodes",
                partial=group_ref(),
            )
        src_colors = refiner.refine(src_ind)
        tgt_colors = refiner.refine(tgt_ind) if tgt_ind != src_ind else src_colors
        if sorted(src_colors) != sorted(tgt_colors):
            return None
        # branching cell: smallest source class of size >= 2, ties by color id
        class_sizes: dict[int, int] = {}
        for c in src_colors:
            class_sizes[c] = class_sizes.get(c, 0) + 1
        branch_color = min(
            (c for c, s in class_sizes.items() if s >= 2),
            key=lambda c: (class_sizes[c], c),
            default=None,
        )
        if branch_color is None:
            perm = leaf_perm(src_colors, tgt_colors)
            if perm is None or perm.is_identity():
                return None
            return perm if leaf_check(perm) else None
        b = min(p for p in range(n) if src_colors[p] == branch_color)
        candidates = sorted(p for p in range(n) if tgt_colors[p] == branch_color)
        if not spine:
            for t in candidates:
                found = recurse(src_ind + [b], tgt_ind + [t], False)
                if found is not None:
                    return found
            return None
        # Spine node: the identity branch extends the spine; remaining
        # candidates are explored one per orbit of the stabilizer of the
        # spine prefix in the group discovered so far.
        depth = len(spine_base)
        spine_base.append(b)
        recurse(src_ind + [b], tgt_ind + [b], True)
        explored = {b}
        for t in candidates:
            if t == b:
                continue
            orbits = group_ref().stabilizer_orbits(tuple(spine_base[:depth]))
            if any(t in orb and orb & explored for orb in orbits):
                continue
            found = recurse(src_ind + [b], tgt_ind + [t], False)
            explored.add(t)
            if found is not None:
                group_ref().add_generator(found)
        return None

    recurse([], [], True)
    return group_ref()


# ---------------------------------------------------------------------------
# Linear-code automorphisms


def is_automorphism(C: LinearCode, p: Permutation) -> bool:
    """True iff permuting every generator row lands back in the code."""
    if p.degree != C.n:
        raise ValueError("permutation degree does not match code length")
    return all(apply_perm_mask(m, p) in C for m in C.generator.row_masks())


def _enumeration_side(C: LinearCode) -> LinearCode:
    """C or its dual, whichever has the smaller dimension.

    Both have the same automorphism group, so invariant words may be drawn
    from either.
    """
    return C if C.k <= C.n - C.k else dual(C)


def invariant_words(C: LinearCode, min_words: int | None = None) -> list[int]:
    """Codeword masks of the lowest weight classes of C, smallest first.

    Classes are always included whole (any weight class is invariant under
    every automorphism).  Classes are added until at least ``min_words``
    words are collected (default: the code length).
    """
    if min_words is None:
        min_words = C.n
    by_weight: dict[int, list[int]] = {}
    for c in C.codewords():
        if c:
            by_weight.setdefault(c.bit_count(), []).append(c)
    words: list[int] = []
    for w in sorted(by_weight):
        words.extend(by_weight[w])
        if len(words) >= min_words:
            break
    return words


def automorphism_group(
    C: LinearCode, node_budget: int = DEFAULT_NODE_BUDGET
) -> PermGroup:
    """The full permutation automorphism group of C.

    Backtracking over coordinate images with partition refinement against
    the low-weight codeword classes; exact and deterministic.  Raises
    CapacityError (carrying the subgroup found so far) if the node budget
    is exhausted.
    """
    if C.n > 40:
        raise CapacityError("automorphism search supports n <= 40")
    side = _enumeration_side(C)
    struct = WordStructure.single_symbol(C.n, invariant_words(side))

    def leaf(p: Permutation) -> bool:
        return is_automorphism(side, p)

    return search_colored_automorphisms(struct, leaf, node_budget)


def intersect_aut(
    C1: LinearCode, C2: LinearCode, node_budget: int = DEFAULT_NODE_BUDGET
) -> PermGroup:
    """Group of permutations preserving both codes jointly."""
    if C1.n != C2.n:
        raise ValueError("codes must have equal length")
    side1, side2 = _enumeration_side(C1), _enumeration_side(C2)
    words = [(m, 0) for m in invariant_words(side1)]
    words += [(0, m) for m in invariant_words(side2)]
    struct = WordStructure(C1.n, words)

    def leaf(p: Permutation) -> bool:
        return is_automorphism(side1, p) and is_automorphism(side2, p)

    return search_colored_automorphisms(struct, leaf, node_budget)


def brute_force_aut(C: LinearCode) -> PermGroup:
    """Oracle: exhaustive filter of all n! permutations (n <= 8 only)."""
    from itertools import permutations as iter_perms

    if C.n > 8:
        raise ValueError("brute force automorphism search limited to n <= 8")
    word_set = frozenset(C.codewords())
    rows = C.generator.row_masks()
    group = PermGroup(C.n, [])
    for images in iter_perms(range(C.n)):
        p = Permutation(images)
        if all(apply_perm_mask(m, p) in word_set for m in rows):
            if p not in group:
                group.add_generator(p)
    return group
