"""Matrix groups over GF(2): exact orders, algebra spans, invariant subspaces.

Order computation runs Schreier-Sims on the action on nonzero vectors
(vectors are int bitmasks, matrices act as columns: v -> M v).  Orders are
only reported when certified, by one of:

* ``bound-match``: the orbit product of a (possibly incomplete) stabilizer
  chain is always a lower bound on the group order; when it meets a
  structural upper bound (|GL(d, 2)|, or the product of |GL(dim W_i, 2)|
  over an invariant direct-sum decomposition), the chain is complete and
  the order exact.
* ``deterministic``: complete Schreier generator processing.

The first certificate makes the large examples (dimension 14 to 22)
tractable; the second covers everything small.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapacityError
from .gf2 import (
    BitMatrix,
    Gf2Poly,
    distinct_irreducible_factors,
    inverse,
    is_invertible,
)

DEFAULT_SIFT_BUDGET = 3_000_000
MC_STALL_ROUNDS = 24
MC_MAX_ROUNDS = 4000


def gl_order(n: int, q: int = 2) -> int:
    """|GL(n, q)| = prod (q^n - q^i)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def sl_order(n: int, q: int = 2) -> int:
    """|SL(n, q)| = |GL(n, q)| / (q - 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    return gl_order(n, q) // (q - 1)


# ---------------------------------------------------------------------------
# Small subspace arithmetic on int-mask bases


def echelon_basis(masks: Iterable[int]) -> tuple[int, ...]:
    """Canonical (reduced echelon, sorted descending) basis of a span."""
    basis: dict[int, int] = {}
    for m in masks:
        v = m
        while v:
            pivot = v.bit_length() - 1
            if pivot in basis:
                v ^= basis[pivot]
            else:
                basis[pivot] = v
                break
    # back-reduce for canonicity
    for p in sorted(basis, reverse=True):
        for p2 in basis:
            if p2 > p and (basis[p2] >> p) & 1:
                basis[p2] ^= basis[p]
    return tuple(sorted(basis.values(), reverse=True))


def span_contains(basis: Sequence[int], v: int) -> bool:
    for b in basis:
        if v.bit_length() == b.bit_length():
            v ^= b
    return v == 0


def span_sum(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return echelon_basis(list(a) + list(b))


def span_intersection(a: Sequence[int], b: Sequence[int], dim: int) -> tuple[int, ...]:
    """Zassenhaus: echelonize rows (x | x) for x in a and (y | 0) for y in b;
    rows with zero high half carry the intersection in the low half."""
    rows = [(x << dim) | x for x in a] + [y << dim for y in b]
    ech = echelon_basis(rows)
    low_mask = (1 << dim) - 1
    return echelon_basis([r & low_mask for r in ech if (r >> dim) == 0])


def matvec(M: BitMatrix, v: int) -> int:
    out = 0
    for i, row in enumerate(M.row_masks()):
        out |= ((row & v).bit_count() & 1) << i
    return out


def matvec_cols(cols: Sequence[int], v: int) -> int:
    """M v using the columns of M (fast when v is sparse or reused a lot)."""
    out = 0
    while v:
        out ^= cols[(v & -v).bit_length() - 1]
        v &= v - 1
    return out


def columns_of(M: BitMatrix) -> tuple[int, ...]:
    return M.transpose().row_masks()


# ---------------------------------------------------------------------------
# Matrix group with BSGS on the vector action


@dataclass
class _Level:
    base: int
    gens: list[BitMatrix] = field(default_factory=list)
    gen_cols: list[tuple[int, ...]] = field(default_factory=list)
    inv_gens: list[BitMatrix] = field(default_factory=list)
    # orbit: vector -> (gen level, gen index within that level, parent vector);
    # the base vector maps to (-1, -1, base).  The (level, index) reference is
    # stable under later generator insertions.
    orbit: dict[int, tuple[int, int, int]] = field(default_factory=dict)


class MatrixGroup:
    """Group generated by invertible GF(2) matrices, with exact certified order."""

    def __init__(self, dim: int, generators: Iterable[BitMatrix],
                 base_hint: Sequence[int] = ()):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        gens = []
        for g in generators:
            if g.rows != dim or g.cols != dim:
                raise ValueError("generator has the wrong shape")
            if not is_invertible(g):
                raise ValueError("generators must be invertible")
            if not g.is_identity():
                gens.append(g)
        self.generators = tuple(gens)
        self._levels: list[_Level] = []
        self._certificate: str | None = None
        self._base_hint = tuple(base_hint)
        for b in base_hint:
            if not 0 < b < (1 << dim):
                raise ValueError("base vectors must be nonzero dim-bit masks")
            self._levels.append(_Level(b))
            self._levels[-1].orbit = {b: (-1, -1, b)}

    # -- chain plumbing ----------------------------------------------------

    def _gens_at(self, level: int) -> list[BitMatrix]:
        out = []
        for lvl in range(level, len(self._levels)):
            out.extend(self._levels[lvl].gens)
        return out

    def _gen_refs_at(self, level: int) -> list[tuple[int, int]]:
        """Stable (level, index) references for gens at levels >= level."""
        out = []
        for lvl in range(level, len(self._levels)):
            out.extend((lvl, i) for i in range(len(self._levels[lvl].gens)))
        return out

    def _place_generator(self, g: BitMatrix) -> int:
        lvl = 0
        while True:
            if lvl == len(self._levels):
                moved = next(
                    1 << i for i in range(self.dim)
                    if matvec(g, 1 << i) != 1 << i
                )
                level = _Level(moved)
                level.orbit = {moved: (-1, -1, moved)}
                self._levels.append(level)
            level = self._levels[lvl]
            if matvec(g, level.base) != level.base:
                break
            lvl += 1
        level = self._levels[lvl]
        gi = len(level.gens)
        level.gens.append(g)
        level.gen_cols.append(columns_of(g))
        level.inv_gens.append(inverse(g))
        for i in range(lvl + 1):
            self._extend_orbit(i, (lvl, gi))
        return lvl

    def _extend_orbit(self, level: int, new_ref: tuple[int, int] | None = None):
        """Grow the orbit at ``level``; with ``new_ref`` given, seed the
        frontier only with points the new generator moves out of the orbit."""
        L = self._levels[level]
        if not L.orbit:
            L.orbit = {L.base: (-1, -1, L.base)}
        refs = self._gen_refs_at(level)
        if new_ref is not None:
            nl, ni = new_ref
            cols = self._levels[nl].gen_cols[ni]
            frontier = []
            for v in list(L.orbit):
                img = matvec_cols(cols, v)
                if img not in L.orbit:
                    L.orbit[img] = (nl, ni, v)
                    frontier.append(img)
        else:
            frontier = list(L.orbit)
        while frontier:
            new_frontier = []
            for v in frontier:
                for rl, ri in refs:
                    img = matvec_cols(self._levels[rl].gen_cols[ri], v)
                    if img not in L.orbit:
                        L.orbit[img] = (rl, ri, v)
                        new_frontier.append(img)
            frontier = new_frontier

    def _transversal_inv_apply(self, level: int, v: int, M: BitMatrix) -> BitMatrix:
        """U_v^{-1} @ M, walking the Schreier vector from v up to the base."""
        L = self._levels[level]
        while v != L.base:
            gl, gi, parent = L.orbit[v]
            M = self._levels[gl].inv_gens[gi] @ M
            v = parent
        return M

    def _strip(self, M: BitMatrix, level: int = 0) -> BitMatrix | None:
        """Sift M through the chain; None when it reduces to the identity."""
        h = M
        for lvl in range(level, len(self._levels)):
            L = self._levels[lvl]
            img = matvec(h, L.base)
            if img == L.base:
                continue
            if img not in L.orbit:
                return h
            h = self._transversal_inv_apply(lvl, img, h)
        return None if h.is_identity() else h

    # -- construction strategies --------------------------------------------

    def _monte_carlo_build(self):
        """Randomized build: sift pseudo-random elements until stall.

        Leaves a chain whose orbit product is a certified lower bound of the
        group order (it is the exact order of the subgroup generated by the
        strong generators found so far, or smaller).
        """
        for g in self.generators:
            if self._strip(g) is not None:
                self._place_generator(g)
        if not self.generators:
            return
        rng = random.Random(0xC0DE)
        reservoir = list(self.generators) * 2
        acc = BitMatrix.identity(self.dim)
        stall = 0
        rounds = 0
        while stall < MC_STALL_ROUNDS and rounds < MC_MAX_ROUNDS:
            rounds += 1
            i = rng.randrange(len(reservoir))
            j = rng.randrange(len(reservoir))
            if i != j:
                reservoir[i] = reservoir[i] @ reservoir[j]
            acc = acc @ reservoir[i]
            residue = self._strip(acc)
            if residue is None:
                stall += 1
            else:
                stall = 0
                self._place_generator(residue)

    def _deterministic_complete(self, budget: int):
        """Full Schreier generator processing, bottom-up; exact on success."""
        counter = [0]
        for level in range(len(self._levels) - 1, -1, -1):
            self._complete_level(level, counter, budget)

    def _complete_level(self, level: int, counter: list[int], budget: int):
        restart = True
        while restart:
            restart = False
            L = self._levels[level]
            refs = self._gen_refs_at(level)
            for v in sorted(L.orbit):
                u_stack: BitMatrix | None = None
                for rl, ri in refs:
                    counter[0] += 1
                    if counter[0] > budget:
                        raise CapacityError(
                            "Schreier-Sims sift budget exhausted",
                            partial=self.orbit_product(),
                        )
                    g = self._levels[rl].gens[ri]
                    img = matvec_cols(self._levels[rl].gen_cols[ri], v)
                    if u_stack is None:
                        u_stack = self._transversal(level, v)
                    sgen = self._transversal_inv_apply(level, img, g @ u_stack)
                    residue = self._strip(sgen, level + 1)
                    if residue is None:
                        continue
                    placed = self._place_generator(residue)
                    for lvl in range(placed, level, -1):
                        self._complete_level(lvl, counter, budget)
                    restart = True
                    break
                if restart:
                    break

    def _transversal(self, level: int, v: int) -> BitMatrix:
        """U_v with U_v @ base = v.

        Walking v -> parent -> ... -> base meets the deepest edge generator
        first; it is the leftmost factor, so factors accumulate on the right.
        """
        L = self._levels[level]
        M = BitMatrix.identity(self.dim)
        while v != L.base:
            gl, gi, parent = L.orbit[v]
            M = M @ self._levels[gl].gens[gi]
            v = parent
        return M

    # -- order and membership -------------------------------------------------

    def orbit_product(self) -> int:
        out = 1
        for L in self._levels:
            out *= max(1, len(L.orbit))
        return out

    def structural_upper_bound(
        self, extra_candidates: Sequence[tuple[int, ...]] = ()
    ) -> int:
        """|GL| product over an invariant direct-sum decomposition."""
        decomp = invariant_direct_sum(self, extra_candidates)
        out = 1
        for basis in decomp:
            out *= gl_order(len(basis))
        return out

    def ensure_exact(
        self,
        sift_budget: int = DEFAULT_SIFT_BUDGET,
        extra_candidates: Sequence[tuple[int, ...]] = (),
    ):
        """Certify the stabilizer chain; sets ``certificate``."""
        if self._certificate is not None:
            return
        if not self.generators:
            self._certificate = "trivial"
            return
        self._monte_carlo_build()
        lower = self.orbit_product()
        if lower == gl_order(self.dim):
            self._certificate = "bound-match:GL"
            return
        if lower == self.structural_upper_bound(extra_candidates):
            self._certificate = "bound-match:decomposition"
            return
        self._deterministic_complete(sift_budget)
        self._certificate = "deterministic"

    @property
    def certificate(self) -> str | None:
        return self._certificate

    def order(self, sift_budget: int = DEFAULT_SIFT_BUDGET) -> int:
        self.ensure_exact(sift_budget)
        return self.orbit_product()

    def __contains__(self, M: BitMatrix) -> bool:
        if M.rows != self.dim or M.cols != self.dim:
            return False
        if M.is_identity():
            return True
        self.ensure_exact()
        return self._strip(M) is None

    def contains_group(self, other: "MatrixGroup") -> bool:
        return all(g in self for g in other.generators)

    def same_group(self, other: "MatrixGroup") -> bool:
        return (
            self.dim == other.dim
            and self.order() == other.order()
            and self.contains_group(other)
        )

    def base_vectors(self) -> list[int]:
        return [L.base for L in self._levels]

    def stabilizer_data(self, prefix_len: int) -> tuple[int, list[BitMatrix]]:
        """(order, generators) of the pointwise stabilizer of base[:prefix_len].

        Exact once the chain is certified: the strong generators at deeper
        levels generate the full stabilizer, whose order is the product of
        the remaining orbit sizes.
        """
        self.ensure_exact()
        if prefix_len > len(self._levels):
            raise ValueError("prefix longer than the base")
        order = 1
        for L in self._levels[prefix_len:]:
            order *= max(1, len(L.orbit))
        return order, self._gens_at(prefix_len)

    def random_element(self, rng) -> BitMatrix:
        self.ensure_exact()
        M = BitMatrix.identity(self.dim)
        for lvl in range(len(self._levels)):
            v = rng.choice(sorted(self._levels[lvl].orbit))
            M = M @ self._transversal(lvl, v)
        return M

    def __repr__(self) -> str:
        state = self._certificate or "unbuilt"
        return f"MatrixGroup(dim={self.dim}, {state})"


def matrix_group_order(G: MatrixGroup, sift_budget: int = DEFAULT_SIFT_BUDGET) -> int:
    """Exact order of the group (certified); raises CapacityError with the
    best lower bound if the budget is exhausted."""
    return G.order(sift_budget)


# ---------------------------------------------------------------------------
# Algebra span (GF(2) span of all products of the generators)


@dataclass(frozen=True)
class AlgebraSpan:
    dim_ambient: int
    basis: tuple[BitMatrix, ...]
    dimension: int


def _vec_of(M: BitMatrix) -> int:
    out = 0
    for i, row in enumerate(M.row_masks()):
        out |= row << (i * M.cols)
    return out


def algebra_span(gens: Sequence[BitMatrix]) -> AlgebraSpan:
    """Smallest GF(2)-linear span containing the generators and closed under
    products (two-sided fixed-point iteration)."""
    if not gens:
        raise ValueError("need at least one generator")
    k = gens[0].rows
    if any(g.rows != k or g.cols != k for g in gens):
        raise ValueError("generators must be square of equal size")
    pivots: dict[int, int] = {}

    def reduce_vec(v: int) -> int:
        while v:
            p = v.bit_length() - 1
            if p not in pivots:
                return v
            v ^= pivots[p]
        return 0

    basis: list[BitMatrix] = []
    queue: list[BitMatrix] = []

    def insert(M: BitMatrix) -> bool:
        v = reduce_vec(_vec_of(M))
        if v == 0:
            return False
        pivots[v.bit_length() - 1] = v
        basis.append(M)
        queue.append(M)
        return True

    for g in gens:
        insert(g)
    while queue:
        M = queue.pop()
        for g in gens:
            if len(basis) == k * k:
                queue.clear()
                break
            insert(M @ g)
            insert(g @ M)
    return AlgebraSpan(k * k, tuple(basis), len(basis))


# ---------------------------------------------------------------------------
# The two-block gate group


def block_diag(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    rows = list(a.row_masks()) + [r << a.cols for r in b.row_masks()]
    return BitMatrix(rows, a.cols + b.cols)


def build_g12(css, aut, base_hint: Sequence[int] = ()) -> MatrixGroup:
    """Group generated by the two transversal CNOT label maps and the
    block-diagonal pairs (t1(pi), I), (I, t1(pi)) over the automorphism
    generators."""
    from .logical import FIRST_CONTROLS, SECOND_CONTROLS, induced_action, transversal_cnot

    k = css.k
    if k < 1:
        raise ValueError("CSS code has no logical qubits")
    eye = BitMatrix.identity(k)
    gens = [
        transversal_cnot(k, FIRST_CONTROLS).m,
        transversal_cnot(k, SECOND_CONTROLS).m,
    ]
    for p in aut.generators:
        t1 = induced_action(css, p).t1
        gens.append(block_diag(t1, eye))
        gens.append(block_diag(eye, t1))
    return MatrixGroup(2 * k, gens, base_hint=base_hint)


# ---------------------------------------------------------------------------
# Invariant subspaces by spinning


@dataclass(frozen=True)
class InvariantChain:
    """Ascending proper nonzero invariant subspaces (echelon bases)."""

    dim: int
    subspaces: tuple[tuple[int, ...], ...]

    def block_dimensions(self) -> list[int]:
        """Dimensions of the successive quotients, endpoints included."""
        dims = [0] + [len(s) for s in self.subspaces] + [self.dim]
        return [b - a for a, b in zip(dims, dims[1:]) if b - a > 0]


def minimal_polynomial(M: BitMatrix) -> Gf2Poly:
    """Minimal polynomial of a square GF(2) matrix."""
    d = M.rows
    pivots: dict[int, tuple[int, int]] = {}  # pivot -> (vec, coeffs)
    power = BitMatrix.identity(d)
    i = 0
    while True:
        v, c = _vec_of(power), 1 << i
        while v:
            p = v.bit_length() - 1
            if p not in pivots:
                break
            pv, pc = pivots[p]
            v ^= pv
            c ^= pc
        if v == 0:
            return Gf2Poly(c)
        pivots[v.bit_length() - 1] = (v, c)
        power = power @ M
        i += 1


def poly_of_matrix(f: Gf2Poly, M: BitMatrix) -> BitMatrix:
    out = BitMatrix.zero(M.rows, M.cols)
    power = BitMatrix.identity(M.rows)
    c = f.coeffs
    while c:
        if c & 1:
            out = out + power
        c >>= 1
        if c:
            power = power @ M
    return out


def _kernel_masks(M: BitMatrix) -> list[int]:
    from .gf2 import kernel_basis

    return list(kernel_basis(M).row_masks())


def spin(seed: int, gen_cols: Sequence[Sequence[int]], dim: int) -> tuple[int, ...]:
    """Smallest subspace containing seed and invariant under all generators."""
    basis = echelon_basis([seed])
    frontier = [seed]
    while frontier:
        new_frontier = []
        for v in frontier:
            for cols in gen_cols:
                w = matvec_cols(cols, v)
                if not span_contains(basis, w):
                    basis = span_sum(basis, [w])
                    new_frontier.append(w)
        frontier = new_frontier
    return basis


def _is_invariant(basis: Sequence[int], gen_cols) -> bool:
    return all(
        span_contains(basis, matvec_cols(cols, v)) for v in basis for cols in gen_cols
    )


def invariant_subspace_candidates(
    G: MatrixGroup, extra_candidates: Sequence[tuple[int, ...]] = ()
) -> list[tuple[int, ...]]:
    """Proper nonzero invariant subspaces found from spinning seeds.

    Seeds: the unit vectors; the kernels of p(g) for every irreducible
    factor p of the minimal polynomial of each generator and of a few
    deterministic probe products; pairwise intersections of those kernels
    (which isolate shared primary components); and the common fixed space
    of all generators.  The collection of spun subspaces is closed under
    pairwise sums and intersections.  ``extra_candidates`` are checked for
    invariance and merged in.
    """
    dim = G.dim
    gen_cols = [columns_of(g) for g in G.generators]
    if not G.generators:
        return [echelon_basis([1 << i]) for i in range(dim)]
    probes = list(G.generators)
    rng = random.Random(17)
    for _ in range(6):
        a, b = rng.choice(G.generators), rng.choice(probes)
        probes.append(a @ b)
    kernels: list[tuple[int, ...]] = []
    eye = BitMatrix.identity(dim)
    for M in probes:
        mp = minimal_polynomial(M)
        for p in distinct_irreducible_factors(mp):
            K = echelon_basis(_kernel_masks(poly_of_matrix(p, M)))
            if K:
                kernels.append(K)
    seeds = [1 << i for i in range(dim)]
    for K in kernels:
        seeds.extend(K)
    for i in range(len(kernels)):
        for j in range(i + 1, len(kernels)):
            seeds.extend(span_intersection(kernels[i], kernels[j], dim))
    found: set[tuple[int, ...]] = set()
    fixed = echelon_basis([1 << i for i in range(dim)])
    for g in G.generators:
        fixed = span_intersection(
            fixed, echelon_basis(_kernel_masks(g + eye)), dim
        )
    if 0 < len(fixed) < dim:
        found.add(fixed)
    for W in extra_candidates:
        W = echelon_basis(W)
        if 0 < len(W) < dim and _is_invariant(W, gen_cols):
            found.add(W)
    for s in seeds:
        if s == 0:
            continue
        W = spin(s, gen_cols, dim)
        if 0 < len(W) < dim:
            found.add(W)
    # close under sums and intersections (both invariant)
    changed = True
    while changed and len(found) < 200:
        changed = False
        pool = sorted(found)
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                for W in (
                    span_sum(pool[i], pool[j]),
                    span_intersection(pool[i], pool[j], dim),
                ):
                    if 0 < len(W) < dim and W not in found:
                        found.add(W)
                        changed = True
    for W in found:
        assert _is_invariant(W, gen_cols)
    return sorted(found, key=lambda W: (len(W), W))


def invariant_subspaces(G: MatrixGroup) -> InvariantChain:
    """A maximal chain among the discovered invariant subspaces."""
    candidates = invariant_subspace_candidates(G)
    chain: list[tuple[int, ...]] = []
    current: tuple[int, ...] = ()
    while True:
        nxt = None
        for W in candidates:
            if len(W) > len(current) and all(span_contains(W, v) for v in current):
                nxt = W
                break
        if nxt is None:
            break
        chain.append(nxt)
        current = nxt
    return InvariantChain(G.dim, tuple(chain))


def invariant_direct_sum(
    G: MatrixGroup, extra_candidates: Sequence[tuple[int, ...]] = ()
) -> list[tuple[int, ...]]:
    """Invariant subspaces summing directly to the whole space.

    Falls back to [whole space] when no proper decomposition is found.
    """
    dim = G.dim
    whole = echelon_basis([1 << i for i in range(dim)])
    candidates = invariant_subspace_candidates(G, extra_candidates)
    picked: list[tuple[int, ...]] = []
    covered: tuple[int, ...] = ()
    for W in candidates:
        if len(span_intersection(covered, W, dim)) == 0:
            picked.append(W)
            covered = span_sum(covered, W)
            if len(covered) == dim:
                return picked
    return [whole]


def adapted_basis(chain: InvariantChain) -> BitMatrix:
    """Rows: basis of the first subspace, extended along the chain to a
    basis of the whole space."""
    dim = chain.dim
    rows: list[int] = []
    basis: tuple[int, ...] = ()
    for W in list(chain.subspaces) + [echelon_basis([1 << i for i in range(dim)])]:
        for v in W:
            if not span_contains(basis, v):
                basis = span_sum(basis, [v])
                rows.append(v)
    return BitMatrix(rows, dim)


def restricted_block_group(G: MatrixGroup, chain: InvariantChain) -> list[MatrixGroup]:
    """Induced matrix groups on the successive quotients of the chain."""
    dims = [0] + [len(s) for s in chain.subspaces] + [G.dim]
    T = adapted_basis(chain)
    T_t = T.transpose()
    T_t_inv = inverse(T_t)
    blocks: list[list[BitMatrix]] = [[] for _ in range(len(dims) - 1)]
    for g in G.generators:
        ad = T_t_inv @ g @ T_t
        for bi in range(len(dims) - 1):
            lo, hi = dims[bi], dims[bi + 1]
            idx = range(lo, hi)
            sub = ad.submatrix(idx, idx)
            # Everything below the diagonal block must vanish (invariance).
            for i in range(hi, G.dim):
                for j in idx:
                    assert ad.entry(i, j) == 0, "chain is not invariant"
            blocks[bi].append(sub)
    return [
        MatrixGroup(dims[bi + 1] - dims[bi], mats) for bi, mats in enumerate(blocks)
    ]


# ---------------------------------------------------------------------------
# Module conjugation (basis matching between two representations)


def _group_closure(gens: Sequence[BitMatrix], cap: int) -> set[BitMatrix]:
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        new_frontier = []
        for a in frontier:
            for g in gens:
                c = a @ g
                if c not in seen:
                    if len(seen) >= cap:
                        raise CapacityError("group closure exceeded cap")
                    seen.add(c)
                    new_frontier.append(c)
        frontier = new_frontier
    return seen


def _intertwiner_space(g: BitMatrix, h: BitMatrix) -> list[BitMatrix]:
    """Basis of {S : S g = h S} as matrices.

    Unknowns are the entries S_ab (bit a*d + b); the (i, j) constraint is
    sum_b S_ib g_bj + sum_a h_ia S_aj = 0.
    """
    from .gf2 import kernel_basis

    d = g.rows
    g_cols = columns_of(g)
    h_rows = h.row_masks()
    rows = []
    for i in range(d):
        for j in range(d):
            mask = g_cols[j] << (i * d)
            hr = h_rows[i]
            while hr:
                a = (hr & -hr).bit_length() - 1
                mask ^= 1 << (a * d + j)
                hr &= hr - 1
            rows.append(mask)
    K = kernel_basis(BitMatrix(rows, d * d))
    mask_d = (1 << d) - 1
    return [
        BitMatrix(((m >> (a * d)) & mask_d for a in range(d)), d)
        for m in K.row_masks()
    ]


def module_conjugator(
    src_gens: Sequence[BitMatrix],
    dst_gens: Sequence[BitMatrix],
    cap: int = 40000,
) -> BitMatrix | None:
    """Invertible S with S <src> S^{-1} = <dst>, or None.

    Enumerates both groups, matches one destination element against source
    elements with the same minimal polynomial, and scans the invertible
    intertwiners; the returned S is verified on the full generator lists.
    """
    d = src_gens[0].rows
    src_set = _group_closure(src_gens, cap)
    dst_set = _group_closure(dst_gens, cap)
    if len(src_set) != len(dst_set):
        return None
    src_by_minpoly: dict[int, list[BitMatrix]] = {}
    for g in src_set:
        src_by_minpoly.setdefault(minimal_polynomial(g).coeffs, []).append(g)
    dst_fp = [(minimal_polynomial(h), h) for h in dst_set]
    # Prefer destination elements with a high-degree minimal polynomial
    # (small intertwiner space) and few source candidates.
    dst_fp.sort(
        key=lambda t: (
            -t[0].degree,
            len(src_by_minpoly.get(t[0].coeffs, [])),
            _vec_of(t[1]),
        )
    )
    for mp, h in dst_fp[: max(1, len(dst_fp) // 8)]:
        candidates = src_by_minpoly.get(mp.coeffs, [])
        if not candidates:
            return None  # conjugate groups have matching minpoly multisets
        for g in candidates:
            space = _intertwiner_space(g, h)
            if not space or len(space) > 14:
                continue
            for combo in range(1, 1 << len(space)):
                S = BitMatrix.zero(d, d)
                m = combo
                while m:
                    S = S + space[(m & -m).bit_length() - 1]
                    m &= m - 1
                if not is_invertible(S):
                    continue
                S_inv = inverse(S)
                if all(S @ a @ S_inv in dst_set for a in src_gens):
                    return S
    return None


# ---------------------------------------------------------------------------
# Family structure checks


@dataclass(frozen=True)
class CyclicBlockStructure:
    factor_degrees: tuple[int, ...]
    spanning_possible: tuple[bool, ...]
    shift_algebra_dims: tuple[int, ...]


def companion_matrix(f: Gf2Poly) -> BitMatrix:
    d = f.degree
    rows = []
    top = f.coeffs & ((1 << d) - 1)
    for i in range(d):
        row = ((top >> i) & 1) << (d - 1)
        if i > 0:
            row |= 1 << (i - 1)
        rows.append(row)
    return BitMatrix(rows, d)


def cyclic_block_structure(spec1, spec2) -> CyclicBlockStructure:
    """Block structure of the coset space of nested cyclic codes.

    spec1 is the outer code, spec2 the inner one; their generator
    polynomials satisfy g2 = g1 * h, and the coset space splits into shift-
    invariant blocks of dimension deg(h_i) over the irreducible factors h_i
    of h.  ``spanning_possible`` records the n >= delta_i^2 necessary
    condition for the shift-generated algebra to be completable to the full
    delta_i x delta_i matrix algebra; ``shift_algebra_dims`` is the actual
    dimension of the algebra generated by the shift alone on each block.
    """
    if spec1.n != spec2.n:
        raise ValueError("cyclic codes must share the length")
    q, r = spec2.g.divmod(spec1.g)
    if not r.is_zero():
        raise ValueError("codes are not nested: g1 does not divide g2")
    h = q
    factors = distinct_irreducible_factors(h)
    if sum(p.degree for p in factors) != h.degree:
        raise ValueError("h(X) is not squarefree")
    degrees = tuple(p.degree for p in factors)
    flags = tuple(spec1.n >= d * d for d in degrees)
    dims = tuple(
        algebra_span([companion_matrix(p)]).dimension for p in factors
    )
    return CyclicBlockStructure(degrees, flags, dims)


def rm_block_check(r: int, s: int, m: int) -> bool:
    """Degree-block triangularity of the affine-group action on the coset
    space of RM(r, m) inside RM(r+s, m).

    The logical basis is the monomial basis ordered by ascending degree
    (degrees r+1 .. r+s); for every generator of the affine group the
    logical block must not map a low-degree monomial class into a higher
    one (affine substitution never raises the degree).
    """
    from itertools import combinations

    from .codes import LinearCode, css_from_pair, reed_muller, _monomial_evaluation
    from .gf2 import BitVector
    from .logical import induced_action
    from .perms import Permutation

    if not (0 <= r < r + s <= m <= 5):
        raise ValueError("need 0 <= r < r+s <= m <= 5")
    c1 = reed_muller(r + s, m)
    c2 = reed_muller(r, m)
    block_sizes = []
    rows = []
    for deg in range(r + 1, r + s + 1):
        monos = list(combinations(range(m), deg))
        block_sizes.append(len(monos))
        rows.extend(_monomial_evaluation(v, m) for v in monos)
    css = css_from_pair(c1, c2, logical_basis=BitMatrix(rows, 1 << m))
    n = 1 << m
    gens = []
    for j in range(m):  # translations x -> x + e_j
        gens.append(Permutation(tuple(x ^ (1 << j) for x in range(n))))
    # GL(m, 2): a basis cycle and one transvection generate the group
    cyc = Permutation(tuple(_apply_linear_point(_cycle_matrix(m), x) for x in range(n)))
    tv = Permutation(tuple(_apply_linear_point(_transvection_matrix(m), x) for x in range(n)))
    gens += [cyc, tv]
    bounds = []
    acc = 0
    for size in block_sizes:
        acc += size
        bounds.append(acc)

    def block_of(i: int) -> int:
        return next(b for b, hi in enumerate(bounds) if i < hi)

    for p in gens:
        act = induced_action(css, p)
        L = act.t1.transpose()  # row-expression block: image of row i over rows j
        for i in range(L.rows):
            for j in range(L.cols):
                if L.entry(i, j) and block_of(j) > block_of(i):
                    return False
    return True


def _cycle_matrix(m: int) -> BitMatrix:
    return BitMatrix([1 << ((i + 1) % m) for i in range(m)], m)


def _transvection_matrix(m: int) -> BitMatrix:
    rows = [1 << i for i in range(m)]
    rows[0] |= 1 << 1 if m > 1 else 0
    return BitMatrix(rows, m)


def _apply_linear_point(A: BitMatrix, x: int) -> int:
    return matvec(A, x)
