"""Additive GF(4) stabilizer codes and the symplectic action of their
permutation automorphisms on the logical operators.

A GF(4) symbol is a pair of bits per coordinate: 0 <-> (0,0), 1 <-> (1,0)
standing for Pauli X, omega <-> (0,1) for Z, and omega^2 <-> (1,1) for Y.
A length-n vector packs the X-parts and Z-parts into two n-bit masks; its
image is the 2n-bit mask (z_bits << n) | x_bits used for all linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .autsearch import WordStructure, search_colored_automorphisms, DEFAULT_NODE_BUDGET
from .errors import CapacityError
from .gf2 import BitMatrix, in_row_space, rank, rref, solve, BitVector
from .perms import PermGroup, Permutation, apply_perm_mask

_SYMBOLS = {"0": (0, 0), "1": (1, 0), "w": (0, 1), "W": (1, 1)}
_SYMBOL_NAMES = {v: k for k, v in _SYMBOLS.items()}


@dataclass(frozen=True)
class Gf4Vector:
    """Vector over GF(4) stored as per-coordinate (x, z) bit pairs."""

    length: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        for bits in (self.x_bits, self.z_bits):
            if bits < 0 or bits >> self.length:
                raise ValueError("bits outside the vector length")

    @classmethod
    def from_string(cls, s: str) -> "Gf4Vector":
        s = s.strip()
        x = z = 0
        for i, ch in enumerate(s):
            try:
                xb, zb = _SYMBOLS[ch]
            except KeyError:
                raise ValueError(f"bad GF(4) symbol {ch!r}") from None
            x |= xb << i
            z |= zb << i
        return cls(len(s), x, z)

    def to_string(self) -> str:
        return "".join(
            _SYMBOL_NAMES[((self.x_bits >> i) & 1, (self.z_bits >> i) & 1)]
            for i in range(self.length)
        )

    def image(self) -> int:
        """The 2n-bit GF(2) image (z-half high, x-half low)."""
        return (self.z_bits << self.length) | self.x_bits

    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def __add__(self, other: "Gf4Vector") -> "Gf4Vector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return Gf4Vector(
            self.length, self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits
        )

    def permuted(self, p: Permutation) -> "Gf4Vector":
        return Gf4Vector(
            self.length,
            apply_perm_mask(self.x_bits, p),
            apply_perm_mask(self.z_bits, p),
        )

    def __str__(self) -> str:
        return self.to_string()


def symplectic_inner(u: Gf4Vector, v: Gf4Vector) -> int:
    """Trace inner product bit: 0 iff the Pauli operators commute."""
    if u.length != v.length:
        raise ValueError("length mismatch")
    return ((u.x_bits & v.z_bits).bit_count() + (u.z_bits & v.x_bits).bit_count()) % 2


class StabilizerCode:
    """[[n, k]] stabilizer code given by generators and logical operators."""

    __slots__ = ("n", "k", "stabilizer_gens", "logical_x", "logical_z", "_span")

    def __init__(self, stabilizer_gens: Sequence[Gf4Vector],
                 logical_x: Sequence[Gf4Vector], logical_z: Sequence[Gf4Vector]):
        if not stabilizer_gens and not logical_x:
            raise ValueError("empty stabilizer code")
        n = (stabilizer_gens[0] if stabilizer_gens else logical_x[0]).length
        k = len(logical_x)
        if len(logical_z) != k:
            raise ValueError("logical X and Z counts differ")
        if len(stabilizer_gens) != n - k:
            raise ValueError(f"expected {n - k} stabilizer generators")
        violations = _commutation_violations(stabilizer_gens, logical_x, logical_z)
        if violations:
            raise ValueError(
                "commutation violations: " + "; ".join(violations)
            )
        rows = [v.image() for v in (*stabilizer_gens, *logical_x, *logical_z)]
        if rank(BitMatrix(rows, 2 * n)) != len(rows):
            raise ValueError("stabilizer and logical images are linearly dependent")
        self.n = n
        self.k = k
        self.stabilizer_gens = tuple(stabilizer_gens)
        self.logical_x = tuple(logical_x)
        self.logical_z = tuple(logical_z)
        self._span = rref(BitMatrix([s.image() for s in stabilizer_gens], 2 * n))[0]

    def stabilizer_span(self) -> BitMatrix:
        return self._span

    def __repr__(self) -> str:
        return f"StabilizerCode[[{self.n},{self.k}]]"


def _commutation_violations(stab, log_x, log_z) -> list[str]:
    out = []
    named = [(f"S{i}", s) for i, s in enumerate(stab)]
    named += [(f"X{i}", x) for i, x in enumerate(log_x)]
    named += [(f"Z{i}", z) for i, z in enumerate(log_z)]
    for a in range(len(named)):
        for b in range(a, len(named)):
            na, va = named[a]
            nb, vb = named[b]
            want = 1 if (na[0], nb[0]) in {("X", "Z"), ("Z", "X")} and na[1:] == nb[1:] else 0
            if symplectic_inner(va, vb) != want:
                word = "anticommute" if want == 0 else "commute"
                out.append(f"{na} and {nb} {word}")
    return out


def load_stabilizer(rows: Sequence[str] | Sequence[Gf4Vector],
                    sections: tuple[int, int, int]) -> StabilizerCode:
    """Build a stabilizer code from GF(4) rows split into
    (stabilizer, logical X, logical Z) sections."""
    vecs = [
        r if isinstance(r, Gf4Vector) else Gf4Vector.from_string(r) for r in rows
    ]
    n_stab, n_x, n_z = sections
    if len(vecs) != n_stab + n_x + n_z:
        raise ValueError("section sizes do not match the number of rows")
    return StabilizerCode(
        vecs[:n_stab], vecs[n_stab:n_stab + n_x], vecs[n_stab + n_x:]
    )


def stab_is_automorphism(S: StabilizerCode, p: Permutation) -> bool:
    """True iff permuting coordinates preserves the stabilizer's GF(2) span."""
    if p.degree != S.n:
        raise ValueError("permutation degree does not match the code length")
    span = S.stabilizer_span()
    for s in S.stabilizer_gens:
        img = s.permuted(p).image()
        if not in_row_space(span, BitVector(2 * S.n, img)):
            return False
    return True


def _span_words(S: StabilizerCode) -> list[tuple[int, int, int]]:
    """All nonzero stabilizer elements as (X-mask, Z-mask, Y-mask) words."""
    if S.n - S.k > 16:
        raise CapacityError("stabilizer span too large to enumerate")
    gens = [(s.x_bits, s.z_bits) for s in S.stabilizer_gens]
    words = []
    m = len(gens)
    x = z = 0
    for i in range(1, 1 << m):
        gx, gz = gens[(i & -i).bit_length() - 1]
        x ^= gx
        z ^= gz
        words.append((x & ~z, z & ~x, x & z))
    return words


def stab_aut_group(S: StabilizerCode,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """Full permutation automorphism group of the stabilizer span (n <= 16)."""
    if S.n > 16:
        raise CapacityError("stabilizer automorphism search supports n <= 16")
    struct = WordStructure(S.n, _span_words(S))

    def leaf(p: Permutation) -> bool:
        return stab_is_automorphism(S, p)

    return search_colored_automorphisms(struct, leaf, node_budget)


def brute_force_stab_aut(S: StabilizerCode) -> PermGroup:
    """Oracle: exhaustive filter of all n! permutations (n <= 6 only)."""
    from itertools import permutations as iter_perms

    if S.n > 6:
        raise ValueError("brute force limited to n <= 6")
    group = PermGroup(S.n, [])
    for images in iter_perms(range(S.n)):
        p = Permutation(images)
        if stab_is_automorphism(S, p) and p not in group:
            group.add_generator(p)
    return group


@dataclass(frozen=True)
class SymplecticMatrix:
    """2k x 2k matrix preserving the (0 I / I 0) symplectic form."""

    m: BitMatrix

    def __post_init__(self):
        if not is_symplectic(self.m):
            raise ValueError("matrix does not preserve the symplectic form")

    @property
    def dim(self) -> int:
        return self.m.rows


def symplectic_form(k: int) -> BitMatrix:
    rows = [1 << (k + i) for i in range(k)] + [1 << i for i in range(k)]
    return BitMatrix(rows, 2 * k)


def is_symplectic(M: BitMatrix) -> bool:
    if M.rows != M.cols or M.rows % 2:
        return False
    J = symplectic_form(M.rows // 2)
    return M.transpose() @ J @ M == J


def stab_symplectic_rep(S: StabilizerCode, p: Permutation) -> SymplecticMatrix:
    """Action of an automorphism on the logical operators mod the stabilizer.

    Row i of the result expresses the permuted i-th logical operator
    (X-logicals first, then Z-logicals) over the logical basis, after
    discarding its stabilizer component.  The map p -> rep(p).m satisfies
    rep(compose(p, q)).m == rep(p).m @ rep(q).m.
    """
    if not stab_is_automorphism(S, p):
        raise ValueError("permutation is not an automorphism of the stabilizer code")
    n, k = S.n, S.k
    logicals = list(S.logical_x) + list(S.logical_z)
    basis_rows = [s.image() for s in S.stabilizer_gens] + [
        l.image() for l in logicals
    ]
    A_t = BitMatrix(basis_rows, 2 * n).transpose()
    rows = []
    for l in logicals:
        img = l.permuted(p).image()
        coeffs = solve(A_t, BitVector(2 * n, img))
        if coeffs is None:
            raise ArithmeticError(
                "permuted logical operator left the stabilizer+logical span"
            )
        rows.append(coeffs.bits >> (n - k))  # drop stabilizer coefficients
    return SymplecticMatrix(BitMatrix(rows, 2 * k))


# ---------------------------------------------------------------------------
# Abstract structure checks used by the [[8,3,3]] example


def regular_translation_subgroup(G: PermGroup) -> list[Permutation] | None:
    """Elements of order <= 2 acting freely, if they form a regular subgroup.

    For a sharply 2-transitive group of degree 8 this is the elementary
    abelian normal subgroup; its presence with a cyclic point stabilizer
    certifies the affine-line structure.
    """
    n = G.degree
    elems = G.elements() if G.order() <= 10**5 else None
    if elems is None:
        return None
    trans = [
        e for e in elems
        if e.is_identity()
        or (all(e.images[i] != i for i in range(n)) and (e * e).is_identity())
    ]
    if len(trans) != n:
        return None
    seen = {t.images[0] for t in trans}
    if len(seen) != n:
        return None
    return trans


def gf8_labeling(G: PermGroup) -> dict[int, int] | None:
    """Best-effort labeling of 8 points by GF(8) so that G contains the
    translations x -> x + c.

    Returns point -> field element (3-bit mask), or None when the group has
    no regular elementary-abelian translation subgroup.
    """
    if G.degree != 8:
        return None
    trans = regular_translation_subgroup(G)
    if trans is None:
        return None
    nontrivial = [t for t in trans if not t.is_identity()]
    basis = []
    span: dict[int, Permutation] = {0: Permutation.identity(8)}
    for t in nontrivial:
        if t.images[0] in {g.images[0] for g in span.values()}:
            continue
        basis.append(t)
        for mask, g in list(span.items()):
            span[mask | (1 << (len(basis) - 1))] = g * t
        if len(basis) == 3:
            break
    if len(basis) != 3:
        return None
    return {g.images[0]: mask for mask, g in span.items()}
