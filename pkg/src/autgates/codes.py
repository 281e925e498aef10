"""Binary linear codes, standard families, and the CSS construction.

Codewords are linear combinations of generator rows; a codeword is stored
as an int bitmask with bit i = coordinate i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Sequence

from .errors import CapacityError
from .gf2 import (
    BitMatrix,
    BitVector,
    Gf2Poly,
    in_row_space,
    kernel_basis,
    rank,
    rref,
    solve,
)

ENUM_DIM_LIMIT = 24


class LinearCode:
    """An [n, k] binary linear code given by a full-rank generator matrix."""

    __slots__ = ("n", "k", "generator", "_rref", "_pivots")

    def __init__(self, generator: BitMatrix):
        R, r, pivots = rref(generator)
        if r != generator.rows:
            raise ValueError("generator matrix must have full row rank")
        self.n = generator.cols
        self.k = generator.rows
        self.generator = generator
        self._rref = R
        self._pivots = pivots

    def __contains__(self, v) -> bool:
        if isinstance(v, BitVector):
            if v.length != self.n:
                return False
            v = v.bits
        x = v
        for i, col in enumerate(self._pivots):
            if (x >> col) & 1:
                x ^= self._rref.row_masks()[i]
        return x == 0

    def contains_code(self, other: "LinearCode") -> bool:
        return other.n == self.n and all(
            m in self for m in other.generator.row_masks()
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.n == other.n
            and self._rref == other._rref
        )

    def __hash__(self) -> int:
        return hash((self.n, self._rref))

    def codewords(self) -> Iterator[int]:
        """All 2^k codewords as bitmasks, in Gray-code order (0 first)."""
        if self.k > ENUM_DIM_LIMIT:
            raise CapacityError(f"2^{self.k} codewords exceed enumeration limit")
        rows = self.generator.row_masks()
        c = 0
        yield c
        for i in range(1, 1 << self.k):
            c ^= rows[(i & -i).bit_length() - 1]
            yield c

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}]"


def dual(C: LinearCode) -> LinearCode:
    """The [n, n-k] code orthogonal to C."""
    K = kernel_basis(C.generator)
    if K.rows == 0:
        # The zero code; keep a well-formed empty generator.
        return LinearCode(BitMatrix((), C.n))
    return LinearCode(K)


def weight_enumerator(C: LinearCode) -> list[int]:
    """Weight distribution A_0..A_n by full enumeration."""
    A = [0] * (C.n + 1)
    for c in C.codewords():
        A[c.bit_count()] += 1
    return A


def macwilliams_dual_enumerator(A: Sequence[int], n: int, k: int) -> list[int]:
    """Weight distribution of the dual code via the MacWilliams transform."""
    B = []
    for j in range(n + 1):
        s = 0
        for i, a in enumerate(A):
            if a == 0:
                continue
            kraw = sum(
                (-1) ** l * math.comb(i, l) * math.comb(n - i, j - l)
                for l in range(0, min(i, j) + 1)
            )
            s += a * kraw
        q, r = divmod(s, 1 << k)
        if r:
            raise ArithmeticError("MacWilliams transform gave a non-integer")
        B.append(q)
    return B


def minimum_distance(C: LinearCode) -> int:
    """Minimum Hamming weight of a nonzero codeword, by exact enumeration.

    Enumerates the smaller of C and its dual (using the MacWilliams
    transform in the dual case).
    """
    if C.k == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    if min(C.k, C.n - C.k) > ENUM_DIM_LIMIT:
        raise CapacityError("code too large for exact distance enumeration")
    if C.k <= C.n - C.k:
        best = C.n + 1
        for c in C.codewords():
            w = c.bit_count()
            if c and w < best:
                best = w
        return best
    B = weight_enumerator(dual(C))
    A = macwilliams_dual_enumerator(B, C.n, C.n - C.k)
    return next(i for i in range(1, C.n + 1) if A[i])


def words_of_weight(C: LinearCode, weights: set[int]) -> list[int]:
    """All codewords whose weight lies in the given set."""
    return [c for c in C.codewords() if c.bit_count() in weights]


@dataclass(frozen=True)
class CodeClassification:
    self_orthogonal: bool
    doubly_even: bool
    contains_all_one: bool


def classify(C: LinearCode) -> CodeClassification:
    rows = C.generator.row_masks()
    self_orth = all(
        (rows[i] & rows[j]).bit_count() % 2 == 0
        for i in range(len(rows))
        for j in range(i, len(rows))
    )
    doubly = self_orth and all(r.bit_count() % 4 == 0 for r in rows)
    all_one = BitVector(C.n, (1 << C.n) - 1) in C if C.n else False
    return CodeClassification(self_orth, doubly, all_one)


# ---------------------------------------------------------------------------
# Code families


def _hamming_check_matrix(m: int) -> BitMatrix:
    n = (1 << m) - 1
    return BitMatrix(
        (sum((((j + 1) >> i) & 1) << j for j in range(n)) for i in range(m)), n
    )


def hamming(m: int) -> LinearCode:
    """Hamming code [2^m - 1, 2^m - 1 - m, 3]; check column j is binary j+1."""
    if m < 2:
        raise ValueError("hamming requires m >= 2")
    return LinearCode(kernel_basis(_hamming_check_matrix(m)))


def simplex(m: int) -> LinearCode:
    """Simplex code [2^m - 1, m, 2^(m-1)], the dual of hamming(m)."""
    if m < 2:
        raise ValueError("simplex requires m >= 2")
    return LinearCode(_hamming_check_matrix(m))


def reed_muller(r: int, m: int) -> LinearCode:
    """Reed-Muller code RM(r, m): evaluations of degree-<=r Boolean monomials.

    Coordinate p is the point of F_2^m with binary expansion p; generator
    rows are ordered by monomial degree, then by variable subset.
    """
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    n = 1 << m
    rows = []
    for s in _monomials_by_degree(m, 0, r):
        rows.append(_monomial_evaluation(s, m))
    return LinearCode(BitMatrix(rows, n))


def _monomials_by_degree(m: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    from itertools import combinations

    out = []
    for d in range(lo, hi + 1):
        out.extend(combinations(range(m), d))
    return out


def _monomial_evaluation(variables: tuple[int, ...], m: int) -> int:
    n = 1 << m
    mask = 0
    for p in range(n):
        if all((p >> i) & 1 for i in variables):
            mask |= 1 << p
    return mask


@dataclass(frozen=True)
class CyclicCodeSpec:
    """A cyclic code of odd length n with generator polynomial g | X^n - 1."""

    n: int
    g: Gf2Poly

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise ValueError("cyclic length must be odd and positive")
        modulus = Gf2Poly((1 << self.n) | 1)
        if self.g.is_zero() or not (modulus % self.g).is_zero():
            raise ValueError("generator polynomial must divide X^n - 1")

    @property
    def k(self) -> int:
        return self.n - self.g.degree


def cyclic_code(spec: CyclicCodeSpec) -> LinearCode:
    """Code with generator rows g(X), X g(X), ..., X^(k-1) g(X)."""
    return LinearCode(
        BitMatrix((spec.g.coeffs << i for i in range(spec.k)), spec.n)
    )


def cyclic_dual_spec(spec: CyclicCodeSpec) -> CyclicCodeSpec:
    """Cyclic description of the dual code: the reciprocal of (X^n - 1)/g."""
    h = Gf2Poly((1 << spec.n) | 1) // spec.g
    d = h.degree
    rev = 0
    for i in range(d + 1):
        if (h.coeffs >> i) & 1:
            rev |= 1 << (d - i)
    return CyclicCodeSpec(spec.n, Gf2Poly(rev))


def generator_polynomial(C: LinearCode) -> Gf2Poly:
    """Generator polynomial of a cyclic code.

    Computed as gcd(X^n - 1, generator rows as polynomials); the degree is
    checked against n - k, which fails if C is not cyclic in this
    coordinate order.
    """
    from .gf2 import poly_gcd

    g = Gf2Poly((1 << C.n) | 1)
    for m in C.generator.row_masks():
        g = poly_gcd(g, Gf2Poly(m))
    if g.degree != C.n - C.k:
        raise ValueError("code is not cyclic in this coordinate order")
    return g


def cyclic_shift(n: int) -> "tuple[int, ...]":
    """Images of the coordinate permutation sending X^i g to X^(i+1) g.

    Multiplication by X maps coordinate j to j+1 mod n; in the apply_perm
    convention (result[i] = v[images[i]]) the images are i-1 mod n.
    """
    return tuple((i - 1) % n for i in range(n))


def _gf2m_mul(a: int, b: int, prim: int, m: int) -> int:
    out = 0
    while a:
        if a & 1:
            out ^= b
        a >>= 1
        b <<= 1
        if b >> m:
            b ^= prim
    return out


def _gf2m_minimal_polynomial(s: int, n: int, prim: int, m: int) -> Gf2Poly:
    """Minimal polynomial over GF(2) of alpha^s in GF(2^m), alpha a root of prim."""
    # alpha^j table
    powers = [1]
    for _ in range(n - 1):
        powers.append(_gf2m_mul(powers[-1], 2, prim, m))
    coset = []
    j = s % n
    while j not in coset:
        coset.append(j)
        j = (2 * j) % n
    # expand prod (X - alpha^j); coefficients live in GF(2^m), collapse to GF(2)
    poly = [1]
    for j in coset:
        root = powers[j]
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= _gf2m_mul(c, root, prim, m)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise ArithmeticError("minimal polynomial did not collapse to GF(2)")
    return Gf2Poly(sum(c << i for i, c in enumerate(poly)))


def bch_31_21() -> LinearCode:
    """Narrow-sense BCH code [31, 21, 5].

    Generator polynomial m_1(X) m_3(X) over GF(32) = F_2[t]/(t^5 + t^2 + 1).
    """
    prim = 0b100101  # t^5 + t^2 + 1
    m1 = _gf2m_minimal_polynomial(1, 31, prim, 5)
    m3 = _gf2m_minimal_polynomial(3, 31, prim, 5)
    return cyclic_code(CyclicCodeSpec(31, m1 * m3))


_PAPER_22_7_ROWS = [
    "1000100001100010101010",
    "0100100001101001010111",
    "0010100001010011011000",
    "0001000100100001101011",
    "0000010101011111100010",
    "0000001100100110101100",
    "0000000011111111111111",
]


def paper_22_7() -> LinearCode:
    """A self-orthogonal [22, 7, 8] code, given by an explicit generator."""
    return LinearCode(BitMatrix.from_strings(_PAPER_22_7_ROWS))


def construct_family(name: str, *args) -> LinearCode:
    """Build a named code family; see FAMILIES for the argument shapes."""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown code family {name!r}") from None
    return builder(*args)


FAMILIES = {
    "hamming": hamming,
    "simplex": simplex,
    "reed_muller": reed_muller,
    "cyclic": cyclic_code,
    "bch_31_21": bch_31_21,
    "paper_22_7": paper_22_7,
}


# ---------------------------------------------------------------------------
# CSS construction


class CssCode:
    """CSS code from nested codes C2 <= C1 with a fixed logical coset basis.

    ``logical_basis`` rows are coset representatives of C2 in C1;
    ``inner_basis`` rows span C2. Stacking logical rows over inner rows
    gives a basis of C1 (logical rows first).
    """

    __slots__ = ("c1", "c2", "logical_basis", "inner_basis", "_stacked")

    def __init__(self, c1: LinearCode, c2: LinearCode,
                 logical_basis: BitMatrix, inner_basis: BitMatrix):
        self.c1 = c1
        self.c2 = c2
        self.logical_basis = logical_basis
        self.inner_basis = inner_basis
        stacked = logical_basis.stack(inner_basis)
        if rank(stacked) != c1.k:
            raise ValueError("logical and inner rows do not form a basis of C1")
        for m in logical_basis.row_masks():
            if m not in c1:
                raise ValueError("logical basis row outside C1")
        for m in inner_basis.row_masks():
            if m not in c2:
                raise ValueError("inner basis row outside C2")
        self._stacked = stacked

    @property
    def n(self) -> int:
        return self.c1.n

    @property
    def k(self) -> int:
        return self.c1.k - self.c2.k

    @property
    def stacked_basis(self) -> BitMatrix:
        return self._stacked

    def __repr__(self) -> str:
        return f"CssCode[[{self.n},{self.k}]]"


def css_from_pair(c1: LinearCode, c2: LinearCode,
                  logical_basis: BitMatrix | None = None) -> CssCode:
    """CSS code from nested codes C2 <= C1.

    The default logical basis is deterministic: inner rows are rref(C2), and
    logical rows are taken from rref(C1) in ascending pivot order, keeping
    each row that is independent of C2 and the rows already chosen.  A
    custom ``logical_basis`` (k rows of C1, independent modulo C2) may be
    supplied instead; it is validated.
    """
    if c1.n != c2.n:
        raise ValueError("codes must have equal length")
    if not c1.contains_code(c2):
        raise ValueError("C2 is not contained in C1")
    inner = rref(c2.generator)[0] if c2.k else BitMatrix((), c1.n)
    k = c1.k - c2.k
    if logical_basis is None:
        picked: list[int] = []
        span = list(inner.row_masks())
        for row in rref(c1.generator)[0].row_masks():
            if _independent(span, row, c1.n):
                span.append(row)
                picked.append(row)
        assert len(picked) == k
        logical_basis = BitMatrix(picked, c1.n)
    else:
        if logical_basis.rows != k or logical_basis.cols != c1.n:
            raise ValueError("logical basis has the wrong shape")
        span = list(inner.row_masks())
        for row in logical_basis.row_masks():
            if not _independent(span, row, c1.n):
                raise ValueError("logical basis rows dependent modulo C2")
            span.append(row)
    return CssCode(c1, c2, logical_basis, inner)


def _independent(span: list[int], row: int, n: int) -> bool:
    return rank(BitMatrix(span + [row], n)) == len(span) + 1


@dataclass(frozen=True)
class CssParameters:
    n: int
    k: int
    d: int


def css_parameters(css: CssCode) -> CssParameters:
    """[[n, k, d]] with d the minimum weight over C1 minus C2.

    For k = 0 the distance is reported as 0 (no logical space).
    """
    if css.c1.k > ENUM_DIM_LIMIT:
        raise CapacityError("C1 too large for distance enumeration")
    if css.k == 0:
        return CssParameters(css.n, 0, 0)
    inner_words = list(css.c2.codewords())
    log_rows = css.logical_basis.row_masks()
    best = css.n + 1
    v = 0
    for i in range(1, 1 << css.k):
        v ^= log_rows[(i & -i).bit_length() - 1]
        w = min((v ^ c).bit_count() for c in inner_words)
        if w < best:
            best = w
    return CssParameters(css.n, css.k, best)


@dataclass(frozen=True)
class CosetState:
    """Combinatorial stand-in for a CSS basis state: the coset label and
    its representative vector."""

    beta: BitVector
    representative: BitVector


def coset_state(css: CssCode, beta: BitVector) -> CosetState:
    """Representative of the coset labelled by beta: sum of beta_i * b_i."""
    if beta.length != css.k:
        raise ValueError(f"label length {beta.length} != k = {css.k}")
    rep = css.logical_basis.vec_mul(beta) if css.k else BitVector(css.n, 0)
    return CosetState(beta, rep)


def coset_label(css: CssCode, v: BitVector) -> BitVector:
    """Label beta of the coset of C2 containing v (v must lie in C1)."""
    coeffs = solve(css.stacked_basis.transpose(), v)
    if coeffs is None:
        raise ValueError("vector outside C1")
    return BitVector(css.k, coeffs.bits & ((1 << css.k) - 1))
