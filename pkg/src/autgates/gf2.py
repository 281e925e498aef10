"""Dense bit-packed linear algebra and polynomial arithmetic over GF(2).

Vectors and matrix rows are Python ints used as bitmasks (bit i = entry i),
so XOR is vector addition and ``(x & y).bit_count() & 1`` is a dot product.
All values are immutable; every operation returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _check_mask(bits: int, length: int) -> int:
    if bits < 0:
        raise ValueError("bit mask must be nonnegative")
    if bits >> length:
        raise ValueError(f"bits set beyond length {length}")
    return bits


@dataclass(frozen=True)
class BitVector:
    """Vector over GF(2) with a fixed length, packed into one int."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        _check_mask(self.bits, self.length)

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> "BitVector":
        return cls(length, 1 << i)

    @classmethod
    def from_ints(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for i, e in enumerate(entries):
            if e & 1:
                bits |= 1 << i
        return cls(len(entries), bits)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        if not set(s) <= {"0", "1"}:
            raise ValueError(f"not a 01-string: {s!r}")
        return cls(len(s), int(s[::-1], 2) if s else 0)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def __str__(self) -> str:
        return self.to_string()


class BitMatrix:
    """Immutable GF(2) matrix; rows are int bitmasks (bit j = column j)."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: Iterable[int], cols: int):
        object.__setattr__(self, "_rows", tuple(_check_mask(r, cols) for r in rows))
        object.__setattr__(self, "rows", len(self._rows))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, *a):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls((1 << i for i in range(n)), n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BitMatrix":
        return cls((0 for _ in range(rows)), cols)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        if not entries:
            return cls((), 0)
        cols = len(entries[0])
        masks = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            masks.append(sum((e & 1) << j for j, e in enumerate(row)))
        return cls(masks, cols)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        vecs = [BitVector.from_string(s) for s in lines]
        if vecs and any(v.length != vecs[0].length for v in vecs):
            raise ValueError("ragged rows")
        return cls((v.bits for v in vecs), vecs[0].length if vecs else 0)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self._rows[i])

    def row_masks(self) -> tuple[int, ...]:
        return self._rows

    def entry(self, i: int, j: int) -> int:
        return (self._rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        out = []
        for j in range(self.cols):
            m = 0
            for i, r in enumerate(self._rows):
                m |= ((r >> j) & 1) << i
            out.append(m)
        return BitMatrix(out, self.rows)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return BitMatrix(self._rows + other._rows, self.cols)

    def mul_vec(self, v: BitVector) -> BitVector:
        """Matrix times column vector."""
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self._rows):
            bits |= ((r & v.bits).bit_count() & 1) << i
        return BitVector(self.rows, bits)

    def vec_mul(self, v: BitVector) -> BitVector:
        """Row vector times matrix: XOR of the rows selected by v."""
        if v.length != self.rows:
            raise ValueError("dimension mismatch")
        acc = 0
        m = v.bits
        while m:
            i = (m & -m).bit_length() - 1
            acc ^= self._rows[i]
            m &= m - 1
        return BitVector(self.cols, acc)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        orows = other._rows
        for r in self._rows:
            acc = 0
            m = r
            while m:
                i = (m & -m).bit_length() - 1
                acc ^= orows[i]
                m &= m - 1
            out.append(acc)
        return BitMatrix(out, other.cols)

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return BitMatrix((a ^ b for a, b in zip(self._rows, other._rows)), self.cols)

    __add__ = __xor__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.cols, self._rows))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            r == 1 << i for i, r in enumerate(self._rows)
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "BitMatrix":
        out = []
        for i in row_idx:
            r = self._rows[i]
            m = 0
            for jj, j in enumerate(col_idx):
                m |= ((r >> j) & 1) << jj
            out.append(m)
        return BitMatrix(out, len(col_idx))

    def to_strings(self) -> list[str]:
        return [self.row(i).to_string() for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def rref(M: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row-echelon form.

    Returns (R, rank, pivots) with row-space(R) = row-space(M); zero rows
    are dropped from R.
    """
    work = list(M.row_masks())
    pivots: list[int] = []
    pr = 0
    for col in range(M.cols):
        sel = None
        for r in range(pr, len(work)):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            continue
        work[pr], work[sel] = work[sel], work[pr]
        for r in range(len(work)):
            if r != pr and (work[r] >> col) & 1:
                work[r] ^= work[pr]
        pivots.append(col)
        pr += 1
    return BitMatrix(work[:pr], M.cols), pr, pivots


def rank(M: BitMatrix) -> int:
    return rref(M)[1]


def solve(A: BitMatrix, b: BitVector) -> BitVector | None:
    """Solve A x = b; returns one solution or None if inconsistent."""
    if b.length != A.rows:
        raise ValueError("dimension mismatch")
    n = A.cols
    # Augment each row with the corresponding bit of b at position n.
    work = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(A.row_masks())]
    pivots: list[int] = []
    pr = 0
    for col in range(n):
        sel = None
        for r in range(pr, len(work)):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            continue
        work[pr], work[sel] = work[sel], work[pr]
        for r in range(len(work)):
            if r != pr and (work[r] >> col) & 1:
                work[r] ^= work[pr]
        pivots.append(col)
        pr += 1
    for r in range(pr, len(work)):
        if work[r]:  # 0 = 1 row
            return None
    x = 0
    for i, col in enumerate(pivots):
        if (work[i] >> n) & 1:
            x |= 1 << col
    return BitVector(n, x)


def kernel_basis(M: BitMatrix) -> BitMatrix:
    """Basis of the right kernel {x : M x = 0}, one row per basis vector."""
    R, r, pivots = rref(M)
    n = M.cols
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    rows = []
    for f in free:
        x = 1 << f
        for i, col in enumerate(pivots):
            if R.entry(i, f):
                x |= 1 << col
        rows.append(x)
    return BitMatrix(rows, n)


def in_row_space(M: BitMatrix, v: BitVector) -> bool:
    R, _, pivots = rref(M)
    x = v.bits
    for i, col in enumerate(pivots):
        if (x >> col) & 1:
            x ^= R.row_masks()[i]
    return x == 0


def row_space_equal(A: BitMatrix, B: BitMatrix) -> bool:
    if A.cols != B.cols:
        return False
    return rref(A)[0] == rref(B)[0]


def inverse(M: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix; raises ValueError if singular."""
    if M.rows != M.cols:
        raise ValueError("not square")
    n = M.rows
    work = [r | (1 << (n + i)) for i, r in enumerate(M.row_masks())]
    pr = 0
    for col in range(n):
        sel = None
        for r in range(pr, n):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            raise ValueError("matrix is singular")
        work[pr], work[sel] = work[sel], work[pr]
        for r in range(n):
            if r != pr and (work[r] >> col) & 1:
                work[r] ^= work[pr]
        pr += 1
    mask = (1 << n) - 1
    return BitMatrix(((w >> n) & mask for w in work), n)


def is_invertible(M: BitMatrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


# ---------------------------------------------------------------------------
# Polynomials over GF(2), packed as ints with bit i = coefficient of X^i.


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2); coefficient of X^i is bit i of ``coeffs``."""

    coeffs: int

    def __post_init__(self):
        if self.coeffs < 0:
            raise ValueError("coefficients must pack to a nonnegative int")

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "Gf2Poly":
        c = 0
        for e in exps:
            c ^= 1 << e
        return cls(c)

    @classmethod
    def x_pow(cls, e: int) -> "Gf2Poly":
        return cls(1 << e)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return self.coeffs.bit_length() - 1

    def is_zero(self) -> bool:
        return self.coeffs == 0

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.coeffs ^ other.coeffs)

    __xor__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        a, b = self.coeffs, other.coeffs
        out = 0
        while a:
            if a & 1:
                out ^= b
            a >>= 1
            b <<= 1
        return Gf2Poly(out)

    def divmod(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        if other.coeffs == 0:
            raise ZeroDivisionError("polynomial division by zero")
        r = self.coeffs
        d = other.coeffs
        dd = other.degree
        q = 0
        while r.bit_length() - 1 >= dd and r:
            shift = r.bit_length() - 1 - dd
            q ^= 1 << shift
            r ^= d << shift
        return Gf2Poly(q), Gf2Poly(r)

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return self.divmod(other)[0]

    def __str__(self) -> str:
        if self.coeffs == 0:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            if (self.coeffs >> e) & 1:
                terms.append("1" if e == 0 else ("X" if e == 1 else f"X^{e}"))
        return " + ".join(terms)


GF2_ONE = Gf2Poly(1)
GF2_X = Gf2Poly(2)


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a


def poly_pow_mod(base: Gf2Poly, e: int, mod: Gf2Poly) -> Gf2Poly:
    result = GF2_ONE % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def poly_derivative(f: Gf2Poly) -> Gf2Poly:
    # Over GF(2) only odd-degree terms survive differentiation.
    out = 0
    c = f.coeffs >> 1
    i = 0
    while c:
        if c & 1 and i % 2 == 0:
            out |= 1 << i
        c >>= 1
        i += 1
    return Gf2Poly(out)


def _poly_sqrt(f: Gf2Poly) -> Gf2Poly:
    # Valid when f is a perfect square: all exponents even.
    out = 0
    c = f.coeffs
    i = 0
    while c:
        if c & 1:
            out |= 1 << (i // 2)
        c >>= 1
        i += 1
    return Gf2Poly(out)


def squarefree_radical(f: Gf2Poly) -> Gf2Poly:
    """Product of the distinct irreducible factors of f."""
    if f.degree <= 0:
        return f
    d = poly_derivative(f)
    if d.is_zero():
        # f is a perfect square in characteristic 2.
        return squarefree_radical(_poly_sqrt(f))
    w = f // poly_gcd(f, d)  # odd-multiplicity factors, each once
    c = f
    while True:
        h = poly_gcd(c, w)
        if h.degree == 0:
            break
        c = c // h
    # c is what remains after stripping all odd-multiplicity factors:
    # a perfect square carrying the even-multiplicity factors.
    if c.degree > 0:
        return w * squarefree_radical(_poly_sqrt(c))
    return w


def _equal_degree_split(f: Gf2Poly, d: int) -> list[Gf2Poly]:
    """Split a squarefree product of irreducibles, all of degree d.

    Uses trace-polynomial splitting with a deterministic sequence of probe
    polynomials; at the sizes used here (degrees < 64) this terminates.
    """
    if f.degree == d:
        return [f]
    probes = 1
    while True:
        probes += 1
        u = Gf2Poly(probes)
        # T(u) = u + u^2 + u^4 + ... + u^(2^(d-1)) mod f
        t = u % f
        acc = t
        for _ in range(d - 1):
            t = (t * t) % f
            acc = acc + t
        g = poly_gcd(f, acc)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)


def factor_squarefree(f: Gf2Poly) -> list[Gf2Poly]:
    """Irreducible factors of a squarefree polynomial, sorted by (degree, coeffs)."""
    factors: list[Gf2Poly] = []
    rest = f
    d = 0
    h = GF2_X % rest if rest.degree > 0 else GF2_X
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            factors.append(rest)
            break
        h = (h * h) % rest  # h = X^(2^d) mod rest
        g = poly_gcd(rest, h + GF2_X)
        if g.degree > 0:
            factors.extend(_equal_degree_split(g, d))
            rest = rest // g
            h = h % rest
    return sorted(factors, key=lambda p: (p.degree, p.coeffs))


def distinct_irreducible_factors(f: Gf2Poly) -> list[Gf2Poly]:
    if f.degree <= 0:
        return []
    return factor_squarefree(squarefree_radical(f))


def is_irreducible(f: Gf2Poly) -> bool:
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    # X^(2^n) = X mod f, and no smaller power collapses at maximal subfields.
    h = poly_pow_mod(GF2_X, 2**n, f)
    if h != GF2_X % f:
        return False
    for p in {q for q in _prime_factors(n)}:
        h = poly_pow_mod(GF2_X, 2 ** (n // p), f)
        if poly_gcd(f, h + GF2_X).degree != 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def factor_cyclic(n: int) -> list[Gf2Poly]:
    """Irreducible factorization of X^n - 1 over GF(2) for odd n.

    The factors are pairwise distinct (X^n - 1 is squarefree for odd n) and
    their degrees are the cyclotomic coset sizes mod n.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be an odd positive integer")
    f = Gf2Poly((1 << n) | 1)
    return factor_squarefree(f)


def cyclotomic_cosets(n: int) -> list[list[int]]:
    """Cyclotomic cosets of 2 mod n, each sorted, ordered by smallest element."""
    seen = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        x = s
        while x not in seen:
            seen.add(x)
            coset.append(x)
            x = (2 * x) % n
        cosets.append(sorted(coset))
    return cosets
