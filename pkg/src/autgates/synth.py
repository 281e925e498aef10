"""Compiling logical linear maps into qubit permutations and transversal CNOTs.

An instruction word is applied left to right; logical matrices act on
column labels from the left, so the cached effect of a word is the product
of the per-instruction matrices in reverse list order:

    logical_effect([i1, i2, i3]) = M(i3) @ M(i2) @ M(i1)

The compilation follows the constructive route: factor the target into
elementary transvections, realize cross-block transvections as sums of
conjugated transversal CNOTs (each summand a permutation-CNOT-permutation
triple), and realize within-block transvections as commutators of one
upper and one lower cross-block word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codes import CssCode, coset_label, coset_state
from .errors import CapacityError, InfeasibleError, UnsupportedStructureError
from .gf2 import BitMatrix, BitVector, is_invertible
from .logical import (
    FIRST_CONTROLS,
    SECOND_CONTROLS,
    LogicalMatrix,
    induced_action,
    transversal_cnot,
)
from .matgroups import algebra_span
from .perms import PermGroup, Permutation, apply_perm_mask, compose

PERM_BLOCK1 = "perm_block1"
PERM_BLOCK2 = "perm_block2"
CNOT_1TO2 = "cnot_1to2"  # controls in block 1: (I 0 / I I)
CNOT_2TO1 = "cnot_2to1"  # controls in block 2: (I I / 0 I)

KINDS = (PERM_BLOCK1, PERM_BLOCK2, CNOT_1TO2, CNOT_2TO1)


@dataclass(frozen=True)
class Instruction:
    kind: str
    perm: Permutation | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown instruction kind {self.kind!r}")
        if (self.perm is None) == self.kind.startswith("perm"):
            raise ValueError("permutation present iff the kind is a permutation")

    def inverse(self) -> "Instruction":
        if self.perm is not None:
            return Instruction(self.kind, self.perm.inverse())
        return self  # transversal CNOTs are involutions over GF(2)


@dataclass(frozen=True)
class Transvection:
    """The elementary matrix I + E[row, col] of the given size."""

    row: int
    col: int
    size: int

    def __post_init__(self):
        if self.row == self.col:
            raise ValueError("transvection indices must differ")
        if not (0 <= self.row < self.size and 0 <= self.col < self.size):
            raise ValueError("indices out of range")

    def matrix(self) -> BitMatrix:
        rows = [1 << i for i in range(self.size)]
        rows[self.row] |= 1 << self.col
        return BitMatrix(rows, self.size)


def transvection_factorization(M: BitMatrix | LogicalMatrix) -> list[Transvection]:
    """Factor an invertible matrix as a product of elementary transvections.

    The returned list satisfies M == T[0] @ T[1] @ ... @ T[-1]; its length
    is at most size^2.
    """
    if isinstance(M, LogicalMatrix):
        M = M.m
    d = M.rows
    if not is_invertible(M):
        raise ValueError("matrix is singular")
    work = list(M.row_masks())
    ops: list[Transvection] = []

    def add_row(i: int, j: int):
        # row_i += row_j, i.e. left-multiply by (I + E[i, j])
        work[i] ^= work[j]
        ops.append(Transvection(i, j, d))

    for col in range(d):
        if not (work[col] >> col) & 1:
            src = next(
                r for r in range(col + 1, d) if (work[r] >> col) & 1
            )
            add_row(col, src)
        for r in range(d):
            if r != col and (work[r] >> col) & 1:
                add_row(r, col)
    # ops reduce M to I in application order, so M is their product as listed
    return ops


class InstructionWord:
    """A schedule of physical instructions with its cached logical effect."""

    __slots__ = ("instructions", "logical_effect")

    def __init__(self, instructions: Sequence[Instruction], logical_effect: LogicalMatrix):
        self.instructions = tuple(instructions)
        self.logical_effect = logical_effect

    def __len__(self) -> int:
        return len(self.instructions)

    def concat(self, other: "InstructionWord") -> "InstructionWord":
        return InstructionWord(
            self.instructions + other.instructions,
            LogicalMatrix(
                self.logical_effect.dim,
                other.logical_effect.m @ self.logical_effect.m,
            ),
        )

    def cost(self, n: int) -> dict:
        cnots = sum(1 for i in self.instructions if i.perm is None)
        perms = len(self.instructions) - cnots
        return {
            "cnot_rounds": cnots,
            "two_qubit_gates": cnots * n,
            "permutations": perms,
        }


class AutData:
    """Automorphism data needed by the synthesizer.

    Holds a spanning subset of the logical image group: group elements
    (with realizing permutations) whose matrices span the full algebra
    generated by the image, found by breadth-first closure.  Any algebra
    element is then a GF(2) sum over this subset.
    """

    def __init__(self, css: CssCode, aut: PermGroup, visit_cap: int = 100_000):
        self.css = css
        self.k = css.k
        self._t1_cache: dict[tuple[int, ...], BitMatrix] = {}
        self._transvection_words: dict[tuple[int, int], InstructionWord] = {}
        gens = []
        for p in aut.generators:
            gens.append((self.t1_of(p), p))
        self.algebra_dim = algebra_span([g for g, _ in gens]).dimension if gens else 0
        ident = (BitMatrix.identity(css.k), Permutation.identity(css.n))
        spanning: list[tuple[BitMatrix, Permutation]] = []
        pivots: dict[int, tuple[int, int]] = {}

        def try_span(M: BitMatrix, p: Permutation) -> None:
            v = _vec(M)
            c = 1 << len(spanning)
            while v:
                hp = v.bit_length() - 1
                if hp not in pivots:
                    pivots[hp] = (v, c)
                    spanning.append((M, p))
                    return
                pv, pc = pivots[hp]
                v ^= pv
                c ^= pc
            return

        try_span(*ident)
        visited = {ident[0]}
        frontier = [ident]
        while frontier and len(spanning) < max(self.algebra_dim, 1):
            new_frontier = []
            for M, p in frontier:
                for gM, gp in gens:
                    M2 = gM @ M
                    if M2 in visited:
                        continue
                    if len(visited) >= visit_cap:
                        raise CapacityError(
                            "logical image enumeration exceeded the cap"
                        )
                    visited.add(M2)
                    p2 = compose(p, gp)
                    try_span(M2, p2)
                    new_frontier.append((M2, p2))
                if len(spanning) >= self.algebra_dim:
                    break
            frontier = new_frontier
        self.spanning = spanning
        self._pivots = pivots

    def t1_of(self, p: Permutation) -> BitMatrix:
        t1 = self._t1_cache.get(p.images)
        if t1 is None:
            t1 = induced_action(self.css, p).t1
            self._t1_cache[p.images] = t1
        return t1

    def express(self, A: BitMatrix) -> list[tuple[BitMatrix, Permutation]] | None:
        """A as a GF(2) sum of spanning group elements, or None."""
        v = _vec(A)
        coeff = 0
        while v:
            hp = v.bit_length() - 1
            if hp not in self._pivots:
                return None
            pv, pc = self._pivots[hp]
            v ^= pv
            coeff ^= pc
        out = []
        while coeff:
            i = (coeff & -coeff).bit_length() - 1
            out.append(self.spanning[i])
            coeff &= coeff - 1
        return out


def _vec(M: BitMatrix) -> int:
    out = 0
    for i, row in enumerate(M.row_masks()):
        out |= row << (i * M.cols)
    return out


UPPER = "upper"
LOWER = "lower"


def _instruction_matrix(kind: str, t1: BitMatrix | None, k: int) -> BitMatrix:
    from .matgroups import block_diag

    eye = BitMatrix.identity(k)
    if kind == PERM_BLOCK1:
        return block_diag(t1, eye)
    if kind == PERM_BLOCK2:
        return block_diag(eye, t1)
    if kind == CNOT_1TO2:
        return transversal_cnot(k, FIRST_CONTROLS).m
    return transversal_cnot(k, SECOND_CONTROLS).m


def realize_offdiag(css: CssCode, autdata: AutData, A: BitMatrix,
                    side: str) -> InstructionWord:
    """Word with logical effect (I A / 0 I) for side="upper", or
    (I 0 / A I) for side="lower".

    A must be a GF(2) sum of logical image elements (equivalently, a member
    of the algebra they span); each summand T becomes a conjugated
    transversal CNOT: applying perm(pi^-1), the CNOT, then perm(pi) has
    effect diag(t1, I) @ CNOT @ diag(t1, I)^{-1}.
    """
    k = autdata.k
    if A.rows != k or A.cols != k:
        raise ValueError("block has the wrong shape")
    if side not in (UPPER, LOWER):
        raise ValueError("side must be 'upper' or 'lower'")
    summands = autdata.express(A)
    if summands is None:
        raise InfeasibleError(
            "block is not a GF(2) combination of logical image elements "
            "(not in the spanned algebra)"
        )
    instrs: list[Instruction] = []
    for _, p in summands:
        cnot = Instruction(CNOT_2TO1 if side == UPPER else CNOT_1TO2)
        if p.is_identity():
            instrs.append(cnot)
            continue
        block = PERM_BLOCK1 if side == UPPER else PERM_BLOCK2
        instrs.extend(
            [Instruction(block, p.inverse()), cnot, Instruction(block, p)]
        )
    eye = BitMatrix.identity(k)
    if side == UPPER:
        rows = [r | (m << k) for r, m in zip(eye.row_masks(), A.row_masks())]
        rows += [r << k for r in eye.row_masks()]
    else:
        rows = list(eye.row_masks())
        rows += [m | (r << k) for r, m in zip(eye.row_masks(), A.row_masks())]
    effect = LogicalMatrix(2 * k, BitMatrix(rows, 2 * k))
    word = InstructionWord(instrs, effect)
    assert _recompute_effect(autdata, word.instructions) == effect.m
    return word


def _recompute_effect(autdata: AutData, instructions) -> BitMatrix:
    k = autdata.k
    out = BitMatrix.identity(2 * k)
    for ins in instructions:
        t1 = autdata.t1_of(ins.perm) if ins.perm is not None else None
        out = _instruction_matrix(ins.kind, t1, k) @ out
    return out


def lift_diagonal_transvection(css: CssCode, autdata: AutData,
                               t: Transvection) -> InstructionWord:
    """Word for a transvection inside one diagonal block, via the commutator
    M2^{-1} M1 M2 M1^{-1} of an upper and a lower cross-block word."""
    k = autdata.k
    if t.size != 2 * k:
        raise ValueError("transvection size does not match the logical space")
    in_b1 = t.row < k and t.col < k
    in_b2 = t.row >= k and t.col >= k
    if not (in_b1 or in_b2):
        raise ValueError("transvection crosses the blocks; use realize_offdiag")
    r = t.row % k
    c = t.col % k
    j = c
    E_rj = _unit_matrix(k, r, j)
    E_jc = _unit_matrix(k, j, c)
    if in_b1:
        m1 = realize_offdiag(css, autdata, E_rj, UPPER)
        m2 = realize_offdiag(css, autdata, E_jc, LOWER)
    else:
        m1 = realize_offdiag(css, autdata, E_rj, LOWER)
        m2 = realize_offdiag(css, autdata, E_jc, UPPER)
    m1_inv = _invert_word(m1)
    m2_inv = _invert_word(m2)
    # product M2^{-1} @ M1 @ M2 @ M1^{-1}: rightmost factor applied first
    word = m1_inv.concat(m2).concat(m1).concat(m2_inv)
    expected = t.matrix()
    assert word.logical_effect.m == expected, "commutator identity failed"
    return InstructionWord(word.instructions, LogicalMatrix(2 * k, expected))


def _unit_matrix(k: int, r: int, c: int) -> BitMatrix:
    rows = [0] * k
    rows[r] = 1 << c
    return BitMatrix(rows, k)


def _invert_word(w: InstructionWord) -> InstructionWord:
    instrs = [ins.inverse() for ins in reversed(w.instructions)]
    from .gf2 import inverse as mat_inverse

    return InstructionWord(
        instrs, LogicalMatrix(w.logical_effect.dim, mat_inverse(w.logical_effect.m))
    )


def _peephole(instructions: list[Instruction]) -> list[Instruction]:
    """Cancel adjacent inverse pairs (and merge adjacent same-block perms
    that compose to the identity)."""
    out: list[Instruction] = []
    for ins in instructions:
        if out:
            prev = out[-1]
            if prev.kind == ins.kind:
                if ins.perm is None:
                    out.pop()  # double transversal CNOT
                    continue
                if compose(prev.perm, ins.perm).is_identity():
                    out.pop()
                    continue
        out.append(ins)
    return out


def synthesize(css: CssCode, autdata: AutData,
               target: LogicalMatrix) -> InstructionWord:
    """Compile a target logical matrix into a schedule of instructions.

    Requires the logical image to span the full matrix algebra (otherwise
    the reachable group is a proper subgroup and this compiler does not
    apply; the invariant-block analysis describes what is reachable).
    """
    k = autdata.k
    if target.dim != 2 * k:
        raise ValueError("target dimension must be 2k")
    if autdata.algebra_dim != k * k:
        raise UnsupportedStructureError(
            f"logical image spans a {autdata.algebra_dim}-dimensional algebra, "
            f"not the full {k * k}-dimensional one; the reachable group is a "
            "proper subgroup (see the invariant-block analysis)"
        )
    if target.m.is_identity():
        return InstructionWord((), LogicalMatrix(2 * k, BitMatrix.identity(2 * k)))
    for kind in (CNOT_1TO2, CNOT_2TO1):
        if target.m == _instruction_matrix(kind, None, k):
            return InstructionWord((Instruction(kind),), target)
    factors = transvection_factorization(target.m)
    cache = autdata._transvection_words
    word = InstructionWord((), LogicalMatrix(2 * k, BitMatrix.identity(2 * k)))
    for t in reversed(factors):  # rightmost factor is applied first
        tw = cache.get((t.row, t.col))
        if tw is None:
            if (t.row < k) == (t.col < k):
                tw = lift_diagonal_transvection(css, autdata, t)
            elif t.row < k:
                tw = realize_offdiag(
                    css, autdata, _unit_matrix(k, t.row, t.col - k), UPPER
                )
            else:
                tw = realize_offdiag(
                    css, autdata, _unit_matrix(k, t.row - k, t.col), LOWER
                )
            cache[(t.row, t.col)] = tw
        word = word.concat(tw)
    assert word.logical_effect.m == target.m, "factor reassembly drifted"
    instrs = _peephole(list(word.instructions))
    return InstructionWord(instrs, LogicalMatrix(2 * k, target.m))


def verify_word(css: CssCode, word: InstructionWord,
                rng=None, samples: int = 4) -> LogicalMatrix:
    """Recompute the logical effect of a word from scratch.

    Ignores the cached effect: every permutation is re-checked to be a
    joint automorphism and its label action recomputed.  For short codes
    (n <= 15) a random sample of coset-state simulations additionally
    validates each instruction kind present in the word.
    """
    k = css.k
    t1_cache: dict[tuple[int, ...], BitMatrix] = {}
    out = BitMatrix.identity(2 * k)
    for ins in word.instructions:
        t1 = None
        if ins.perm is not None:
            key = ins.perm.images
            t1 = t1_cache.get(key)
            if t1 is None:
                t1 = induced_action(css, ins.perm).t1  # raises if illegal
                t1_cache[key] = t1
        out = _instruction_matrix(ins.kind, t1, k) @ out
    if css.n <= 15 and css.c2.k <= 16 and word.instructions:
        import random as _random

        rng = rng or _random.Random(7)
        for _ in range(samples):
            ins = rng.choice(word.instructions)
            _simulate_instruction(css, ins, rng)
    return LogicalMatrix(2 * k, out)


def _simulate_instruction(css: CssCode, ins: Instruction, rng) -> None:
    """Coset-level check of one instruction on a random two-block state."""
    k = css.k
    b1 = BitVector(k, rng.getrandbits(k))
    b2 = BitVector(k, rng.getrandbits(k))
    v1 = coset_state(css, b1).representative.bits
    v2 = coset_state(css, b2).representative.bits
    if ins.kind == PERM_BLOCK1:
        v1 = apply_perm_mask(v1, ins.perm)
        t1 = induced_action(css, ins.perm).t1
        b1 = t1.mul_vec(b1)
    elif ins.kind == PERM_BLOCK2:
        v2 = apply_perm_mask(v2, ins.perm)
        t1 = induced_action(css, ins.perm).t1
        b2 = t1.mul_vec(b2)
    elif ins.kind == CNOT_1TO2:
        v2 ^= v1
        b2 = b1 + b2
    else:
        v1 ^= v2
        b1 = b1 + b2
    assert coset_label(css, BitVector(css.n, v1)) == b1
    assert coset_label(css, BitVector(css.n, v2)) == b2


# ---------------------------------------------------------------------------
# Small-field identity checks


class SmallField:
    """Arithmetic tables for F_q, q in {2, 3, 4}."""

    def __init__(self, q: int):
        if q not in (2, 3, 4):
            raise ValueError("q must be 2, 3 or 4")
        self.q = q

    def add(self, a: int, b: int) -> int:
        if self.q == 4:
            return a ^ b
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        if self.q == 4:
            return a
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        if self.q != 4:
            return (a * b) % self.q
        # GF(4) as F_2[x]/(x^2+x+1) with elements 0, 1, x=2, x+1=3
        out = 0
        aa = a
        for bit in (1, 2):
            if b & bit:
                out ^= aa if bit == 1 else self._times_x(aa)
        return out

    @staticmethod
    def _times_x(a: int) -> int:
        # multiply by x modulo x^2 + x + 1
        hi = a >> 1
        return ((a << 1) & 3) ^ (hi * 3)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise AssertionError

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def units(self) -> list[int]:
        return list(range(1, self.q))


def _fq_matmul(F: SmallField, A, B):
    n = len(A)
    return tuple(
        tuple(
            _fq_dot(F, A[i], [B[l][j] for l in range(n)]) for j in range(n)
        )
        for i in range(n)
    )


def _fq_dot(F: SmallField, row, col) -> int:
    s = 0
    for a, b in zip(row, col):
        s = F.add(s, F.mul(a, b))
    return s


def _fq_eye(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))



def check_identities(q: int) -> bool:
    """Evaluate the commutator and diagonal-factorization identities over F_q.

    Checks, for all valid index patterns and nonzero scalars:
      * the commutator M2^{-1} M1 M2 M1^{-1} of an upper and a lower
        cross-block elementary matrix equals the one-block transvection
        I + alpha*beta E[i, k] (block sizes 2..4);
      * the six-factor factorization of diag(t, 1/t, 1, 1);
      * the four-factor factorization of diag(t, 1, 1/t, 1).
    """
    F = SmallField(q)
    ok = True
    for n in (2, 3, 4):
        for i in range(n):
            for j in range(n):
                for kk in range(n):
                    if i == kk:
                        continue
                    for alpha in F.units():
                        for beta in F.units():
                            ok &= _check_commutator(F, n, i, j, kk, alpha, beta)
    for t in F.units():
        ok &= _check_diag_one_block(F, t)
        ok &= _check_diag_two_blocks(F, t)
    return ok


def _block2n(F: SmallField, n: int, upper: dict | None, lower: dict | None):
    m = [[1 if i == j else 0 for j in range(2 * n)] for i in range(2 * n)]
    if upper:
        for (i, j), v in upper.items():
            m[i][n + j] = v
    if lower:
        for (i, j), v in lower.items():
            m[n + i][j] = v
    return tuple(tuple(r) for r in m)


def _check_commutator(F, n, i, j, kk, alpha, beta) -> bool:
    M1 = _block2n(F, n, {(i, j): alpha}, None)
    M1_inv = _block2n(F, n, {(i, j): F.neg(alpha)}, None)
    M2 = _block2n(F, n, None, {(j, kk): beta})
    M2_inv = _block2n(F, n, None, {(j, kk): F.neg(beta)})
    prod = _fq_matmul(F, _fq_matmul(F, M2_inv, M1), _fq_matmul(F, M2, M1_inv))
    expect = [[1 if a == b else 0 for b in range(2 * n)] for a in range(2 * n)]
    expect[i][kk] = F.add(expect[i][kk], F.mul(alpha, beta))
    return prod == tuple(tuple(r) for r in expect)


def _check_diag_one_block(F: SmallField, t: int) -> bool:
    """diag(t, 1/t, 1, 1) as a six-factor product of block-elementary
    matrices (2+2 block split).

    The factors compose right to left (last listed applied first); in the
    left-to-right order the same factors give diag(1/t, t, 1, 1), which is
    indistinguishable over F_2 and F_3 where every unit is its own inverse.
    """
    inv_t = F.inv(t)
    tm1 = F.add(t, F.neg(1))  # t - 1
    one_mt = F.neg(tm1)  # 1 - t
    m_a = _block2n(F, 2, None, {(1, 1): F.mul(tm1, inv_t)})
    m_b = _block2n(F, 2, {(0, 1): 1, (1, 1): F.neg(1)}, None)
    m_c = _block2n(F, 2, None, {(1, 0): F.mul(one_mt, inv_t)})
    m_d = _block2n(F, 2, {(0, 1): F.neg(t)}, None)
    m_e = _block2n(
        F, 2, None,
        {(1, 0): F.mul(F.mul(tm1, inv_t), inv_t), (1, 1): F.mul(one_mt, inv_t)},
    )
    m_f = _block2n(F, 2, {(1, 1): 1}, None)
    prod = _fq_eye(4)
    for m in (m_f, m_e, m_d, m_c, m_b, m_a):
        prod = _fq_matmul(F, prod, m)
    expect = tuple(
        tuple(
            {0: t, 1: inv_t, 2: 1, 3: 1}[a] if a == b else 0 for b in range(4)
        )
        for a in range(4)
    )
    return prod == expect


def _check_diag_two_blocks(F: SmallField, t: int) -> bool:
    """diag(t, 1, 1/t, 1) as a four-factor product."""
    inv_t = F.inv(t)
    tm1 = F.add(t, F.neg(1))
    m_a = _block2n(F, 2, {(0, 0): tm1}, None)
    m_b = _block2n(F, 2, None, {(0, 0): 1})
    m_c = _block2n(F, 2, {(0, 0): F.mul(F.neg(tm1), inv_t)}, None)
    m_d = _block2n(F, 2, None, {(0, 0): F.neg(t)})
    prod = _fq_eye(4)
    for m in (m_a, m_b, m_c, m_d):
        prod = _fq_matmul(F, prod, m)
    expect = tuple(
        tuple(
            {0: t, 1: 1, 2: inv_t, 3: 1}[a] if a == b else 0 for b in range(4)
        )
        for a in range(4)
    )
    return prod == expect
