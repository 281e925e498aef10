"""Induced logical action of code automorphisms on a CSS code.

Label convention (used package-wide): logical labels beta are column
vectors; matrices act from the left, so applying operation A and then B
takes beta to (B @ A) beta.  For a joint automorphism pi the label map is
beta -> t1(pi) beta, and pi -> t1(pi) is a homomorphism with respect to
right-to-left composition:

    t1(compose(p, q)) == t1(q) @ t1(p)      # compose(p, q): p first, then q
"""

from __future__ import annotations

from dataclasses import dataclass

from .autsearch import is_automorphism
from .codes import CssCode, classify, coset_state
from .errors import CapacityError
from .gf2 import BitMatrix, BitVector, is_invertible, solve
from .perms import Permutation, apply_perm, apply_perm_mask

COSET_ENUM_LIMIT = 20


@dataclass(frozen=True)
class InducedAction:
    """Block data of the representation of a joint automorphism.

    Writing each permuted basis row in the stacked basis (logical rows
    first, inner rows last) gives a coefficient matrix

        [ L | t2 ]
        [ 0 | t3 ]

    whose lower-left block vanishes because the inner code is preserved.
    ``t1`` is stored as L transposed, which is exactly the matrix acting on
    column labels: permuting the physical qubits sends the coset labelled
    beta to the coset labelled t1 beta.
    """

    t1: BitMatrix
    t2: BitMatrix
    t3: BitMatrix
    perm: Permutation


def induced_action(css: CssCode, p: Permutation) -> InducedAction:
    """Block decomposition of the action of p on the CSS basis.

    Raises ValueError (naming the offending code) if p is not a joint
    automorphism of the pair.
    """
    if p.degree != css.n:
        raise ValueError("permutation degree does not match code length")
    if not is_automorphism(css.c1, p):
        raise ValueError("permutation is not an automorphism of the outer code C1")
    if not is_automorphism(css.c2, p):
        raise ValueError("permutation is not an automorphism of the inner code C2")
    S_t = css.stacked_basis.transpose()
    m = css.c1.k
    k = css.k
    coeff_rows = []
    for i in range(m):
        image = apply_perm(css.stacked_basis.row(i), p)
        coeffs = solve(S_t, image)
        assert coeffs is not None, "permuted basis row left C1"
        coeff_rows.append(coeffs.bits)
    X = BitMatrix(coeff_rows, m)
    low = range(k, m)
    if any(X.entry(i, j) for i in low for j in range(k)):
        raise AssertionError("inner rows acquired logical components")
    L = X.submatrix(range(k), range(k))
    t2 = X.submatrix(range(k), low)
    t3 = X.submatrix(low, low)
    t1 = L.transpose()
    if not (is_invertible(t1) and is_invertible(t3)):
        raise AssertionError("induced blocks must be invertible")
    return InducedAction(t1, t2, t3, p)


def logical_matrix_of(css: CssCode, p: Permutation) -> BitMatrix:
    """Just the label-action block t1(p)."""
    return induced_action(css, p).t1


def verify_coset_action(css: CssCode, p: Permutation, beta: BitVector) -> bool:
    """Combinatorial check of the coset transport rule.

    Permutes every element of the coset labelled beta and compares the
    result, as a set, with the coset labelled t1 beta.
    """
    if beta.length != css.k:
        raise ValueError("label length mismatch")
    if css.c2.k > COSET_ENUM_LIMIT:
        raise CapacityError("inner code too large for coset enumeration")
    action = induced_action(css, p)
    rep = coset_state(css, beta).representative.bits
    permuted = {apply_perm_mask(rep ^ c, p) for c in css.c2.codewords()}
    target_rep = coset_state(css, action.t1.mul_vec(beta)).representative.bits
    target = {target_rep ^ c for c in css.c2.codewords()}
    return permuted == target


@dataclass(frozen=True)
class LogicalMatrix:
    """Invertible linear map on 2k logical qubits (two code blocks)."""

    dim: int
    m: BitMatrix

    def __post_init__(self):
        if self.m.rows != self.dim or self.m.cols != self.dim:
            raise ValueError("matrix shape does not match dim")
        if not is_invertible(self.m):
            raise ValueError("logical matrix must be invertible")


FIRST_CONTROLS = "first_controls"
SECOND_CONTROLS = "second_controls"


def transversal_cnot(k: int, direction: str) -> LogicalMatrix:
    """Transversal CNOT between two code blocks as a 2k x 2k label map.

    first_controls (controls in block 1):  (b1, b2) -> (b1, b1+b2),
    the block matrix (I 0 / I I); second_controls is its mirror (I I / 0 I).
    """
    if k < 1:
        raise ValueError("k must be positive")
    eye = BitMatrix.identity(k).row_masks()
    if direction == FIRST_CONTROLS:
        rows = list(eye) + [r | (r << k) for r in eye]
    elif direction == SECOND_CONTROLS:
        rows = [r | (r << k) for r in eye] + [r << k for r in eye]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return LogicalMatrix(2 * k, BitMatrix(rows, 2 * k))


def phase_action(css: CssCode) -> list[int]:
    """Residues wt(v) mod 4, one per logical label, for doubly-even C2.

    Applying the single-qubit phase gate transversally multiplies the basis
    state of coset v + C2 by i^wt(v); the residue is well defined per coset
    exactly when C2 is doubly even and orthogonal to C1.  Constancy over
    each coset is verified by full enumeration.
    """
    cls = classify(css.c2)
    if not cls.doubly_even:
        raise ValueError(
            "inner code is not doubly even: i^wt is not constant on cosets, "
            "the transversal phase gate does not act diagonally"
        )
    if css.c2.k > COSET_ENUM_LIMIT or css.k > COSET_ENUM_LIMIT:
        raise CapacityError("coset enumeration too large")
    inner = list(css.c2.codewords())
    log_rows = css.logical_basis.row_masks()
    residues = []
    for label in range(1 << css.k):
        rep = 0
        m = label
        while m:
            rep ^= log_rows[(m & -m).bit_length() - 1]
            m &= m - 1
        per_coset = {(rep ^ c).bit_count() % 4 for c in inner}
        if len(per_coset) != 1:
            raise ValueError(
                f"weight residue not constant on coset {label}: C1 is not "
                "orthogonal to C2"
            )
        residues.append(per_coset.pop())
    return residues


@dataclass(frozen=True)
class FourierReport:
    applicable: bool
    effect: str


def fourier_report(css: CssCode) -> FourierReport:
    """Whether the transversal Fourier (Hadamard) gate preserves the code.

    Applicable exactly when the pair is C <= C-perp with C1 = dual(C2); the
    logical effect is then a simultaneous Fourier transform that exchanges
    the roles of the logical X and Z operators (reported, not simulated).
    """
    from .codes import dual as dual_code

    applicable = css.c1 == dual_code(css.c2)
    if applicable:
        effect = (
            "transversal Fourier maps the code space to itself and exchanges "
            "the logical X- and Z-operators on all logical qubits"
        )
    else:
        effect = "not applicable: C1 is not the dual of C2"
    return FourierReport(applicable, effect)
