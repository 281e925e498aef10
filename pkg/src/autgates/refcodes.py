"""Bundled reference examples.

Four codes used throughout the tests, the CLI fixtures and the self-check:
the CSS codes [[15,7,3]] (Hamming/simplex), [[22,8,4]] (a self-orthogonal
[22,7,8] code inside its dual), [[31,11,5]] (BCH [31,21,5] over its dual),
and an [[8,3,3]] GF(4) stabilizer code.

For the first two CSS codes the logical basis is not the package default:
it is the basis (found by module conjugation, see
``matgroups.module_conjugator``) in which the group of computed label maps
contains the published reference generators below, so the logical image
can be compared against them entry for entry.
"""

from __future__ import annotations

from .codes import (
    CssCode,
    LinearCode,
    bch_31_21,
    css_from_pair,
    dual,
    hamming,
    paper_22_7,
    simplex,
)
from .gf2 import BitMatrix
from .gf4stab import StabilizerCode, load_stabilizer

# Reference generators of the logical image of the [[15,7,3]] code.
REFERENCE_T1_15 = (
    BitMatrix.from_strings([
        "1001101",
        "1100100",
        "1110111",
        "1100010",
        "0100101",
        "0001101",
        "1100110",
    ]),
    BitMatrix.from_strings([
        "1010010",
        "1111100",
        "0110110",
        "0101011",
        "1001000",
        "0100110",
        "0111101",
    ]),
)

# Reference generators of the logical image of the [[22,8,4]] code.
REFERENCE_T1_22 = (
    BitMatrix.from_strings([
        "11010110",
        "01111100",
        "01101101",
        "11100000",
        "10101100",
        "11011101",
        "00100100",
        "10100110",
    ]),
    BitMatrix.from_strings([
        "11100001",
        "01011010",
        "01001011",
        "10101001",
        "11000011",
        "11101101",
        "00000010",
        "10110000",
    ]),
)

# Reference generators of the symplectic action on the [[8,3,3]] logical
# operators (X-block first; the upper-right 3x3 block is zero).
REFERENCE_SYMPLECTIC_833 = (
    BitMatrix.from_strings([
        "010000",
        "001000",
        "101000",
        "100010",
        "011101",
        "010100",
    ]),
    BitMatrix.from_strings([
        "100000",
        "010000",
        "001000",
        "010100",
        "100010",
        "000001",
    ]),
)

# Logical bases adapted to the reference generators (rows are coset
# representatives; see the module docstring).
ADAPTED_LOGICAL_BASIS_15 = BitMatrix.from_strings([
    "001000000000110",
    "101010000010111",
    "101011100010100",
    "000111100000000",
    "101110100010001",
    "100000000000011",
    "110011000000000",
])

ADAPTED_LOGICAL_BASIS_22 = BitMatrix.from_strings([
    "0001010010000000011111",
    "0010000100000000101101",
    "1000010010000000100101",
    "1011010010000000110100",
    "0111110111000000001010",
    "0011000010000000110111",
    "1100110000000000101000",
    "0101000011000000010010",
])

# GF(4) rows of the [[8,3,3]] stabilizer code: five stabilizer generators,
# three logical X-operators, three logical Z-operators.
STAB_833_ROWS = [
    "10w0Ww1W",
    "w0w10WW1",
    "01wwW1W0",
    "0w0Ww11W",
    "001W1wWw",
    "00w1wW1W",
    "000w0www",
    "00w0ww0w",
    "0001w0W0",
    "000010wW",
    "00w000W1",
]


def css_15_7_3() -> CssCode:
    """[[15,7,3]]: the simplex code inside the Hamming code of length 15."""
    return css_from_pair(hamming(4), simplex(4),
                         logical_basis=ADAPTED_LOGICAL_BASIS_15)


def css_22_8_4() -> CssCode:
    """[[22,8,4]]: the self-orthogonal [22,7,8] code inside its dual."""
    c2 = paper_22_7()
    return css_from_pair(dual(c2), c2, logical_basis=ADAPTED_LOGICAL_BASIS_22)


def css_31_11_5() -> CssCode:
    """[[31,11,5]]: the dual [31,10,12] code inside the BCH [31,21,5] code."""
    c1 = bch_31_21()
    return css_from_pair(c1, dual(c1))


def stab_8_3_3() -> StabilizerCode:
    """The [[8,3,3]] stabilizer code with its reference logical operators."""
    return load_stabilizer(STAB_833_ROWS, (5, 3, 3))


def inner_code_of(name: str) -> LinearCode:
    """The classical code whose automorphisms drive each CSS example."""
    return {

        "15": simplex(4),
        "22": paper_22_7(),
        "31": dual(bch_31_21()),
    }[name]
