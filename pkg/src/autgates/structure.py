"""End-to-end structure analysis of a CSS code's gate group.

Given a CSS pair and the joint automorphism group, this computes:

* the single-block logical image (the group of label maps t1(pi)),
* its invariant subspace chain and the algebra spanned by the image,
* the two-block gate group generated by transversal CNOTs and
  automorphism pairs, with a certified exact order,
* the subgroup acting trivially on the second block, and the matrix
  groups it induces on the invariant blocks of the first block.

The two-block group G is built with a base adapted to the invariant
structure (second-block vectors first), so that the pointwise stabilizer
of the second block can be read off the stabilizer chain and orbits stay
inside invariant subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import CssCode
from .gf2 import BitMatrix
from .logical import induced_action
from .matgroups import (
    AlgebraSpan,
    InvariantChain,
    MatrixGroup,
    adapted_basis,
    algebra_span,
    build_g12,
    echelon_basis,
    invariant_subspace_candidates,
    invariant_subspaces,
    restricted_block_group,
)
from .perms import PermGroup


def paired_subspace(W: tuple[int, ...], k: int) -> tuple[int, ...]:
    """The subspace {(v, w) : v, w in W} of the two-block label space.

    Invariant under the two-block gate group whenever W is invariant under
    the single-block image (transversal CNOTs only add components within
    the same subspace).
    """
    return echelon_basis([v for w in W for v in (w, w << k)])


@dataclass
class GateGroupAnalysis:
    css: CssCode
    aut_order: int
    t1_generators: list[BitMatrix]
    single_block: MatrixGroup
    single_block_order: int
    algebra: AlgebraSpan
    chain: InvariantChain
    block_dimensions: list[int]
    g12: MatrixGroup
    g12_order: int
    g12_certificate: str
    block2_stabilizer_order: int
    stabilizer_block_groups: list[MatrixGroup]
    stabilizer_block_orders: list[int]


def analyze_gate_group(css: CssCode, aut: PermGroup) -> GateGroupAnalysis:
    """Full two-block structure analysis; see the module docstring."""
    k = css.k
    if k < 1:
        raise ValueError("CSS code has no logical qubits")
    t1s = [induced_action(css, p).t1 for p in aut.generators]
    single = MatrixGroup(k, t1s) if t1s else MatrixGroup(k, [])
    single_order = single.order()
    algebra = algebra_span(t1s) if t1s else AlgebraSpan(k * k, (), 0)
    chain = invariant_subspaces(single)
    # Adapted base: second-block copies of the chain-adapted basis first,
    # then the first-block copies.
    adapted_rows = adapted_basis(chain).row_masks()
    base_hint = [v << k for v in adapted_rows] + list(adapted_rows)
    g12 = build_g12(css, aut, base_hint=base_hint)
    paired = [
        paired_subspace(W, k)
        for W in invariant_subspace_candidates(single)
    ]
    g12.ensure_exact(extra_candidates=paired)
    g12_order = g12.orbit_product()
    # Pointwise stabilizer of the second block: elements [[A, 0], [C, I]].
    stab_order, stab_gens = g12.stabilizer_data(k)
    a_parts = []
    eye = BitMatrix.identity(k)
    for g in stab_gens:
        assert g.submatrix(range(k), range(k, 2 * k)) == BitMatrix.zero(k, k)
        assert g.submatrix(range(k, 2 * k), range(k, 2 * k)) == eye
        a_parts.append(g.submatrix(range(k), range(k)))
    a_group = MatrixGroup(k, a_parts) if a_parts else MatrixGroup(k, [])
    block_groups = restricted_block_group(a_group, chain)
    block_orders = [bg.order() for bg in block_groups]
    return GateGroupAnalysis(
        css=css,
        aut_order=aut.order(),
        t1_generators=t1s,
        single_block=single,
        single_block_order=single_order,
        algebra=algebra,
        chain=chain,
        block_dimensions=chain.block_dimensions(),
        g12=g12,
        g12_order=g12_order,
        g12_certificate=g12.certificate or "",
        block2_stabilizer_order=stab_order,
        stabilizer_block_groups=block_groups,
        stabilizer_block_orders=block_orders,
    )
