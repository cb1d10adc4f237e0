"""Khovanov-Kauffman homology: Kh summed over the Kauffman family of a graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cube import DEFAULT_CAP
from .homology import GradedDims
from .kauffman import FamilyMember, GraphDiagram, family_members
from .oracle import euler_characteristic
from .polynomial import LaurentPolynomial

__all__ = ["KKhMember", "KKhResult", "kkh"]


@dataclass(frozen=True)
class KKhMember:
    id: str
    pd: str
    choices: tuple[str, ...]
    dims: GradedDims
    euler: LaurentPolynomial


@dataclass(frozen=True)
class KKhResult:
    members: tuple[KKhMember, ...]
    dedupe: bool
    total: GradedDims = field(init=False)
    total_euler: LaurentPolynomial = field(init=False)

    def __post_init__(self):
        total = GradedDims()
        euler = LaurentPolynomial()
        for m in self.members:
            total = total + m.dims
            euler = euler + m.euler
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "total_euler", euler)


def _as_member(m: FamilyMember) -> KKhMember:
    return KKhMember(
        id=m.id,
        pd=m.diagram.to_pd(),
        choices=tuple(str(c) for c in m.choices),
        dims=m.dims,
        euler=euler_characteristic(m.dims),
    )


def kkh(g: GraphDiagram, dedupe: bool = True, adjacent_only: bool = False, cap: int = DEFAULT_CAP) -> KKhResult:
    """KKh(G) as the direct sum of Kh over the family's links.

    With ``dedupe=False`` every choice contributes its own summand; choices
    whose closed part is empty contribute nothing either way.
    """
    members = family_members(g, dedupe=dedupe, adjacent_only=adjacent_only, cap=cap, compute_dims=True)
    return KKhResult(tuple(_as_member(m) for m in members if not m.is_empty), dedupe)
