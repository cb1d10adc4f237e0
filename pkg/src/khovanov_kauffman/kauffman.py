"""Embedded graph diagrams and Kauffman's vertex replacement.

A graph diagram is a PD code extended with vertex stars ``V(h1,...,hk)``
listing the incident half-edges counterclockwise.  A replacement choice
picks, at every vertex, one pair of half-edges to join into a through
strand; the remaining half-edges become free ends.  Closing up keeps the
closed strands and throws away every open arc together with its crossings.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Mapping, Sequence

from ._unionfind import UnionFind
from .cube import DEFAULT_CAP, khovanov_dims
from .diagram import (
    Crossing,
    LinkDiagram,
    _fingers,
    _kink,
    _node_faces,
    _node_pieces,
    _tokens,
    reverse_components,
)
from .errors import CapExceededError, InvalidChoiceError, MalformedDiagramError
from .homology import GradedDims

__all__ = [
    "VertexStar",
    "GraphDiagram",
    "ReplacementChoice",
    "Tangle",
    "FamilyMember",
    "parse_graph",
    "enumerate_choices",
    "choice_count",
    "apply_replacement",
    "close_and_prune",
    "family",
    "family_members",
    "graph_is_planar",
    "graph_add_r1_kink",
    "graph_add_r2_fingers",
    "graph_face_adjacent_pairs",
    "member_id",
    "orient_member",
]


@dataclass(frozen=True)
class VertexStar:
    id: int
    halfedges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.halfedges)

    def pairs(self, adjacent_only: bool = False) -> list[tuple[int, int] | None]:
        """Joinable position pairs; a leaf has the single empty choice ``None``."""
        k = self.degree
        if k < 2:
            return [None]
        if adjacent_only:
            return sorted({tuple(sorted((p, (p + 1) % k))) for p in range(k)})
        return list(itertools.combinations(range(k), 2))


@dataclass(frozen=True)
class GraphDiagram:
    crossings: tuple[Crossing, ...] = ()
    vertices: tuple[VertexStar, ...] = ()
    loops: tuple[int, ...] = ()

    def __post_init__(self):
        crossings = tuple(x if isinstance(x, Crossing) else Crossing(*x) for x in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        counts: dict[int, int] = {}
        for x in crossings:
            for lab in x.labels:
                counts[lab] = counts.get(lab, 0) + 1
        ids = set()
        for v in self.vertices:
            if v.degree == 0:
                raise MalformedDiagramError(f"vertex {v.id} has degree 0")
            if v.id in ids:
                raise MalformedDiagramError(f"duplicate vertex id {v.id}")
            ids.add(v.id)
            for lab in v.halfedges:
                counts[lab] = counts.get(lab, 0) + 1
        for lab, k in sorted(counts.items()):
            if lab <= 0:
                raise MalformedDiagramError(f"arc label {lab} is not positive")
            if k != 2:
                raise MalformedDiagramError(
                    f"arc label {lab} appears {k} time(s); every label must appear exactly twice"
                )
        for lab in self.loops:
            if lab in counts:
                raise MalformedDiagramError(f"loop label {lab} is already in use")

    @property
    def max_label(self) -> int:
        labels = [lab for x in self.crossings for lab in x.labels]
        labels += [lab for v in self.vertices for lab in v.halfedges]
        return max(labels + list(self.loops), default=0)

    def vertex(self, vid: int) -> VertexStar:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def to_pd(self) -> str:
        parts = [str(x) for x in self.crossings]
        parts += ["V({})".format(",".join(map(str, v.halfedges))) for v in self.vertices]
        parts += ["U"] * len(self.loops)
        return " ".join(parts)


def parse_graph(text: str) -> GraphDiagram:
    """Parse ``X(a,b,c,d)``, ``V(h1,...,hk)`` and ``U`` records.

    Vertices are numbered 1, 2, ... in order of appearance.
    """
    crossings, vertices = [], []
    n_loops = 0
    for kind, labels, _pos in _tokens(text, allow_vertices=True):
        if kind == "X":
            crossings.append(Crossing(*labels))
        elif kind == "V":
            vertices.append(VertexStar(len(vertices) + 1, labels))
        else:
            n_loops += 1
    top = max([lab for x in crossings for lab in x.labels] + [lab for v in vertices for lab in v.halfedges], default=0)
    return GraphDiagram(tuple(crossings), tuple(vertices), tuple(range(top + 1, top + 1 + n_loops)))


@dataclass(frozen=True)
class ReplacementChoice:
    """vertex id -> pair of star positions to connect (``None`` for a leaf)."""

    pairs: tuple[tuple[int, tuple[int, int] | None], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, tuple[int, int] | None]) -> ReplacementChoice:
        items = []
        for vid, pair in sorted(mapping.items()):
            items.append((vid, None if pair is None else tuple(sorted(pair))))
        return cls(tuple(items))

    def __getitem__(self, vid: int):
        for v, pair in self.pairs:
            if v == vid:
                return pair
        raise KeyError(vid)

    def as_dict(self) -> dict[int, tuple[int, int] | None]:
        return dict(self.pairs)

    def __str__(self):
        return " ".join(
            f"v{vid}:{'-' if p is None else f'{p[0]}{p[1]}'}" for vid, p in self.pairs
        )


def choice_count(g: GraphDiagram, adjacent_only: bool = False) -> int:
    """Number of replacement choices: the product of C(deg, 2) (leaves count once)."""
    total = 1
    for v in g.vertices:
        if adjacent_only and v.degree > 2:
            total *= v.degree
        else:
            total *= max(comb(v.degree, 2), 1)
    return total


def enumerate_choices(g: GraphDiagram, adjacent_only: bool = False) -> list[ReplacementChoice]:
    """Every simultaneous choice, lexicographic in vertex order."""
    ids = [v.id for v in g.vertices]
    options = [v.pairs(adjacent_only) for v in g.vertices]
    return [ReplacementChoice(tuple(zip(ids, combo))) for combo in itertools.product(*options)]


@dataclass(frozen=True)
class Tangle:
    """Crossings plus strand joins; ``free_ends`` are the unjoined half-edges.

    ``joins`` and ``free_ends`` refer to star positions as ``(vertex id, pos)``.
    """

    crossings: tuple[Crossing, ...]
    halfedge_labels: Mapping[tuple[int, int], int]
    joins: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    free_ends: tuple[tuple[int, int], ...]
    loops: tuple[int, ...] = ()

    def free_ends_at(self, vid: int) -> int:
        return sum(1 for v, _ in self.free_ends if v == vid)


def apply_replacement(g: GraphDiagram, c: ReplacementChoice) -> Tangle:
    chosen = c.as_dict()
    if set(chosen) != {v.id for v in g.vertices}:
        raise InvalidChoiceError("choice must cover exactly the vertices of the graph")
    labels = {}
    joins, free = [], []
    for v in g.vertices:
        pair = chosen[v.id]
        for p, lab in enumerate(v.halfedges):
            labels[(v.id, p)] = lab
        if pair is None:
            if v.degree >= 2:
                raise InvalidChoiceError(f"vertex {v.id} of degree {v.degree} needs a pair")
            free.extend((v.id, p) for p in range(v.degree))
            continue
        p, q = pair
        if p == q or not (0 <= p < v.degree and 0 <= q < v.degree):
            raise InvalidChoiceError(
                f"pair {pair} is not two distinct half-edges of vertex {v.id} (degree {v.degree})"
            )
        joins.append(((v.id, p), (v.id, q)))
        free.extend((v.id, s) for s in range(v.degree) if s not in (p, q))
    return Tangle(g.crossings, labels, tuple(joins), tuple(free), g.loops)


def close_and_prune(t: Tangle) -> LinkDiagram:
    """Keep the closed strands of ``t`` as a link diagram.

    A crossing between two discarded strands disappears; a crossing with one
    discarded strand is removed by joining the retained strand straight
    through.  Arcs are renumbered in order of their least original label.
    """
    strands = UnionFind()
    for x in t.crossings:
        for lab in x.labels:
            strands.add(lab)
        strands.union(x.a, x.c)
        strands.union(x.b, x.d)
    for lab in t.halfedge_labels.values():
        strands.add(lab)
    for lab in t.loops:
        strands.add(lab)
    for s1, s2 in t.joins:
        strands.union(t.halfedge_labels[s1], t.halfedge_labels[s2])
    open_roots = {strands.find(t.halfedge_labels[s]) for s in t.free_ends}

    def kept(lab):
        return strands.find(lab) not in open_roots

    arcs = UnionFind(lab for lab in strands.parent if kept(lab))
    for s1, s2 in t.joins:
        a, b = t.halfedge_labels[s1], t.halfedge_labels[s2]
        if kept(a):
            arcs.union(a, b)
    survivors = []
    for x in t.crossings:
        under, over = kept(x.a), kept(x.b)
        if under and over:
            survivors.append(x)
        elif under:
            arcs.union(x.a, x.c)
        elif over:
            arcs.union(x.b, x.d)
    roots = sorted(arcs.classes())
    new_label = {r: k + 1 for k, r in enumerate(roots)}
    relabel = {lab: new_label[arcs.find(lab)] for lab in arcs.parent}
    crossings = tuple(Crossing(*(relabel[lab] for lab in x.labels)) for x in survivors)
    used = {lab for x in crossings for lab in x.labels}
    loops = tuple(sorted(set(new_label.values()) - used))
    return orient_member(LinkDiagram(crossings, loops))


def orient_member(d: LinkDiagram) -> LinkDiagram:
    """Pick the relative orientation with the most negative crossings.

    Family members come unoriented.  For a fixed diagram Kh depends on the
    orientation only through n_minus, and moves on edges change n_minus by
    the same amount for every orientation, so this choice is stable under
    them.  Ties go to the fewest reversals, then the lexicographically
    first set, so an optimal traced orientation is kept as is.
    """
    comp_of = {lab: k for k, comp in enumerate(d.components) for lab in comp}
    mixed = [
        (comp_of[x.a], comp_of[x.b], s)
        for x, s in zip(d.crossings, d.signs)
        if comp_of[x.a] != comp_of[x.b]
    ]
    if not mixed:
        return d
    n_comp = len(d.components) - len(d.loops)
    best, best_flip = -1, ()
    # component 0 stays fixed; reversing everything changes no sign
    for r in range(n_comp):
        for flip in itertools.combinations(range(1, n_comp), r):
            fs = set(flip)
            neg = sum(1 for u, o, s in mixed if s * (-1 if (u in fs) != (o in fs) else 1) < 0)
            if neg > best:
                best, best_flip = neg, flip
    return reverse_components(d, best_flip) if best_flip else d


def member_id(d: LinkDiagram) -> str:
    """Stable content hash of a member's PD code."""
    return hashlib.sha256(d.to_pd().encode()).hexdigest()[:12]


@dataclass
class FamilyMember:
    choices: list[ReplacementChoice]
    diagram: LinkDiagram
    dims: GradedDims | None = None
    id: str = field(init=False)

    def __post_init__(self):
        self.id = member_id(self.diagram)

    @property
    def multiplicity(self) -> int:
        return len(self.choices)

    @property
    def is_empty(self) -> bool:
        return self.diagram.n_components == 0


def family_members(
    g: GraphDiagram,
    dedupe: bool = True,
    adjacent_only: bool = False,
    cap: int = DEFAULT_CAP,
    compute_dims: bool | None = None,
) -> list[FamilyMember]:
    """All members of T(G), one per choice, or one per homology type with ``dedupe``.

    In dedupe mode empty results (no closed strand survives) are dropped and
    members with equal Khovanov dimensions are merged, keeping the first
    diagram and collecting every choice that produced that type.
    """
    if compute_dims is None:
        compute_dims = dedupe
    members: list[FamilyMember] = []
    by_dims: dict[GradedDims, FamilyMember] = {}
    for choice in enumerate_choices(g, adjacent_only):
        link = close_and_prune(apply_replacement(g, choice))
        if dedupe and link.n_components == 0:
            continue
        dims = None
        if compute_dims:
            try:
                dims = khovanov_dims(link, cap)
            except CapExceededError as err:
                raise CapExceededError(err.crossings, err.cap, f"family member for choice {choice}") from None
        if dedupe:
            if dims in by_dims:
                by_dims[dims].choices.append(choice)
                continue
            member = FamilyMember([choice], link, dims)
            by_dims[dims] = member
        else:
            member = FamilyMember([choice], link, dims)
        members.append(member)
    return members


def family(g: GraphDiagram, dedupe: bool = True, adjacent_only: bool = False, cap: int = DEFAULT_CAP) -> list[LinkDiagram]:
    return [m.diagram for m in family_members(g, dedupe, adjacent_only, cap)]


def _graph_nodes(g: GraphDiagram) -> list[tuple[int, ...]]:
    return [x.labels for x in g.crossings] + [v.halfedges for v in g.vertices]


def _rebuild(g: GraphDiagram, rows, loops, new_crossings) -> GraphDiagram:
    nc = len(g.crossings)
    crossings = tuple(Crossing(*r) for r in rows[:nc]) + tuple(Crossing(*x) for x in new_crossings)
    vertices = tuple(VertexStar(v.id, tuple(r)) for v, r in zip(g.vertices, rows[nc:]))
    return GraphDiagram(crossings, vertices, tuple(loops))


def graph_add_r1_kink(g: GraphDiagram, arc: int, handedness: int = 1) -> GraphDiagram:
    """Curl an edge of the graph away from its vertices."""
    rows, loops, new = _kink(_graph_nodes(g), g.loops, arc, handedness)
    return _rebuild(g, rows, loops, [new])


def graph_add_r2_fingers(g: GraphDiagram, arc1: int, arc2: int, over: bool = True) -> GraphDiagram:
    """R2 between two edges bordering a common face."""
    rows, loops, new = _fingers(_graph_nodes(g), g.loops, arc1, arc2, over)
    return _rebuild(g, rows, loops, new)


def graph_face_adjacent_pairs(g: GraphDiagram) -> list[tuple[int, int]]:
    pairs = set()
    for face in _node_faces(_graph_nodes(g)):
        labs = sorted({lab for lab, _, _ in face})
        pairs.update((a, b) for k, a in enumerate(labs) for b in labs[k + 1:])
    return sorted(pairs)


def graph_is_planar(g: GraphDiagram) -> bool:
    """Euler-characteristic check V - E + F = 2 on every connected piece."""
    nodes = _graph_nodes(g)
    uf = _node_pieces(nodes, ())
    verts: dict[int, int] = {}
    edges: dict[int, int] = {}
    for labs in nodes:
        r = uf.find(labs[0])
        verts[r] = verts.get(r, 0) + 1
        edges[r] = edges.get(r, 0) + len(labs)
    nfaces: dict[int, int] = {}
    for face in _node_faces(nodes):
        r = uf.find(face[0][0])
        nfaces[r] = nfaces.get(r, 0) + 1
    return all(verts[r] - edges[r] // 2 + nfaces.get(r, 0) == 2 for r in verts)
