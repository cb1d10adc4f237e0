"""Oriented planar-diagram (PD) link diagrams.

A crossing ``X(a,b,c,d)`` lists the four arcs meeting at it counterclockwise,
starting from the incoming under-strand, so ``a``/``c`` form the under-strand
and ``b``/``d`` the over-strand.  Crossingless unknot components, which PD
codes cannot express, are written ``U``.

Orientation is canonical rather than read off the labels: each component is
traversed along its least arc label, heading into that arc's first endpoint
slot (lowest crossing index; for an arc whose two ends meet the same
crossing, the counterclockwise-later position).  After tracing, every
crossing is rotated so that ``a`` really is the incoming under-strand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from ._unionfind import UnionFind
from .errors import (
    DiagramSyntaxError,
    InvalidMoveError,
    MalformedDiagramError,
    UnknownArcError,
)

__all__ = [
    "Crossing",
    "LinkDiagram",
    "parse_pd",
    "parse_pd_corpus",
    "crossing_signs",
    "mirror",
    "disjoint_union",
    "add_r1_kink",
    "add_r2_fingers",
    "faces",
    "face_adjacent_pairs",
    "is_planar",
    "braid_closure",
    "canonical_relabel",
    "reverse_components",
]

Slot = tuple[int, int]  # (crossing index, position 0..3)


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int

    @property
    def labels(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def rotated(self, k: int = 1) -> Crossing:
        """Read the same four arcs starting ``k`` positions later.

        ``k=1`` exchanges over and under (a crossing change); ``k=2`` is the
        same crossing read from the other end of the under-strand.
        """
        t = self.labels
        k %= 4
        return Crossing(*(t[k:] + t[:k]))

    def __str__(self):
        return "X({},{},{},{})".format(*self.labels)


def _first_slot(s: Slot, t: Slot) -> Slot:
    if s[0] != t[0]:
        return min(s, t)
    p, q = s[1], t[1]
    if q == (p + 1) % 4:
        return t
    if p == (q + 1) % 4:
        return s
    return min(s, t)


@dataclass(frozen=True)
class LinkDiagram:
    """A validated, canonically oriented link diagram.

    ``loops`` holds the arc labels of crossingless unknot components.  The
    derived fields are filled in on construction; two diagrams compare equal
    when their (normalized) crossings and loops agree.
    """

    crossings: tuple[Crossing, ...] = ()
    loops: tuple[int, ...] = ()
    components: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    signs: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        crossings = tuple(
            x if isinstance(x, Crossing) else Crossing(*x) for x in self.crossings
        )
        loops = tuple(int(x) for x in self.loops)
        slots = _validate(crossings, loops)
        traces, entries = _trace(crossings, slots)
        normalized = []
        signs = []
        for ci, x in enumerate(crossings):
            under_in, over_in = entries[ci]
            # base case: under enters at a (0), over enters at d (3) -> positive
            signs.append(1 if (under_in == 0) == (over_in == 3) else -1)
            normalized.append(x if under_in == 0 else x.rotated(2))
        object.__setattr__(self, "crossings", tuple(normalized))
        object.__setattr__(self, "loops", loops)
        object.__setattr__(self, "components", tuple(traces) + tuple((x,) for x in loops))
        object.__setattr__(self, "signs", tuple(signs))

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def arcs(self) -> tuple[int, ...]:
        labels = {lab for x in self.crossings for lab in x.labels}
        return tuple(sorted(labels.union(self.loops)))

    @property
    def max_label(self) -> int:
        return max(self.arcs, default=0)

    def slots_of(self, arc: int) -> list[Slot]:
        out = [
            (ci, p)
            for ci, x in enumerate(self.crossings)
            for p, lab in enumerate(x.labels)
            if lab == arc
        ]
        if not out and arc not in self.loops:
            raise UnknownArcError(f"unknown arc label {arc}")
        return out

    def to_pd(self) -> str:
        parts = [str(x) for x in self.crossings] + ["U"] * len(self.loops)
        return " ".join(parts)

    def __str__(self):
        return self.to_pd() or "(empty)"


def _validate(crossings: Sequence[Crossing], loops: Sequence[int]) -> dict[int, list[Slot]]:
    slots: dict[int, list[Slot]] = {}
    for ci, x in enumerate(crossings):
        for p, lab in enumerate(x.labels):
            if not isinstance(lab, int) or lab <= 0:
                raise MalformedDiagramError(
                    f"crossing {ci + 1} has non-positive arc label {lab!r}"
                )
            slots.setdefault(lab, []).append((ci, p))
        if x.a == x.c or x.b == x.d:
            raise MalformedDiagramError(
                f"crossing {ci + 1} ({x}) joins opposite positions with one arc"
            )
    bad = [(lab, len(where)) for lab, where in sorted(slots.items()) if len(where) != 2]
    if bad:
        detail = ", ".join(f"{lab} appears {k} time(s)" for lab, k in bad)
        raise MalformedDiagramError(f"every arc label must appear exactly twice: {detail}")
    seen = set()
    for lab in loops:
        if lab <= 0:
            raise MalformedDiagramError(f"loop label {lab} is not positive")
        if lab in slots or lab in seen:
            raise MalformedDiagramError(f"loop label {lab} is already in use")
        seen.add(lab)
    return slots


def _other_slot(slots: dict[int, list[Slot]], lab: int, slot: Slot) -> Slot:
    s, t = slots[lab]
    return t if s == slot else s


def _trace(crossings, slots):
    """Trace components; return (label cycles, per-crossing entry positions)."""
    under_entry: dict[int, int] = {}
    over_entry: dict[int, int] = {}
    traces = []
    visited: set[int] = set()
    for start in sorted(slots):
        if start in visited:
            continue
        cycle = []
        lab = start
        head = _first_slot(*slots[start])
        while True:
            visited.add(lab)
            cycle.append(lab)
            ci, p = head
            (under_entry if p % 2 == 0 else over_entry)[ci] = p
            out = (ci, (p + 2) % 4)
            lab = crossings[ci].labels[out[1]]
            head = _other_slot(slots, lab, out)
            if lab == start:
                break
        traces.append(tuple(cycle))
    entries = [(under_entry[ci], over_entry[ci]) for ci in range(len(crossings))]
    return traces, entries


# ----------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>[\s,;]+)
  | (?P<comment>\#[^\n]*)
  | (?P<rec>(?P<kind>[XVxv])\s*[\(\[](?P<body>[^\)\]]*)[\)\]])
  | (?P<unknot>U\b)
  | (?P<pd>PD\s*[\(\[])
  | (?P<close>[\)\]])
    """,
    re.VERBOSE,
)


def _tokens(text: str, allow_vertices: bool) -> Iterator[tuple[str, tuple[int, ...], int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            snippet = text[pos:pos + 12].split()[0] if text[pos:].split() else text[pos]
            raise DiagramSyntaxError(f"unparseable token {snippet!r}", pos)
        if m.group("rec"):
            kind = m.group("kind").upper()
            if kind == "V" and not allow_vertices:
                raise DiagramSyntaxError("vertex record in a link diagram", pos)
            body = m.group("body").strip()
            fields_ = [f.strip() for f in body.split(",")] if body else []
            try:
                labels = tuple(int(f) for f in fields_)
            except ValueError:
                raise DiagramSyntaxError(f"non-integer label in {m.group('rec')!r}", pos) from None
            if kind == "X" and len(labels) != 4:
                raise DiagramSyntaxError(
                    f"crossing {m.group('rec')!r} must have 4 labels", pos
                )
            yield kind, labels, pos
        elif m.group("unknot"):
            yield "U", (), pos
        pos = m.end()


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text (``X(a,b,c,d)`` records and ``U`` tokens) into a diagram.

    ``U`` components are labelled after the largest crossing label, in order.
    """
    crossings = []
    n_loops = 0
    for kind, labels, pos in _tokens(text, allow_vertices=False):
        if kind == "X":
            if any(lab <= 0 for lab in labels):
                raise DiagramSyntaxError("arc labels must be positive integers", pos)
            crossings.append(Crossing(*labels))
        else:
            n_loops += 1
    top = max((lab for x in crossings for lab in x.labels), default=0)
    return LinkDiagram(tuple(crossings), tuple(range(top + 1, top + 1 + n_loops)))


def parse_pd_corpus(text: str) -> dict[str, LinkDiagram]:
    """Parse one diagram per line; lines may carry a ``name:`` prefix."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, body = line.partition(":")
        if not sep:
            name, body = f"line{lineno}", line
        out[name.strip()] = parse_pd(body)
    return out


# ----------------------------------------------------------------------------
# basic operations

def crossing_signs(d: LinkDiagram) -> tuple[int, int]:
    """Return ``(n_plus, n_minus)`` under the canonical orientation."""
    return d.n_plus, d.n_minus


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Exchange over and under at every crossing."""
    return LinkDiagram(tuple(x.rotated(1) for x in d.crossings), d.loops)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    shift = d1.max_label
    moved = tuple(Crossing(*(lab + shift for lab in x.labels)) for x in d2.crossings)
    return LinkDiagram(d1.crossings + moved, d1.loops + tuple(x + shift for x in d2.loops))


def canonical_relabel(d: LinkDiagram) -> LinkDiagram:
    """Relabel arcs 1..m keeping the orientation of every component.

    Each component gets consecutive labels in its direction of travel; loops
    come last.  The result depends only on the crossing order and the
    orientation, not on the original labels.
    """
    entries = [(0, 3 if sign > 0 else 1) for sign in d.signs]
    return _relabel_along(d.crossings, d.loops, entries)


def _relabel_along(crossings, loops, entries) -> LinkDiagram:
    """Build a diagram whose canonical orientation is the one given.

    ``entries[ci]`` holds the positions where the under- and over-strand
    enter crossing ``ci``.  Every component is numbered along its travel,
    starting from an arc that enters its first slot, so that tracing the
    least label recovers the same direction.
    """
    rows, normal = [], []
    for x, (under_in, over_in) in zip(crossings, entries):
        labs = list(x.labels if isinstance(x, Crossing) else x)
        if under_in == 2:
            labs = labs[2:] + labs[:2]
            under_in, over_in = 0, (over_in + 2) % 4
        rows.append(labs)
        normal.append((under_in, over_in))
    entries = normal
    slots = _node_slots(rows)
    head = {}
    for ci, row in enumerate(rows):
        for p in entries[ci]:
            head[row[p]] = (ci, p)
    cycles, seen = [], set()
    for start in slots:
        if start in seen:
            continue
        cycle, lab = [], start
        while True:
            cycle.append(lab)
            seen.add(lab)
            ci, p = head[lab]
            lab = rows[ci][(p + 2) % 4]
            if lab == start:
                break
        # start at the qualifying arc with the lowest head slot, so the
        # result does not depend on the incoming labels
        k = min(
            (k for k, lab in enumerate(cycle) if head[lab] == _first_slot(*slots[lab])),
            key=lambda k: head[cycle[k]],
        )
        cycles.append(cycle[k:] + cycle[:k])
    cycles.sort(key=lambda c: min(head[lab] for lab in c))
    mapping: dict[int, int] = {}
    for cycle in cycles:
        for lab in cycle:
            mapping[lab] = len(mapping) + 1
    for lab in loops:
        mapping[lab] = len(mapping) + 1
    return LinkDiagram(
        tuple(Crossing(*(mapping[lab] for lab in row)) for row in rows),
        tuple(mapping[lab] for lab in loops),
    )


def reverse_components(d: LinkDiagram, indices: Iterable[int]) -> LinkDiagram:
    """Reverse the orientation of the components at ``indices``.

    Indices refer to ``d.components``.  Arcs are renumbered so that the
    canonical trace runs in the new directions.
    """
    flip = set(indices)
    comp_of = {lab: k for k, comp in enumerate(d.components) for lab in comp}
    entries = []
    for x, sign in zip(d.crossings, d.signs):
        under_in = 2 if comp_of[x.a] in flip else 0
        over_in = 3 if sign > 0 else 1
        if comp_of[x.b] in flip:
            over_in = 4 - over_in
        entries.append((under_in, over_in))
    return _relabel_along(d.crossings, d.loops, entries)


def _relabelled(d: LinkDiagram, mapping: dict[int, int]) -> LinkDiagram:
    return LinkDiagram(
        tuple(Crossing(*(mapping[lab] for lab in x.labels)) for x in d.crossings),
        tuple(mapping[lab] for lab in d.loops),
    )


def _replace(rows: list[list[int]], slot: Slot, label: int) -> None:
    rows[slot[0]][slot[1]] = label


# ----------------------------------------------------------------------------
# faces and Reidemeister moves
#
# These work on "nodes": label tuples of any length listed counterclockwise,
# so the same code serves crossings (length 4) and graph vertices.

def _node_slots(nodes: Sequence[Sequence[int]]) -> dict[int, list[Slot]]:
    slots: dict[int, list[Slot]] = {}
    for ni, labs in enumerate(nodes):
        for p, lab in enumerate(labs):
            slots.setdefault(lab, []).append((ni, p))
    return slots


def _node_faces(nodes: Sequence[Sequence[int]]) -> list[list[tuple[int, Slot, Slot]]]:
    slots = _node_slots(nodes)
    seen = set()
    out = []
    for ni, labs in enumerate(nodes):
        for p in range(len(labs)):
            if (ni, p) in seen:
                continue
            face = []
            corner = (ni, p)
            while corner not in seen:
                seen.add(corner)
                lab = nodes[corner[0]][corner[1]]
                end = _other_slot(slots, lab, corner)
                face.append((lab, corner, end))
                corner = (end[0], (end[1] - 1) % len(nodes[end[0]]))
            out.append(face)
    return out


def _node_pieces(nodes: Sequence[Sequence[int]], loops: Iterable[int]) -> UnionFind:
    uf = UnionFind(lab for labs in nodes for lab in labs)
    for lab in loops:
        uf.add(lab)
    for labs in nodes:
        for lab in labs[1:]:
            uf.union(labs[0], lab)
    return uf


def faces(d: LinkDiagram) -> list[list[tuple[int, Slot, Slot]]]:
    """Faces of the diagram's planar 4-valent graph.

    Each face is a list of ``(arc, from_slot, to_slot)`` steps, walked with
    the face on the left.  Crossingless loops contribute no faces.
    """
    return _node_faces([x.labels for x in d.crossings])


def is_planar(d: LinkDiagram) -> bool:
    """Check the Euler characteristic of every connected piece (F = V + 2)."""
    nodes = [x.labels for x in d.crossings]
    uf = _node_pieces(nodes, ())
    verts: dict[int, int] = {}
    for labs in nodes:
        r = uf.find(labs[0])
        verts[r] = verts.get(r, 0) + 1
    nfaces: dict[int, int] = {}
    for face in _node_faces(nodes):
        r = uf.find(face[0][0])
        nfaces[r] = nfaces.get(r, 0) + 1
    return all(nfaces.get(r, 0) == v + 2 for r, v in verts.items())


def _kink(nodes: Sequence[Sequence[int]], loops: Sequence[int], arc: int, handedness: int):
    """Curl on ``arc``: returns (nodes, loops, new crossing labels)."""
    if handedness not in (1, -1):
        raise ValueError("handedness must be +1 or -1")
    slots = _node_slots(nodes).get(arc, [])
    if not slots and arc not in loops:
        raise UnknownArcError(f"unknown arc label {arc}")
    top = max([lab for labs in nodes for lab in labs] + list(loops), default=0)
    y = top + 1
    rows = [list(labs) for labs in nodes]
    loops = list(loops)
    if slots:
        first = _first_slot(*slots)
        other = slots[1] if slots[0] == first else slots[0]
        z = top + 2
        _replace(rows, other, z)
    else:
        z = arc
        loops.remove(arc)
    # strand runs arc -> K -> loop y -> K -> z
    new = (arc, z, y, y) if handedness > 0 else (y, arc, z, y)
    return rows, loops, new


def _fingers(nodes: Sequence[Sequence[int]], loops: Sequence[int], arc1: int, arc2: int, over: bool):
    """Push ``arc1`` across ``arc2``: returns (nodes, loops, two new crossings).

    Both arcs are walked with a shared face on their left; the finger leaves
    that face through ``arc2``.  Arcs in different connected pieces (or free
    loops) can always be brought next to each other.
    """
    if arc1 == arc2:
        raise InvalidMoveError("an R2 move needs two distinct arcs")
    slots = _node_slots(nodes)
    for arc in (arc1, arc2):
        if arc not in slots and arc not in loops:
            raise UnknownArcError(f"unknown arc label {arc}")
    uf = _node_pieces(nodes, loops)
    all_faces = _node_faces(nodes)
    w1 = w2 = None
    if arc1 in slots and arc2 in slots and uf.find(arc1) == uf.find(arc2):
        for face in all_faces:
            w1 = next(((f, t) for lab, f, t in face if lab == arc1), None)
            w2 = next(((f, t) for lab, f, t in face if lab == arc2), None)
            if w1 and w2:
                break
        else:
            raise InvalidMoveError(f"arcs {arc1} and {arc2} do not border a common face")
    else:
        def any_walk(arc):
            if arc not in slots:
                return None
            return next((f, t) for face in all_faces for lab, f, t in face if lab == arc)

        w1, w2 = any_walk(arc1), any_walk(arc2)

    top = max([lab for labs in nodes for lab in labs] + list(loops), default=0)
    fresh = iter(range(top + 1, top + 5))
    rows = [list(labs) for labs in nodes]
    loops = [x for x in loops if x not in (arc1, arc2)]

    def split(arc, walk):
        # labels for the segments at the walk's start and end
        if walk is None:
            return arc, arc
        start, end = walk
        if _first_slot(start, end) == start:
            near, far = arc, next(fresh)
        else:
            near, far = next(fresh), arc
        _replace(rows, start, near)
        _replace(rows, end, far)
        return near, far

    s1, s3 = split(arc1, w1)
    t1, t3 = split(arc2, w2)
    s2, t2 = next(fresh), next(fresh)
    if over:
        new = ((t2, s2, t3, s1), (t1, s2, t2, s3))
    else:
        new = ((s1, t2, s2, t3), (s3, t1, s2, t2))
    return rows, loops, new


def add_r1_kink(d: LinkDiagram, arc: int, handedness: int = 1) -> LinkDiagram:
    """Insert a curl on ``arc``; ``handedness`` is the sign of the new crossing.

    New crossings and labels go after the existing ones, and the original
    label stays on the segment touching its first endpoint slot, so the
    canonical orientation of every component is unchanged.
    """
    rows, loops, new = _kink([x.labels for x in d.crossings], d.loops, arc, handedness)
    return LinkDiagram(tuple(Crossing(*r) for r in rows) + (Crossing(*new),), tuple(loops))


def add_r2_fingers(d: LinkDiagram, arc1: int, arc2: int, over: bool = True) -> LinkDiagram:
    """Push ``arc1`` across ``arc2`` (over it by default), adding two crossings.

    Arcs in the same connected piece must border a common face.
    """
    rows, loops, new = _fingers([x.labels for x in d.crossings], d.loops, arc1, arc2, over)
    return LinkDiagram(tuple(Crossing(*r) for r in rows + list(new)), tuple(loops))


def face_adjacent_pairs(d: LinkDiagram) -> list[tuple[int, int]]:
    """Unordered pairs of distinct arcs that can take part in an R2 move."""
    pairs = set()
    for face in faces(d):
        labs = sorted({lab for lab, _, _ in face})
        pairs.update((a, b) for k, a in enumerate(labs) for b in labs[k + 1:])
    return sorted(pairs)


# ----------------------------------------------------------------------------
# braid closures (test-corpus generator)

def braid_closure(word: Iterable[int], strands: int | None = None) -> LinkDiagram:
    """PD diagram of the closure of a braid word.

    ``k`` stands for the generator sigma_k (strand k passes over strand k+1,
    a positive crossing), ``-k`` for its inverse.  Untouched strands become
    crossingless loops.
    """
    word = [int(g) for g in word]
    if any(g == 0 for g in word):
        raise ValueError("braid generators are nonzero integers")
    m = max([abs(g) + 1 for g in word] + [strands or 1])
    counter = iter(range(1, 10**9))
    bottom = [next(counter) for _ in range(m)]
    current = list(bottom)
    raw = []
    for g in word:
        k = abs(g) - 1
        p, q = current[k], current[k + 1]
        r, s = next(counter), next(counter)  # r: top-right, s: top-left
        if g > 0:
            raw.append((q, r, s, p))
        else:
            raw.append((p, q, r, s))
        current[k], current[k + 1] = s, r
    uf = UnionFind(range(1, next(counter)))
    for top_lab, bot_lab in zip(current, bottom):
        uf.union(top_lab, bot_lab)
    rows = [[uf.find(lab) for lab in x] for x in raw]
    used = {lab for row in rows for lab in row}
    loops = tuple(sorted({uf.find(b) for b in bottom} - used))
    # strands run upward: the under-strand enters at 0, the over-strand at 3 or 1
    entries = [(0, 3 if g > 0 else 1) for g in word]
    return _relabel_along(rows, loops, entries)
