"""Bundled example diagrams."""

from __future__ import annotations

from importlib import resources

from .diagram import LinkDiagram, parse_pd, parse_pd_corpus
from .kauffman import GraphDiagram, parse_graph

__all__ = ["data_text", "corpus", "r3_pairs", "graph", "link"]


def data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def corpus() -> dict[str, LinkDiagram]:
    """Named diagrams of at most 8 crossings."""
    return parse_pd_corpus(data_text("corpus.pd"))


def r3_pairs() -> list[tuple[str, LinkDiagram, LinkDiagram]]:
    """Pairs of diagrams related by third Reidemeister moves."""
    named = parse_pd_corpus(data_text("r3_pairs.pd"))
    stems = sorted({name.rsplit(".", 1)[0] for name in named})
    return [(s, named[s + ".a"], named[s + ".b"]) for s in stems]


def graph(name: str) -> GraphDiagram:
    """``g1``, ``g2`` or ``theta``."""
    return parse_graph(data_text(name + ".gpd"))


def link(name: str) -> LinkDiagram:
    """``hopf`` or ``unknot``."""
    return parse_pd(data_text(name + ".pd"))
