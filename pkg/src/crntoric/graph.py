"""Structural quantities: linkage classes, weak reversibility, deficiencies."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import networkx as nx

from . import linalg
from .core import Network, difference
from .translation import GeneralizedNetwork


@dataclass(frozen=True)
class LinkagePartition:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class StructureReport:
    m: int
    n: int
    r: int
    l: int
    s: int
    deficiency: int
    weakly_reversible: bool
    s_kinetic: int | None = None
    kinetic_deficiency: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def reaction_digraph(net: Network) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(net.n))
    for u, v, label in net.edges():
        g.add_edge(u, v, label=label)
    return g


def _ordered(components) -> list[tuple[int, ...]]:
    # Deterministic: nodes ascending inside a class, classes by smallest node.
    return sorted((tuple(sorted(c)) for c in components), key=lambda c: c[0])


def linkage_classes(net: Network) -> LinkagePartition:
    classes = _ordered(nx.connected_components(reaction_digraph(net).to_undirected(as_view=True)))
    class_of = [0] * net.n
    for ci, cls in enumerate(classes):
        for node in cls:
            class_of[node] = ci
    return LinkagePartition(tuple(classes), tuple(class_of))


def strong_components(net: Network) -> list[tuple[int, ...]]:
    return _ordered(nx.strongly_connected_components(reaction_digraph(net)))


def is_weakly_reversible(net: Network) -> bool:
    """True iff every linkage class is a single strongly connected component."""
    return len(strong_components(net)) == len(linkage_classes(net))


def stoichiometric_rank(net: Network) -> int:
    return linalg.rank(net.reaction_vectors())


def conservation_laws(net: Network) -> list[list[Fraction]]:
    """Exact basis of the left null space of the stoichiometric matrix.

    Each vector ``w`` satisfies ``w . (y' - y) = 0`` for every reaction.
    """
    vectors = net.reaction_vectors()
    return linalg.nullspace(vectors, ncols=net.m)


def kinetic_vectors(g: GeneralizedNetwork) -> list[list[int]]:
    """Rows ``(y_K)_product - (y_K)_source`` over the translated reactions."""
    base = g.base
    return [
        difference(g.kinetic_complex(base.product_of[i]), g.kinetic_complex(base.source_of[i]), base.m)
        for i in range(base.r)
    ]


def kinetic_rank(g: GeneralizedNetwork) -> int:
    return linalg.rank(kinetic_vectors(g))


def deficiency(net: Network | GeneralizedNetwork) -> StructureReport:
    """Structure report; for a generalized network the kinetic fields are filled.

    Raises :class:`~crntoric.translation.MissingKineticComplex` when some node
    of a generalized network lacks a kinetic complex.
    """
    g = net if isinstance(net, GeneralizedNetwork) else None
    base = g.base if g is not None else net
    lp = linkage_classes(base)
    s = stoichiometric_rank(base)
    delta = base.n - len(lp) - s
    if delta < 0:
        raise ArithmeticError(f"negative deficiency {delta}: rank computation is wrong")
    report = dict(
        m=base.m,
        n=base.n,
        r=base.r,
        l=len(lp),
        s=s,
        deficiency=delta,
        weakly_reversible=is_weakly_reversible(base),
    )
    if g is not None:
        s_k = kinetic_rank(g)
        report.update(s_kinetic=s_k, kinetic_deficiency=base.n - len(lp) - s_k)
    return StructureReport(**report)


def node_enumeration(net: Network) -> list[int]:
    """Nodes listed class by class, ascending inside each class.

    Position ``p`` in this list is node number ``p + 1`` in the numbering used
    by printed tree-constant tables.
    """
    return [node for cls in linkage_classes(net).classes for node in cls]
