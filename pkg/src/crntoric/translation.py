"""Network translation: shift reaction groups so pathways merge into cycles.

Each reaction keeps its rate label; its source and product are shifted by the
group's complex. Translated complexes that coincide become one node, and the
node remembers which original source complexes landed on it. The first of
those is the node's kinetic complex, which supplies the monomial of every
reaction leaving the node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import Complex, CRNError, Network, TranslationScheme


@dataclass(frozen=True)
class GeneralizedNetwork:
    base: Network
    kinetic: Mapping[int, Complex]
    origin: Mapping[int, frozenset[int]]
    original: Network

    def kinetic_complex(self, node: int) -> Complex:
        try:
            return self.kinetic[node]
        except KeyError:
            raise MissingKineticComplex(
                f"node {self.base.format_complex(node)} is never a reaction source "
                "and has no kinetic complex"
            ) from None

    @property
    def has_all_kinetic(self) -> bool:
        return len(self.kinetic) == self.base.n

    def to_dict(self) -> dict:
        base = self.base
        names = base.species_names
        nodes = []
        for i, c in enumerate(base.complexes):
            kc = self.kinetic.get(i)
            nodes.append(
                {
                    "index": i,
                    "complex": c.format(names),
                    "kinetic": kc.format(names) if kc is not None else None,
                    "origin": [self.original.format_complex(j) for j in sorted(self.origin.get(i, ()))],
                }
            )
        return {"network": base.to_dsl(), "nodes": nodes}


class MissingKineticComplex(CRNError):
    pass


@dataclass(frozen=True)
class PropernessReport:
    proper: bool
    conflicts: tuple[tuple[int, frozenset[int]], ...]

    def describe(self, g: GeneralizedNetwork) -> list[dict]:
        return [
            {
                "node": g.base.format_complex(node),
                "sources": [g.original.format_complex(j) for j in sorted(srcs)],
            }
            for node, srcs in self.conflicts
        ]


def apply_scheme(net: Network, scheme: TranslationScheme) -> GeneralizedNetwork:
    scheme.validate(net)
    triples = []
    for rx in net.reactions:
        t = scheme.shift_for(rx.rate_label)
        triples.append((rx.source + t, rx.product + t, rx.rate_label))
    base = Network.build(net.species_names, triples)

    kinetic: dict[int, Complex] = {}
    origin: dict[int, set[int]] = {}
    for i, rx in enumerate(net.reactions):
        node = base.source_of[i]
        origin.setdefault(node, set()).add(net.source_of[i])
        kinetic.setdefault(node, rx.source)
    return GeneralizedNetwork(
        base=base,
        kinetic=kinetic,
        origin={k: frozenset(v) for k, v in origin.items()},
        original=net,
    )


def check_proper(g: GeneralizedNetwork) -> PropernessReport:
    conflicts = tuple(
        (node, srcs) for node, srcs in sorted(g.origin.items()) if len(srcs) > 1
    )
    return PropernessReport(proper=not conflicts, conflicts=conflicts)
