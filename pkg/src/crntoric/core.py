"""Data model for mass-action reaction networks and translation schemes.

Species are referenced by dense integer ids; complexes are immutable sparse
coefficient maps over those ids. Networks are built once and never mutated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

MAX_COEFF = 2**31 - 1

_X_INDEXED = re.compile(r"^[Xx](\d+)$")


class CRNError(Exception):
    """Base class for all errors raised by this package."""


class NetworkError(CRNError):
    """A network or scheme violates a structural invariant."""


def concentration_symbol(name: str) -> str:
    """Name of the concentration variable for a species.

    ``X13`` becomes ``x13``; any other name ``A`` becomes ``xA``.
    """
    match = _X_INDEXED.match(name)
    if match:
        return "x" + match.group(1)
    return "x" + name


@dataclass(frozen=True)
class Species:
    id: int
    name: str


@dataclass(frozen=True)
class Complex:
    """Nonnegative integer combination of species, stored sparsely.

    ``items`` holds ``(species_id, coefficient)`` pairs sorted by id with no
    zero coefficients, so dataclass equality is coefficient-map equality.
    """

    items: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, int]) -> "Complex":
        pairs = []
        for sid, c in coeffs.items():
            if c < 0:
                raise NetworkError(f"negative coefficient {c} for species {sid}")
            if c > MAX_COEFF:
                raise NetworkError(f"coefficient overflow for species {sid}")
            if c:
                pairs.append((int(sid), int(c)))
        return cls(tuple(sorted(pairs)))

    @classmethod
    def zero(cls) -> "Complex":
        return cls(())

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def coeff(self, sid: int) -> int:
        for k, c in self.items:
            if k == sid:
                return c
        return 0

    @property
    def is_zero(self) -> bool:
        return not self.items

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.items)

    def __add__(self, other: "Complex") -> "Complex":
        merged = self.as_dict()
        for sid, c in other.items:
            merged[sid] = merged.get(sid, 0) + c
        return Complex.from_mapping(merged)

    def vector(self, m: int) -> list[int]:
        v = [0] * m
        for sid, c in self.items:
            v[sid] = c
        return v

    def format(self, names: Sequence[str]) -> str:
        if not self.items:
            return "0"
        return " + ".join(
            names[sid] if c == 1 else f"{c} {names[sid]}" for sid, c in self.items
        )

    def monomial(self, names: Sequence[str]) -> str:
        """Render as a concentration monomial, e.g. ``x1*x9`` or ``x2^2``."""
        if not self.items:
            return "1"
        parts = []
        for sid, c in self.items:
            sym = concentration_symbol(names[sid])
            parts.append(sym if c == 1 else f"{sym}^{c}")
        return "*".join(parts)


def difference(a: Complex, b: Complex, m: int) -> list[int]:
    """Integer vector ``a - b`` of length ``m``."""
    v = a.vector(m)
    for sid, c in b.items:
        v[sid] -= c
    return v


@dataclass(frozen=True)
class Reaction:
    source: Complex
    product: Complex
    rate_label: str
    index: int


@dataclass(frozen=True)
class Network:
    """Reaction network ``(species, complexes, reactions)``.

    Complexes are deduplicated in order of first appearance while scanning
    reactions source-then-product; ``source_of[i]`` and ``product_of[i]`` give
    the complex indices of reaction ``i``.
    """

    species: tuple[Species, ...]
    reactions: tuple[Reaction, ...]
    complexes: tuple[Complex, ...]
    source_of: tuple[int, ...]
    product_of: tuple[int, ...]
    _label_index: Mapping[str, int] = field(default=None, repr=False, compare=False)
    _complex_index: Mapping[Complex, int] = field(default=None, repr=False, compare=False)

    @classmethod
    def build(
        cls,
        species_names: Sequence[str],
        reactions: Iterable[tuple[Complex, Complex, str]],
    ) -> "Network":
        """Assemble a network from ``(source, product, label)`` triples.

        Raises :class:`NetworkError` on duplicate species names or labels,
        identical reaction sides, unknown species ids, unused species, or an
        empty reaction list.
        """
        names = list(species_names)
        if len(set(names)) != len(names):
            raise NetworkError("duplicate species names")
        species = tuple(Species(i, n) for i, n in enumerate(names))
        m = len(species)

        rxns: list[Reaction] = []
        complexes: list[Complex] = []
        cindex: dict[Complex, int] = {}
        src: list[int] = []
        prod: list[int] = []
        labels: dict[str, int] = {}
        used = [False] * m

        def resolve(c: Complex) -> int:
            for sid, _ in c.items:
                if not 0 <= sid < m:
                    raise NetworkError(f"unknown species id {sid}")
                used[sid] = True
            if c not in cindex:
                cindex[c] = len(complexes)
                complexes.append(c)
            return cindex[c]

        for source, product, label in reactions:
            if label in labels:
                raise NetworkError(f"duplicate rate label {label!r}")
            if source == product:
                raise NetworkError(f"reaction {label!r} has identical sides")
            labels[label] = len(rxns)
            src.append(resolve(source))
            prod.append(resolve(product))
            rxns.append(Reaction(source, product, label, len(rxns)))

        if not rxns:
            raise NetworkError("network has no reactions")
        unused = [names[i] for i in range(m) if not used[i]]
        if unused:
            raise NetworkError(f"species never used in a reaction: {', '.join(unused)}")

        return cls(
            species=species,
            reactions=tuple(rxns),
            complexes=tuple(complexes),
            source_of=tuple(src),
            product_of=tuple(prod),
            _label_index=labels,
            _complex_index=cindex,
        )

    @property
    def m(self) -> int:
        return len(self.species)

    @property
    def n(self) -> int:
        return len(self.complexes)

    @property
    def r(self) -> int:
        return len(self.reactions)

    @property
    def species_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.species)

    @property
    def rate_labels(self) -> tuple[str, ...]:
        return tuple(rx.rate_label for rx in self.reactions)

    def label_order(self) -> Mapping[str, int]:
        """Map rate label to reaction index; used for display ordering."""
        return self._label_index

    def complex_index(self, c: Complex) -> int:
        return self._complex_index[c]

    def species_id(self, name: str) -> int:
        for s in self.species:
            if s.name == name:
                return s.id
        raise KeyError(name)

    def reaction_vectors(self) -> list[list[int]]:
        """Rows ``y_product - y_source``, one per reaction."""
        return [difference(rx.product, rx.source, self.m) for rx in self.reactions]

    def edges(self) -> Iterator[tuple[int, int, str]]:
        """Directed edges ``(source_complex, product_complex, label)``."""
        for i, rx in enumerate(self.reactions):
            yield self.source_of[i], self.product_of[i], rx.rate_label

    def format_complex(self, idx: int) -> str:
        return self.complexes[idx].format(self.species_names)

    def to_dsl(self) -> str:
        """Serialize to the line-oriented network DSL.

        Every reaction is written as its own ``->`` line so that labels and
        order survive a round trip; a ``species`` header pins species order.
        """
        names = self.species_names
        lines = ["species " + ", ".join(names)]
        for rx in self.reactions:
            lines.append(
                f"{rx.source.format(names)} -> {rx.product.format(names)} ; {rx.rate_label}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SchemeGroup:
    name: str
    labels: tuple[str, ...]
    shift: Complex


@dataclass(frozen=True)
class TranslationScheme:
    """Partition of reaction labels into groups, each with a shift complex."""

    groups: tuple[SchemeGroup, ...]

    @classmethod
    def identity(cls, net: Network) -> "TranslationScheme":
        return cls((SchemeGroup("all", net.rate_labels, Complex.zero()),))

    def validate(self, net: Network) -> None:
        known = set(net.rate_labels)
        seen: dict[str, str] = {}
        for g in self.groups:
            for label in g.labels:
                if label not in known:
                    raise NetworkError(f"group {g.name!r}: unknown reaction label {label!r}")
                if label in seen:
                    raise NetworkError(
                        f"label {label!r} appears in groups {seen[label]!r} and {g.name!r}"
                    )
                seen[label] = g.name
            for sid, _ in g.shift.items:
                if not 0 <= sid < net.m:
                    raise NetworkError(f"group {g.name!r}: unknown species id {sid}")
        missing = [lab for lab in net.rate_labels if lab not in seen]
        if missing:
            raise NetworkError(f"labels not covered by any group: {', '.join(missing)}")

    def shift_for(self, label: str) -> Complex:
        for g in self.groups:
            if label in g.labels:
                return g.shift
        raise KeyError(label)
