"""Parsers for the plain-text network and translation-scheme formats.

Network files hold one reaction statement per line::

    species X1, X9, X13          # optional, fixes species order
    X1 + X9 <-> X13 ; k1, k2     # reversible: forward label first
    X13 -> X2 + X9 ; k3
    0 -> A ; k4                  # "0" is the zero complex

Scheme files are INI-like::

    [group 1]
    reactions = k1, k2, k3
    shift = X10
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .core import (
    MAX_COEFF,
    Complex,
    CRNError,
    Network,
    NetworkError,
    SchemeGroup,
    TranslationScheme,
)

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_TERM = re.compile(rf"^(?:(\d+)\s*)?({_IDENT})$")
_LABEL = re.compile(rf"^{_IDENT}$")
_SPECIES = re.compile(r"^species\b(.*)$")
_HEADER = re.compile(r"^\[\s*group\s+(.+?)\s*\]$")
_KEYVAL = re.compile(r"^(\w+)\s*=\s*(.*)$")


class ParseError(CRNError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = ""
        if self.source:
            where = f"{self.source}:"
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where} {self.message}" if where else self.message


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_terms(text: str, lineno: int) -> dict[str, int]:
    text = text.strip()
    if text == "0":
        return {}
    if not text:
        raise ParseError("empty complex", lineno)
    coeffs: dict[str, int] = {}
    for raw in text.split("+"):
        term = raw.strip()
        match = _TERM.match(term)
        if not match:
            raise ParseError(f"malformed term {term!r}", lineno)
        coeff = int(match.group(1)) if match.group(1) else 1
        if coeff == 0:
            raise ParseError(f"zero coefficient in term {term!r}", lineno)
        name = match.group(2)
        total = coeffs.get(name, 0) + coeff
        if total > MAX_COEFF:
            raise ParseError(f"coefficient overflow for {name}", lineno)
        coeffs[name] = total
    return coeffs


def _split_names(text: str) -> list[str]:
    return [tok for tok in re.split(r"[,\s]+", text.strip()) if tok]


class _SpeciesTable:
    def __init__(self, declared: list[str] | None):
        self.fixed = declared is not None
        self.names: list[str] = list(declared or [])
        self.ids = {n: i for i, n in enumerate(self.names)}

    def complex(self, coeffs: dict[str, int], lineno: int) -> Complex:
        mapped = {}
        for name, c in coeffs.items():
            if name not in self.ids:
                if self.fixed:
                    raise ParseError(f"species {name!r} not declared in species header", lineno)
                self.ids[name] = len(self.names)
                self.names.append(name)
            mapped[self.ids[name]] = c
        return Complex.from_mapping(mapped)


def parse_network(text: str, source: str | None = None) -> Network:
    """Parse network DSL text.

    Species are ordered by the ``species`` header when present, otherwise by
    first appearance. Raises :class:`ParseError` with a line number.
    """
    declared: list[str] | None = None
    stmts: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        header = _SPECIES.match(line)
        if header and "->" not in line:
            if declared is not None:
                raise ParseError("duplicate species header", lineno, source)
            if stmts:
                raise ParseError("species header must precede reactions", lineno, source)
            declared = _split_names(header.group(1))
            bad = [n for n in declared if not _LABEL.match(n)]
            if bad:
                raise ParseError(f"invalid species name {bad[0]!r}", lineno, source)
            if len(set(declared)) != len(declared):
                raise ParseError("duplicate species in header", lineno, source)
            continue
        stmts.append((lineno, line))

    table = _SpeciesTable(declared)
    triples: list[tuple[Complex, Complex, str]] = []
    seen_labels: dict[str, int] = {}
    try:
        for lineno, line in stmts:
            if ";" not in line:
                raise ParseError("missing ';' before rate labels", lineno)
            body, label_text = line.split(";", 1)
            labels = [lab.strip() for lab in label_text.split(",")]
            for lab in labels:
                if not _LABEL.match(lab):
                    raise ParseError(f"invalid rate label {lab!r}", lineno)
                if lab in seen_labels:
                    raise ParseError(
                        f"duplicate rate label {lab!r} (first used on line {seen_labels[lab]})",
                        lineno,
                    )
                seen_labels[lab] = lineno
            if "<->" in body:
                lhs, rhs = body.split("<->", 1)
                reversible = True
            elif "->" in body:
                lhs, rhs = body.split("->", 1)
                reversible = False
            else:
                raise ParseError("missing arrow '->' or '<->'", lineno)
            if "->" in rhs:
                raise ParseError("more than one arrow", lineno)
            if len(labels) != (2 if reversible else 1):
                want = "two labels for '<->'" if reversible else "one label for '->'"
                raise ParseError(f"expected {want}, got {len(labels)}", lineno)
            src = table.complex(_parse_terms(lhs, lineno), lineno)
            prod = table.complex(_parse_terms(rhs, lineno), lineno)
            if src == prod:
                raise ParseError("reaction with identical sides", lineno)
            triples.append((src, prod, labels[0]))
            if reversible:
                triples.append((prod, src, labels[1]))
        if not triples:
            raise ParseError("no reactions")
        return Network.build(table.names, triples)
    except ParseError as exc:
        exc.source = source
        raise
    except NetworkError as exc:
        raise ParseError(str(exc), None, source) from exc


def parse_complex(text: str, net: Network, lineno: int | None = None) -> Complex:
    """Parse a complex expression over the species of ``net``."""
    coeffs = _parse_terms(text, lineno)
    ids = {}
    for name, c in coeffs.items():
        try:
            ids[net.species_id(name)] = c
        except KeyError:
            raise ParseError(f"unknown species {name!r}", lineno) from None
    return Complex.from_mapping(ids)


def parse_scheme(text: str, net: Network, source: str | None = None) -> TranslationScheme:
    """Parse a scheme file against ``net`` and check it covers every label once."""
    groups: list[SchemeGroup] = []
    current: dict | None = None
    label_home: dict[str, str] = {}
    known = set(net.rate_labels)

    def close(lineno: int) -> None:
        if current is None:
            return
        if current["labels"] is None:
            raise ParseError(f"group {current['name']!r} has no 'reactions' entry", lineno, source)
        groups.append(
            SchemeGroup(current["name"], tuple(current["labels"]), current["shift"] or Complex.zero())
        )

    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            close(lineno)
            name = header.group(1)
            if any(g.name == name for g in groups):
                raise ParseError(f"duplicate group name {name!r}", lineno, source)
            current = {"name": name, "labels": None, "shift": None, "line": lineno}
            continue
        kv = _KEYVAL.match(line)
        if not kv:
            raise ParseError(f"cannot parse line {line!r}", lineno, source)
        if current is None:
            raise ParseError("entry outside of a [group ...] section", lineno, source)
        key, value = kv.group(1), kv.group(2)
        if key == "reactions":
            if current["labels"] is not None:
                raise ParseError("duplicate 'reactions' entry", lineno, source)
            labels = [lab.strip() for lab in value.split(",") if lab.strip()]
            for lab in labels:
                if lab not in known:
                    raise ParseError(f"unknown reaction label {lab!r}", lineno, source)
                if lab in label_home:
                    raise ParseError(
                        f"label {lab!r} already in group {label_home[lab]!r}", lineno, source
                    )
                label_home[lab] = current["name"]
            current["labels"] = labels
        elif key == "shift":
            if current["shift"] is not None:
                raise ParseError("duplicate 'shift' entry", lineno, source)
            try:
                current["shift"] = parse_complex(value, net, lineno)
            except ParseError as exc:
                exc.source = source
                raise
        else:
            raise ParseError(f"unknown key {key!r}", lineno, source)
    close(lineno)

    missing = [lab for lab in net.rate_labels if lab not in label_home]
    if missing:
        raise ParseError(f"labels missing from all groups: {', '.join(missing)}", None, source)
    scheme = TranslationScheme(tuple(groups))
    scheme.validate(net)
    return scheme


def load_network(path: str | Path) -> Network:
    path = Path(path)
    return parse_network(path.read_text(encoding="utf-8"), source=str(path))


def load_scheme(path: str | Path, net: Network) -> TranslationScheme:
    path = Path(path)
    return parse_scheme(path.read_text(encoding="utf-8"), net, source=str(path))


def bundled(name: str) -> str:
    """Text of a bundled data file such as ``"net1.crn"`` or ``"sch1.scheme"``."""
    return resources.files("crntoric").joinpath("data", name).read_text(encoding="utf-8")


def load_bundled_system(which: int) -> tuple[Network, TranslationScheme]:
    """Bundled MAPK network ``which`` (1, 2 or 3) together with its scheme."""
    net = parse_network(bundled(f"net{which}.crn"), source=f"net{which}.crn")
    scheme = parse_scheme(bundled(f"sch{which}.scheme"), net, source=f"sch{which}.scheme")
    return net, scheme
