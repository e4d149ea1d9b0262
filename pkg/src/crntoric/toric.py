"""Tree constants and the binomial steady-state basis of a translated network.

For a weakly reversible linkage class with symbolic Laplacian ``A`` (column
``j`` carries the outflow ``-sum k`` of node ``j`` on the diagonal and the
labels of edges ``j -> i`` in row ``i``), the tree constant of node ``i`` is

    K_i = (-1)^(c-1) det(A without row i and column i)

which by the Matrix-Tree theorem equals the sum, over spanning trees directed
toward ``i``, of the product of edge labels. The vector ``K`` spans ``ker A``.
A proper, weakly reversible translation with zero structural and kinetic
deficiency then has steady states cut out by ``K_i x^{y_K(j)} - K_j x^{y_K(i)}``
for pairs ``i, j`` in a common linkage class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import Complex, CRNError, Network
from .graph import deficiency, linkage_classes, strong_components
from .polynomial import Monomial, RatePolynomial, format_monomial, monomial_gcd
from .translation import GeneralizedNetwork, check_proper

Matrix = list[list[RatePolynomial]]


class NotWeaklyReversible(CRNError):
    pass


class HypothesisError(CRNError):
    """Preconditions for the toric basis do not hold."""

    def __init__(self, failures: Sequence[str]):
        self.failures = tuple(failures)
        super().__init__("toric basis hypotheses violated: " + "; ".join(self.failures))


@dataclass(frozen=True)
class TreeConstants:
    """Per linkage class, a map node index -> tree constant."""

    classes: tuple[Mapping[int, RatePolynomial], ...]

    def __getitem__(self, node: int) -> RatePolynomial:
        for cls in self.classes:
            if node in cls:
                return cls[node]
        raise KeyError(node)

    def as_dict(self) -> dict[int, RatePolynomial]:
        out: dict[int, RatePolynomial] = {}
        for cls in self.classes:
            out.update(cls)
        return out


def _zero_matrix(c: int) -> Matrix:
    return [[RatePolynomial() for _ in range(c)] for _ in range(c)]


def class_laplacian(net: Network, nodes: Sequence[int]) -> Matrix:
    """Symbolic Laplacian restricted to ``nodes`` (in the given order)."""
    local = {node: i for i, node in enumerate(nodes)}
    a = _zero_matrix(len(nodes))
    for u, v, label in net.edges():
        if u not in local:
            continue
        j, i = local[u], local[v]
        k = RatePolynomial.var(label)
        a[i][j] = a[i][j] + k
        a[j][j] = a[j][j] - k
    return a


def minor(a: Matrix, i: int) -> Matrix:
    return [[v for cj, v in enumerate(row) if cj != i] for ri, row in enumerate(a) if ri != i]


def det_bareiss(a: Matrix) -> RatePolynomial:
    """Determinant by fraction-free elimination with exact polynomial division."""
    n = len(a)
    if n == 0:
        return RatePolynomial.const(1)
    m = [list(row) for row in a]
    sign = 1
    prev = RatePolynomial.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((p for p in range(k + 1, n) if not m[p][k].is_zero()), None)
            if swap is None:
                return RatePolynomial()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = RatePolynomial()
        prev = pivot
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def det_cofactor(a: Matrix) -> RatePolynomial:
    """Determinant by Laplace expansion along the first row."""
    n = len(a)
    if n == 0:
        return RatePolynomial.const(1)
    if n == 1:
        return a[0][0]
    total = RatePolynomial()
    for j, entry in enumerate(a[0]):
        if entry.is_zero():
            continue
        sub = [row[:j] + row[j + 1 :] for row in a[1:]]
        term = entry * det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def _require_weakly_reversible(net: Network) -> tuple[tuple[int, ...], ...]:
    lp = linkage_classes(net)
    sccs = {c: i for i, comp in enumerate(strong_components(net)) for c in comp}
    for ci, cls in enumerate(lp.classes):
        if len({sccs[node] for node in cls}) != 1:
            nodes = ", ".join(net.format_complex(n) for n in cls)
            raise NotWeaklyReversible(f"linkage class {ci} ({nodes}) is not strongly connected")
    return lp.classes


def tree_constants(g: GeneralizedNetwork | Network) -> TreeConstants:
    net = g.base if isinstance(g, GeneralizedNetwork) else g
    classes = _require_weakly_reversible(net)
    out = []
    for cls in classes:
        a = class_laplacian(net, cls)
        sign = -1 if (len(cls) - 1) % 2 else 1
        consts = {}
        for i, node in enumerate(cls):
            k = det_bareiss(minor(a, i))
            k = k if sign > 0 else -k
            if not k.has_positive_coefficients():
                raise ArithmeticError(
                    f"tree constant of node {node} is not positive ({k}); Laplacian orientation is wrong"
                )
            consts[node] = k
        out.append(consts)
    return TreeConstants(tuple(out))


def _rooted_trees(nodes: Sequence[int], out_edges: Mapping[int, list[tuple[int, str]]], root: int) -> Iterator[list[str]]:
    """Yield label lists of spanning trees directed toward ``root``.

    Every non-root node picks one outgoing edge; the choice is a tree iff
    following the chosen edges from any node reaches the root.
    """
    others = [v for v in nodes if v != root]
    for choice in itertools.product(*(out_edges[v] for v in others)):
        parent = {v: tgt for v, (tgt, _) in zip(others, choice)}
        ok = True
        for start in others:
            seen = set()
            v = start
            while v != root:
                if v in seen:
                    ok = False
                    break
                seen.add(v)
                v = parent[v]
            if not ok:
                break
        if ok:
            yield [label for _, label in choice]


def tree_constants_bruteforce(g: GeneralizedNetwork | Network, max_nodes: int = 8) -> TreeConstants:
    """Tree constants by explicit enumeration of rooted spanning trees."""
    net = g.base if isinstance(g, GeneralizedNetwork) else g
    classes = _require_weakly_reversible(net)
    out = []
    for cls in classes:
        if len(cls) > max_nodes:
            raise ValueError(f"linkage class with {len(cls)} nodes exceeds brute-force limit {max_nodes}")
        members = set(cls)
        out_edges: dict[int, list[tuple[int, str]]] = {v: [] for v in cls}
        for u, v, label in net.edges():
            if u in members:
                out_edges[u].append((v, label))
        consts = {}
        for root in cls:
            total = RatePolynomial()
            for labels in _rooted_trees(cls, out_edges, root):
                term = RatePolynomial.const(1)
                for lab in labels:
                    term = term * RatePolynomial.var(lab)
                total = total + term
            consts[root] = total
        out.append(consts)
    return TreeConstants(tuple(out))


def basis_pairs(nodes: Sequence[int]) -> list[tuple[int, int]]:
    """Deterministic spanning tree of node pairs inside one class.

    Nodes are blocked in consecutive pairs ``(v0, v1), (v2, v3), ...``; each
    block is then tied to the previous one through their last nodes. A class
    ``v0..v3`` gives ``(v0, v1), (v2, v3), (v3, v1)``.
    """
    nodes = list(nodes)
    blocks = [nodes[i : i + 2] for i in range(0, len(nodes), 2)]
    pairs = [(b[0], b[1]) for b in blocks if len(b) == 2]
    for prev, cur in zip(blocks, blocks[1:]):
        pairs.append((cur[-1], prev[-1]))
    return pairs


@dataclass(frozen=True)
class BasisBinomial:
    """``lhs_coeff * x^lhs_mono - rhs_coeff * x^rhs_mono`` after cancelling ``cancelled``.

    For the pair ``(i, j)`` the unsimplified form is ``K_i x^{y_K(j)} - K_j x^{y_K(i)}``.
    """

    lhs_coeff: RatePolynomial
    lhs_mono: Complex
    rhs_coeff: RatePolynomial
    rhs_mono: Complex
    linkage_class: int
    pair: tuple[int, int]
    cancelled: Monomial = ()

    def sides(self, k: Mapping[str, object], x: Sequence[object]):
        """Numeric values of the two terms at rates ``k`` and concentrations ``x``."""
        def mono(c: Complex):
            val = 1
            for sid, e in c.items:
                val = val * x[sid] ** e
            return val

        return self.lhs_coeff.evaluate(k) * mono(self.lhs_mono), self.rhs_coeff.evaluate(k) * mono(self.rhs_mono)

    def residual(self, k: Mapping[str, float], x: Sequence[float], floor: float = 1e-30) -> float:
        lhs, rhs = self.sides(k, x)
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), floor)

    def substitute(self, old: str, new: str) -> "BasisBinomial":
        """Copy with rate label ``old`` renamed to ``new`` in both coefficients."""
        return BasisBinomial(
            self.lhs_coeff.substitute(old, new),
            self.lhs_mono,
            self.rhs_coeff.substitute(old, new),
            self.rhs_mono,
            self.linkage_class,
            self.pair,
            self.cancelled,
        )

    def rate_labels(self) -> set[str]:
        return self.lhs_coeff.variables() | self.rhs_coeff.variables()

    def format(self, net: Network) -> str:
        order = net.label_order()
        names = net.species_names

        def side(coeff: RatePolynomial, mono: Complex) -> str:
            ctext = coeff.format(order)
            if len(coeff) > 1:
                ctext = f"({ctext})"
            if mono.is_zero:
                return ctext
            mtext = mono.monomial(names)
            return mtext if ctext == "1" else f"{ctext}*{mtext}"

        return f"{side(self.lhs_coeff, self.lhs_mono)} - {side(self.rhs_coeff, self.rhs_mono)}"

    def to_dict(self, net: Network) -> dict:
        order = net.label_order()
        names = net.species_names

        def mono(c: Complex) -> dict:
            return {names[sid]: e for sid, e in c.items}

        return {
            "text": self.format(net),
            "linkage_class": self.linkage_class,
            "pair": list(self.pair),
            "lhs": {"coeff": self.lhs_coeff.to_json(order), "monomial": mono(self.lhs_mono)},
            "rhs": {"coeff": self.rhs_coeff.to_json(order), "monomial": mono(self.rhs_mono)},
            "cancelled": format_monomial(self.cancelled, order),
        }


def simplified_binomial(
    ki: RatePolynomial, kj: RatePolynomial, yi: Complex, yj: Complex, linkage_class: int, pair: tuple[int, int]
) -> BasisBinomial:
    common = monomial_gcd([ki, kj])
    return BasisBinomial(
        lhs_coeff=ki.divide_monomial(common),
        lhs_mono=yj,
        rhs_coeff=kj.divide_monomial(common),
        rhs_mono=yi,
        linkage_class=linkage_class,
        pair=pair,
        cancelled=common,
    )


def check_hypotheses(g: GeneralizedNetwork) -> list[str]:
    """Names of the toric-basis hypotheses that fail (empty when all hold)."""
    failures = []
    if not check_proper(g).proper:
        failures.append("translation is not proper")
    if not g.has_all_kinetic:
        failures.append("some node has no kinetic complex")
        report = deficiency(g.base)
    else:
        report = deficiency(g)
    if not report.weakly_reversible:
        failures.append("translation is not weakly reversible")
    if report.deficiency != 0:
        failures.append(f"structural deficiency is {report.deficiency}, not 0")
    if report.kinetic_deficiency not in (None, 0):
        failures.append(f"kinetic deficiency is {report.kinetic_deficiency}, not 0")
    return failures


def steady_state_basis(g: GeneralizedNetwork, tc: TreeConstants | None = None) -> list[BasisBinomial]:
    """Binomial basis of the steady-state ideal, ``n - l`` elements.

    Raises :class:`HypothesisError` naming each failed precondition.
    """
    failures = check_hypotheses(g)
    if failures:
        raise HypothesisError(failures)
    if tc is None:
        tc = tree_constants(g)
    out = []
    for ci, cls in enumerate(linkage_classes(g.base).classes):
        for i, j in basis_pairs(cls):
            out.append(
                simplified_binomial(tc[i], tc[j], g.kinetic_complex(i), g.kinetic_complex(j), ci, (i, j))
            )
    return out
