"""Planted ribbon trees with plain and round edges.

A tree is stored as nested immutable nodes hanging off the root edge.  A
plain node keeps its plain children in ribbon order (after the incoming
edge) and its round children as an unordered collection, sorted by
canonical string.  Round nodes have only round children.

Codimension of the stratum indexed by a tree is
``#internal plain edges + 2 * #internal round edges``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb

from .errors import DomainTooSmall, ExternalEdge

PLAIN = "plain"
ROUND = "round"


@dataclass(frozen=True)
class Leaf:
    kind: str
    label: int

    @property
    def canonical(self) -> str:
        return str(self.label) if self.kind == PLAIN else f"r{self.label}"


@dataclass(frozen=True)
class Node:
    kind: str
    plain: tuple = ()
    round: tuple = ()

    @cached_property
    def canonical(self) -> str:
        rd = ",".join(c.canonical for c in self.round)
        if self.kind == ROUND:
            return f"R({rd})"
        return "P(" + ",".join(c.canonical for c in self.plain) + ";" + rd + ")"

    @property
    def children(self) -> tuple:
        return self.plain + self.round

    def valency(self) -> tuple[int, int]:
        """(|v|_pl, |v|_rd), counting the incoming edge."""
        if self.kind == PLAIN:
            return 1 + len(self.plain), len(self.round)
        return 0, 1 + len(self.round)


def make_node(kind: str, plain=(), round=()) -> Node:
    if kind == ROUND and plain:
        raise ValueError("round vertices carry only round edges")
    return Node(kind, tuple(plain), tuple(sorted(round, key=lambda c: c.canonical)))


def _vertex_ok(node: Node, semistable: bool) -> bool:
    pl, rd = node.valency()
    if node.kind == ROUND:
        return rd >= 3
    return pl + 2 * rd >= (2 if semistable else 3)


@dataclass(frozen=True, eq=False)
class RibbonTree:
    """A planted ribbon tree.  Edges are addressed by child-index paths.

    The path ``()`` is the root edge; ``(i,)`` is the i-th edge out of the
    root vertex in ribbon order (plain children first, then round ones), and
    so on.  ``labels`` is an opaque annotation (for instance object labels on
    boundary regions) ignored by comparisons.
    """

    root: Node
    k: int
    q: int
    labels: tuple | None = field(default=None)

    @property
    def canonical(self) -> str:
        return self.root.canonical

    def __eq__(self, other):
        return isinstance(other, RibbonTree) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"RibbonTree({self.canonical})"

    def node_at(self, path: tuple):
        node = self.root
        for i in path:
            node = node.children[i]
        return node

    def vertices(self) -> list:
        """(path, node) for every internal vertex, depth first."""
        out = []

        def walk(node, path):
            out.append((path, node))
            for i, c in enumerate(node.children):
                if isinstance(c, Node):
                    walk(c, path + (i,))

        walk(self.root, ())
        return out

    def edge_kind(self, path: tuple) -> str:
        if not path:
            return PLAIN
        parent = self.node_at(path[:-1])
        return PLAIN if path[-1] < len(parent.plain) else ROUND

    def internal_edges(self) -> list:
        return [(p, self.edge_kind(p)) for p, _ in self.vertices() if p]

    def codim(self) -> int:
        return sum(1 if kind == PLAIN else 2 for _, kind in self.internal_edges())

    def is_stable(self) -> bool:
        return all(_vertex_ok(n, False) for _, n in self.vertices())

    def is_semistable(self) -> bool:
        return all(_vertex_ok(n, True) for _, n in self.vertices())

    def plain_leaf_order(self) -> list:
        out = []

        def walk(node):
            for c in node.plain:
                if isinstance(c, Leaf):
                    out.append(c.label)
                else:
                    walk(c)

        walk(self.root)
        return out

    def contract(self, path: tuple) -> "RibbonTree":
        return contract_edge(self, path)

    def to_dict(self) -> dict:
        verts = []
        for path, node in self.vertices():
            pl, rd = node.valency()
            verts.append({
                "path": list(path),
                "kind": node.kind,
                "ribbon": [c.canonical for c in node.plain],
                "round": [c.canonical for c in node.round],
                "valency": [pl, rd],
            })
        return {
            "canonical": self.canonical,
            "k": self.k,
            "q": self.q,
            "codim": self.codim(),
            "internal_edges": [{"path": list(p), "kind": kd} for p, kd in self.internal_edges()],
            "vertices": verts,
        }


# ---------------------------------------------------------------------------
# contraction


def _replace(node: Node, path: tuple, new_child) -> Node:
    i = path[0]
    kids = list(node.children)
    if len(path) == 1:
        kids[i] = new_child
    else:
        kids[i] = _replace(kids[i], path[1:], new_child)
    npl = len(node.plain)
    return make_node(node.kind, kids[:npl], kids[npl:])


def contract_edge(T: RibbonTree, path: tuple) -> RibbonTree:
    """Collapse an internal edge, merging its two endpoints.

    Plain edge: the merged plain order is the parent's plain edges before e,
    then the child's plain edges, then the parent's remaining plain edges.
    Round children of both endpoints are pooled.
    """
    path = tuple(path)
    if not path:
        raise ExternalEdge("the root edge is external")
    parent_path, i = path[:-1], path[-1]
    parent = T.node_at(parent_path)
    if i >= len(parent.children):
        raise ValueError(f"no edge at {path}")
    child = parent.children[i]
    if isinstance(child, Leaf):
        raise ExternalEdge(f"edge {path} ends at a leaf")
    npl = len(parent.plain)
    if i < npl:
        plain = parent.plain[:i] + child.plain + parent.plain[i + 1:]
        merged = make_node(parent.kind, plain, parent.round + child.round)
    else:
        j = i - npl
        rnd = parent.round[:j] + parent.round[j + 1:] + child.round
        merged = make_node(parent.kind, parent.plain, rnd)
    if parent_path:
        root = _replace(T.root, parent_path, merged)
    else:
        root = merged
    return RibbonTree(root, T.k, T.q, T.labels)


# ---------------------------------------------------------------------------
# enumeration


def set_partitions(items: tuple):
    """All partitions of a tuple into nonempty blocks (blocks are tuples)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield ((first,),) + p
        for i in range(len(p)):
            yield p[:i] + ((first,) + p[i],) + p[i + 1:]


def _compositions(n: int, m: int):
    """Ordered m-tuples of nonnegative integers summing to n."""
    if m == 0:
        if n == 0:
            yield ()
        return
    for bars in itertools.combinations(range(n + m - 1), m - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + m - 2 - prev)
        yield tuple(parts)


def _subsets(R: tuple):
    for r in range(len(R) + 1):
        yield from itertools.combinations(R, r)


def _combine(option_lists, budget):
    """Products of child options whose edge counts fit in the budget."""
    for combo in itertools.product(*option_lists):
        used = sum(u for _, u in combo)
        if budget is None or used <= budget:
            yield tuple(n for n, _ in combo), used


@lru_cache(maxsize=None)
def _child_options(kind: str, lo: int, hi: int, R: tuple, budget, semi: bool) -> tuple:
    """Subtrees hanging off one edge of the given kind, with edge counts."""
    out = []
    if kind == PLAIN:
        if hi - lo == 1 and not R:
            out.append((Leaf(PLAIN, lo), 0))
        if hi - lo == 0 and not R:
            return ()
        if budget is None or budget >= 1:
            inner = None if budget is None else budget - 1
            for node, used in _plain_vertex(lo, hi, R, inner, semi):
                out.append((node, used + 1))
    else:
        if len(R) == 1:
            out.append((Leaf(ROUND, R[0]), 0))
        elif len(R) >= 2 and (budget is None or budget >= 1):
            inner = None if budget is None else budget - 1
            for node, used in _round_vertex(R, inner, semi):
                out.append((node, used + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _round_vertex(R: tuple, budget, semi: bool) -> tuple:
    out = []
    for blocks in set_partitions(R):
        if len(blocks) < 2:
            continue
        opts = [_child_options(ROUND, 0, 0, tuple(sorted(b)), budget, semi) for b in blocks]
        for kids, used in _combine(opts, budget):
            out.append((make_node(ROUND, (), kids), used))
    return tuple(out)


@lru_cache(maxsize=None)
def _plain_vertex(lo: int, hi: int, R: tuple, budget, semi: bool) -> tuple:
    n = hi - lo
    out = []
    for R_round in _subsets(R):
        R_plain = tuple(x for x in R if x not in R_round)
        for blocks in set_partitions(R_round):
            rd = len(blocks)
            round_opts = [_child_options(ROUND, 0, 0, tuple(sorted(b)), budget, semi) for b in blocks]
            for m in range(0, n + len(R_plain) + 1):
                pl = 1 + m
                if pl + 2 * rd < (2 if semi else 3):
                    continue
                if m == 0 and R_plain:
                    continue
                for sizes in _compositions(n, m):
                    for assign in itertools.product(range(m), repeat=len(R_plain)):
                        subsets = [[] for _ in range(m)]
                        for x, j in zip(R_plain, assign):
                            subsets[j].append(x)
                        if any(sizes[j] == 0 and not subsets[j] for j in range(m)):
                            continue
                        plain_opts = []
                        start = lo
                        for j in range(m):
                            plain_opts.append(_child_options(
                                PLAIN, start, start + sizes[j], tuple(subsets[j]), budget, semi))
                            start += sizes[j]
                        for kids, used in _combine(plain_opts + round_opts, budget):
                            node = make_node(PLAIN, kids[:m], kids[m:])
                            out.append((node, used))
    return tuple(out)


def enumerate_plain_round(k: int, q: int, stability: str = "stable",
                          max_internal_edges: int | None = None) -> list:
    """All trees with k plain and q round leaves, sorted by canonical form.

    Semistable trees allow plain vertices of valency two, so chains of them
    make the family infinite; ``max_internal_edges`` is then required.
    """
    if stability not in ("stable", "semistable"):
        raise ValueError(f"unknown stability {stability!r}")
    semi = stability == "semistable"
    if k < 0 or q < 0:
        raise DomainTooSmall("leaf counts must be nonnegative")
    if k + 1 + 2 * q < (2 if semi else 3):
        raise DomainTooSmall(f"k+1+2q = {k + 1 + 2 * q} is too small for {stability} trees")
    if semi and max_internal_edges is None:
        raise ValueError("semistable enumeration needs max_internal_edges")
    R = tuple(range(1, q + 1))
    budget = max_internal_edges
    trees = {}
    for node, _ in _plain_vertex(1, k + 1, R, budget, semi):
        T = RibbonTree(node, k, q)
        trees[T.canonical] = T
    return [trees[c] for c in sorted(trees)]


def enumerate_stable(k: int) -> list:
    """Stable planted ribbon trees with k leaves and all edges plain."""
    if k < 2:
        raise DomainTooSmall(f"need k >= 2, got {k}")
    return enumerate_plain_round(k, 0, "stable")


def strata(trees) -> dict:
    """Group trees by codimension."""
    out: dict[int, list] = {}
    for T in trees:
        out.setdefault(T.codim(), []).append(T)
    return out


# ---------------------------------------------------------------------------
# boundary facets of the bulk structure equation


@dataclass(frozen=True, order=True)
class BoundaryFacet:
    """Inner disk takes plain inputs b+1..b+c and the round inputs in ``split``."""

    a: int
    b: int
    c: int
    split: tuple


def boundary_facets(k: int, q: int) -> list:
    """Codimension-one plain breakings of a disk with k plain, q round inputs.

    Only breakings whose inner disk keeps at least one plain input (c >= 1)
    are listed; those are the terms of the deformed structure equation.
    """
    if k < 1 or q < 0:
        raise DomainTooSmall("need k >= 1 and q >= 0")
    out = []
    labels = tuple(range(1, q + 1))
    for a in range(q + 1):
        for split in itertools.combinations(labels, a):
            for c in range(1, k + 1):
                for b in range(0, k - c + 1):
                    out.append(BoundaryFacet(a, b, c, split))
    return sorted(out)


def facet_multiplicities(k: int, q: int) -> dict:
    mult: dict[tuple, int] = {}
    for f in boundary_facets(k, q):
        key = (f.a, f.b, f.c)
        mult[key] = mult.get(key, 0) + 1
    return mult


def expected_multiplicity(q: int, a: int) -> int:
    return comb(q, a)


def facet_tree(k: int, q: int, f: BoundaryFacet) -> RibbonTree:
    """The one-internal-edge semistable tree realizing a facet."""
    inner_plain = [Leaf(PLAIN, i) for i in range(f.b + 1, f.b + f.c + 1)]
    inner = make_node(PLAIN, inner_plain, [Leaf(ROUND, r) for r in f.split])
    outer_plain = ([Leaf(PLAIN, i) for i in range(1, f.b + 1)] + [inner]
                   + [Leaf(PLAIN, i) for i in range(f.b + f.c + 1, k + 1)])
    outer_round = [Leaf(ROUND, r) for r in range(1, q + 1) if r not in f.split]
    return RibbonTree(make_node(PLAIN, outer_plain, outer_round), k, q)


def facet_of_tree(T: RibbonTree):
    """Inverse of facet_tree on one-plain-internal-edge trees (None otherwise)."""
    edges = T.internal_edges()
    if len(edges) != 1 or edges[0][1] != PLAIN:
        return None
    inner = T.node_at(edges[0][0])
    leaves = [c.label for c in inner.plain if isinstance(c, Leaf)]
    if len(leaves) != len(inner.plain) or not leaves:
        return None
    split = tuple(sorted(c.label for c in inner.round))
    return BoundaryFacet(len(split), leaves[0] - 1, len(leaves), split)
