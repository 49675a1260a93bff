"""Instance constructions: graphic matroids, cliques, uniform matroids,
projective geometries, a small zoo of named high-girth graphs, and seeded
random matroids for property suites.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .gf import FieldSpec, field_from_order
from .gfmatrix import GFMatrix
from .matroid import RepMatroid


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices 0..n-1; loops and parallels allowed."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) outside vertex range [0,{self.n})")


def _edge_labels(edges: Sequence[tuple[int, int]]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for u, v in edges:
        a, b = min(u, v), max(u, v)
        base = f"{a}-{b}"
        k = seen.get(base, 0)
        seen[base] = k + 1
        out.append(base if k == 0 else f"{base}#{k + 1}")
    return out


def graphic(g: Graph, f: FieldSpec, labels: Optional[Sequence[str]] = None) -> RepMatroid:
    """Signed incidence matrix: edge (u,v) with u < v gets +1 at u and -1 at v.

    Over GF(2) the signs collapse; loops become zero columns.  Edge labels
    default to "u-v" (with "#k" suffixes for parallel copies).
    """
    if labels is None:
        labels = _edge_labels(g.edges)
    cols = []
    neg_one = f.neg(1)
    for u, v in g.edges:
        col = [0] * g.n
        if u != v:
            a, b = min(u, v), max(u, v)
            col[a] = 1
            col[b] = neg_one
        cols.append(tuple(col))
    return RepMatroid(f, GFMatrix.from_cols(f, cols, g.n), labels)


def complete_graph(t: int) -> Graph:
    return Graph(t, tuple((u, v) for u in range(t) for v in range(u + 1, t)))


def clique(t: int, f: FieldSpec, dualize: bool = False) -> RepMatroid:
    """M(K_t), or its dual when `dualize` is set."""
    if t < 2:
        raise ValueError(f"clique needs t >= 2, got {t}")
    m = graphic(complete_graph(t), f)
    if dualize:
        from .matroid import dual

        return dual(m)
    return m


def uniform(t: int, n: int, f: FieldSpec) -> RepMatroid:
    """U_{t,n} via moments of distinct scalars, plus a point at infinity.

    Representability needs q >= n - 1 for t >= 2; an unrepresentable request
    is an error rather than a silent field change.
    """
    if not 0 <= t <= n:
        raise ValueError(f"uniform needs 0 <= t <= n, got t={t}, n={n}")
    labels = [f"e{j}" for j in range(n)]
    if t == 0:
        return RepMatroid(f, GFMatrix.zeros(f, 0, n), labels)
    if t == 1:
        return RepMatroid(f, GFMatrix.from_cols(f, [(1,)] * n, 1), labels)
    if f.q < n - 1:
        raise ValueError(
            f"U_{{{t},{n}}} needs q >= {n - 1}, got GF({f.q})"
        )
    cols = []
    for x in range(min(n, f.q)):
        cols.append(tuple(f.pow(x, i) for i in range(t)))
    if len(cols) < n:  # n == q + 1: one extra point at infinity
        cols.append(tuple(0 if i < t - 1 else 1 for i in range(t)))
    return RepMatroid(f, GFMatrix.from_cols(f, cols, t), labels)


def projective_geometry(r: int, f: FieldSpec) -> RepMatroid:
    """PG(r-1, q): one column per projective point of GF(q)^r.

    Columns are the lexicographically least representatives (first nonzero
    coordinate scaled to 1), in lexicographic order.
    """
    if r < 1:
        raise ValueError(f"projective geometry needs rank >= 1, got {r}")
    if f.q**r > 10**6:
        raise ValueError(f"q^r = {f.q ** r} exceeds the 10^6 enumeration guard")
    cols = []
    for vec in itertools.product(range(f.q), repeat=r):
        if not any(vec):
            continue
        lead = next(x for x in vec if x)
        if lead != 1:
            continue  # not the canonical representative of its class
        cols.append(vec)
    labels = [f"e{j}" for j in range(len(cols))]
    return RepMatroid(f, GFMatrix.from_cols(f, cols, r), labels)


# -- named graphs ---------------------------------------------------------------


def _lcf(n: int, jumps: Sequence[int], reps: int) -> Graph:
    edges = {frozenset((i, (i + 1) % n)) for i in range(n)}
    seq = list(jumps) * reps
    for i, d in enumerate(seq):
        edges.add(frozenset((i, (i + d) % n)))
    return Graph(n, tuple(sorted((min(e), max(e)) for e in edges)))


def _petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))          # outer cycle
        edges.append((5 + i, 5 + (i + 2) % 5))  # inner pentagram
        edges.append((i, 5 + i))                # spokes
    return Graph(10, tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))


def _cube() -> Graph:
    edges = []
    for u in range(8):
        for b in range(3):
            v = u ^ (1 << b)
            if u < v:
                edges.append((u, v))
    return Graph(8, tuple(sorted(edges)))


# id -> (factory, graph girth, edge connectivity)
_NAMED_GRAPHS = {
    "k3": (lambda: complete_graph(3), 3, 2),
    "k4": (lambda: complete_graph(4), 3, 3),
    "k5": (lambda: complete_graph(5), 3, 4),
    "petersen": (_petersen, 5, 3),
    "heawood": (lambda: _lcf(14, [5, -5], 7), 6, 3),
    "mcgee": (lambda: _lcf(24, [12, 7, -7], 8), 7, 3),
    "cube": (_cube, 4, 3),
}


def named_graph(graph_id: str) -> Graph:
    try:
        factory, _, _ = _NAMED_GRAPHS[graph_id]
    except KeyError:
        raise ValueError(
            f"unknown graph id {graph_id!r}; known: {sorted(_NAMED_GRAPHS)}"
        ) from None
    return factory()


def named_graph_info(graph_id: str) -> tuple[int, int]:
    """(girth, edge connectivity) metadata for a named graph."""
    _, g, c = _NAMED_GRAPHS[graph_id]
    return g, c


def random_matroid(rank: int, elements: int, f: FieldSpec, seed: int,
                   max_retries: int = 64) -> RepMatroid:
    """Seeded uniform random matrix, redrawn until it has the requested rank."""
    if rank > elements:
        raise ValueError(f"rank {rank} exceeds element count {elements}")
    rng = random.Random(seed)
    labels = [f"e{j}" for j in range(elements)]
    for _ in range(max_retries):
        rows = [[rng.randrange(f.q) for _ in range(elements)] for _ in range(rank)]
        m = RepMatroid(f, GFMatrix(f, rows) if rank else GFMatrix.zeros(f, 0, elements), labels)
        if m.rank == rank:
            return m
    raise ValueError(
        f"no rank-{rank} matrix over GF({f.q}) with {elements} columns after {max_retries} draws"
    )


# -- graph text format and instance ids --------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if head[0] != "graph":
        raise ValueError(f"line 1: expected `graph` header, got {head[0]!r}")
    fields = dict(tok.split("=") for tok in head[1:] if "=" in tok)
    try:
        n = int(fields["n"])
        m = int(fields["m"])
    except (KeyError, ValueError):
        raise ValueError("line 1: header needs integer n= and m=") from None
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {i}: expected `u v`")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, tuple(edges))


def format_graph(g: Graph) -> str:
    out = [f"graph n={g.n} m={len(g.edges)}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


_MK_RE = re.compile(r"^mk(\d+)(_dual)?$")
_PG_RE = re.compile(r"^pg_(\d+)_(\d+)$")
_U_RE = re.compile(r"^u_(\d+)_(\d+)$")


def from_id(instance_id: str, default_field: Optional[FieldSpec] = None) -> RepMatroid:
    """Resolve a generator id like mk4, mk5_dual, pg_2_2, u_2_4@gf5, petersen@gf2."""
    base, sep, suffix = instance_id.partition("@gf")
    field = None
    if sep:
        try:
            field = field_from_order(int(suffix))
        except ValueError as exc:
            raise ValueError(f"bad field suffix in {instance_id!r}: {exc}") from None
    field = field or default_field

    mk = _MK_RE.match(base)
    if mk:
        return clique(int(mk.group(1)), field or field_from_order(2),
                      dualize=mk.group(2) is not None)
    pg = _PG_RE.match(base)
    if pg:
        dim, q = int(pg.group(1)), int(pg.group(2))
        f = field_from_order(q)
        if field is not None and field.q != f.q:
            raise ValueError(f"{instance_id!r}: field suffix conflicts with pg order {q}")
        return projective_geometry(dim + 1, f)
    um = _U_RE.match(base)
    if um:
        if field is None:
            raise ValueError(f"{instance_id!r}: uniform matroids need a field (use @gf<q>)")
        return uniform(int(um.group(1)), int(um.group(2)), field)
    if base in _NAMED_GRAPHS:
        return graphic(named_graph(base), field or field_from_order(2))
    raise ValueError(f"unknown generator id {instance_id!r}")
