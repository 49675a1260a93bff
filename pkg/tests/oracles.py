"""Independent brute-force oracles used to derive expected test values.

These deliberately avoid the library's elimination kernels: independence is
checked by enumerating coefficient combinations, field arithmetic by
schoolbook polynomial work on digit lists, and graph facts by BFS or
networkx.  Keep them slow and obvious.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product

import networkx as nx


# -- linear algebra over GF(q), by exhaustive coefficient search -----------------


def brute_independent(q, add, mul, cols) -> bool:
    """No nonzero coefficient vector combines the columns to zero."""
    n = len(cols)
    rows = len(cols[0]) if cols else 0
    for coeffs in product(range(q), repeat=n):
        if not any(coeffs):
            continue
        acc = [0] * rows
        for c, col in zip(coeffs, cols):
            for i, x in enumerate(col):
                acc[i] = add(acc[i], mul(c, x))
        if not any(acc):
            return False
    return True


def brute_rank(q, add, mul, cols) -> int:
    for s in range(len(cols), 0, -1):
        for combo in combinations(cols, s):
            if brute_independent(q, add, mul, combo):
                return s
    return 0


# -- schoolbook polynomial arithmetic over GF(p) ----------------------------------


def digits_of(code: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def code_of(digits, p: int) -> int:
    out = 0
    for d in reversed(list(digits)):
        out = out * p + d
    return out


def poly_add_oracle(p: int, k: int, a: int, b: int) -> int:
    da, db = digits_of(a, p, k), digits_of(b, p, k)
    return code_of([(x + y) % p for x, y in zip(da, db)], p)


def poly_mul_oracle(p: int, k: int, modulus, a: int, b: int) -> int:
    """Schoolbook product then long division by the monic modulus."""
    da, db = digits_of(a, p, k), digits_of(b, p, k)
    prod = [0] * (2 * k)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(modulus)
    for top in range(len(prod) - 1, k - 1, -1):
        lead = prod[top]
        if lead:
            shift = top - k
            for i, mi in enumerate(mod):
                prod[shift + i] = (prod[shift + i] - lead * mi) % p
    return code_of(prod[:k], p)


# -- graph oracles -----------------------------------------------------------------


def graph_of_edges(n: int, edges) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def graph_girth_oracle(n: int, edges) -> float:
    """Shortest cycle in a multigraph by per-edge BFS; inf for forests."""
    for u, v in edges:
        if u == v:
            return 1
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            return 2
        seen.add(key)
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = float("inf")
    for u, v in seen:
        # shortest u-v path avoiding the edge itself
        dist = {u: 0}
        dq = deque([u])
        while dq:
            x = dq.popleft()
            for y in adj[x]:
                if (min(x, y), max(x, y)) == (u, v):
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    dq.append(y)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def edge_connectivity_oracle(n: int, edges) -> int:
    return nx.edge_connectivity(graph_of_edges(n, edges))


def components_oracle(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(x) for x in range(n)})


def edge_label_pair(label: str) -> tuple[int, int]:
    """Invert the generator's edge labeling 'u-v' or 'u-v#k'."""
    base = label.split("#")[0]
    u, v = base.split("-")
    return int(u), int(v)


def is_graph_cycle(labels) -> bool:
    """The edge set forms a single simple cycle (every vertex degree 2, connected)."""
    edges = [edge_label_pair(l) for l in labels]
    if any(u == v for u, v in edges):
        return len(edges) == 1
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if len(edges) == 2:
        return len(deg) == 2 and all(d == 2 for d in deg.values())
    if any(d != 2 for d in deg.values()):
        return False
    g = nx.MultiGraph(edges)
    return nx.is_connected(g)


# -- projective classes --------------------------------------------------------------


def projective_class_count_oracle(q: int, mul, r: int) -> int:
    """Count scalar classes of nonzero vectors, normalizing by the class minimum."""
    reps = set()
    for vec in product(range(q), repeat=r):
        if not any(vec):
            continue
        members = []
        for c in range(1, q):
            members.append(tuple(mul(c, x) for x in vec))
        reps.add(min(members))
    return len(reps)
