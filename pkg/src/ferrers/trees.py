"""Spanning-tree counts, the degree-product invariant, and the exact reduction check."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import prod

from .errors import (
    CapExceeded,
    DisconnectedGraph,
    IdentityViolation,
    IsolatedVertex,
)
from .graphs import BipartiteGraph, degrees, effective_cap, is_connected
from .linalg import RationalMatrix, bareiss_det, matrix_M

SpanningTree = frozenset  # of (x index, y index) edge pairs


def _laplacian_minor(g: BipartiteGraph, drop: int) -> list[list[int]]:
    # Integer Laplacian rows with row and column `drop` removed.
    m, n = g.m, g.n
    d = m + n
    dd = degrees(g)
    diag = dd.a + dd.b
    adj = [[0] * n for _ in range(m)]
    for j, t in enumerate(g.nbrs):
        tt = t
        while tt:
            low = tt & -tt
            adj[low.bit_length() - 1][j] = 1
            tt ^= low
    rows = []
    for r in range(d):
        if r == drop:
            continue
        row = []
        for c in range(d):
            if c == drop:
                continue
            if r == c:
                row.append(diag[r])
            elif r < m <= c:
                row.append(-adj[r][c - m])
            elif c < m <= r:
                row.append(-adj[c][r - m])
            else:
                row.append(0)
        rows.append(row)
    return rows


def tau_matrix_tree(g: BipartiteGraph, *, check_all_deletions: bool = False) -> int:
    """Number of spanning trees, as the Laplacian minor determinant at vertex 0.

    The count is an exact nonnegative integer; a negative determinant would
    mean a bug and is a hard error.  With check_all_deletions the minor is
    recomputed for every deletion index and all m+n values must agree.
    Disconnected graphs give 0, not an error.
    """
    t = bareiss_det(_laplacian_minor(g, 0))
    if t < 0:
        raise IdentityViolation(f"negative Laplacian minor determinant {t}")
    if check_all_deletions:
        for drop in range(1, g.m + g.n):
            other = bareiss_det(_laplacian_minor(g, drop))
            if other != t:
                raise IdentityViolation(
                    f"minor determinant depends on the deleted vertex: "
                    f"{t} at 0 vs {other} at {drop}"
                )
    return t


def tau_brute_force(
    g: BipartiteGraph, *, cap: int | None = None
) -> tuple[int, list[SpanningTree]]:
    """Enumerate spanning trees directly, as a determinant-free oracle.

    Tries every (m+n-1)-subset of the edge set; a subset is a spanning tree
    exactly when the union-find pass finds no cycle, because an acyclic
    graph with m+n-1 edges on m+n vertices is already spanning.  Refuses
    edge sets above the cap.
    """
    limit = effective_cap(cap)
    edge_list = g.edges()
    if len(edge_list) > limit:
        raise CapExceeded(f"|E| = {len(edge_list)} exceeds the brute-force cap {limit}")
    v = g.m + g.n
    need = v - 1
    trees: list[SpanningTree] = []
    if len(edge_list) >= need:
        pairs = [(i, g.m + j) for (i, j) in edge_list]
        idx_range = range(len(edge_list))
        base = list(range(v))
        for combo in combinations(idx_range, need):
            parent = base[:]
            ok = True
            for idx in combo:
                u, w = pairs[idx]
                while parent[u] != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                while parent[w] != w:
                    parent[w] = parent[parent[w]]
                    w = parent[w]
                if u == w:
                    ok = False
                    break
                parent[u] = w
            if ok:
                trees.append(frozenset(edge_list[idx] for idx in combo))
    return len(trees), trees


def ferrers_invariant(g: BipartiteGraph) -> Fraction:
    """Degree product over m*n, the exact value that bounds the tree count."""
    dd = degrees(g)
    if 0 in dd.a or 0 in dd.b:
        raise IsolatedVertex("degree-zero vertex, the degree product is degenerate")
    return Fraction(prod(dd.a) * prod(dd.b), g.m * g.n)


def check_reduction(
    g: BipartiteGraph,
    *,
    tau: int | None = None,
    M: RationalMatrix | None = None,
) -> bool:
    """Exact identity tau * m * n = (prod of y-degrees) * det M.

    tau and M may be passed in when already computed; both sides are compared
    as exact rationals and a mismatch raises with the two values.
    """
    if not is_connected(g):
        raise DisconnectedGraph("the reduction identity applies to connected graphs")
    if tau is None:
        tau = tau_matrix_tree(g)
    if M is None:
        M = matrix_M(g)
    left = Fraction(tau * g.m * g.n)
    right = prod(degrees(g).b) * M.det_exact()
    if left != right:
        raise IdentityViolation(f"tau*m*n = {left} but (prod b)*det M = {right}")
    return True


def bozkurt_bound(g: BipartiteGraph) -> tuple[Fraction, bool]:
    """Edge-count bound prod(deg)/|E| and whether the tree count sits below it.

    The bound is never smaller than the degree product over m*n because
    |E| <= m*n; that comparison is re-checked here since it costs nothing.
    """
    e = g.edge_count
    if e == 0:
        raise IsolatedVertex("a graph with no edges has no degree product bound")
    dd = degrees(g)
    bound = Fraction(prod(dd.a) * prod(dd.b), e)
    if 0 not in dd.a and bound < ferrers_invariant(g):
        raise IdentityViolation(f"edge-count bound {bound} fell below the degree-product bound")
    return bound, tau_matrix_tree(g) <= bound
