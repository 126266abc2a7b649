"""Desk-scale verification campaigns for the tree-count bound.

verify_graph checks a single connected graph with exact arithmetic;
verify_pairs and verify_range run exhaustive labeled enumerations, abort on
the first violation (or tally them all), and can split mask ranges across
worker processes.  A violation here would be a counterexample, so the
offending graph is always serialized into the error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from multiprocessing import Pool
from typing import Callable, Iterable, Sequence

from .errors import (
    CapExceeded,
    DisconnectedGraph,
    IdentityViolation,
    TheoremViolation,
)
from .graphs import (
    BipartiteGraph,
    PartitionSpec,
    _mask_connected,
    degrees,
    effective_cap,
    ferrers_from_partition,
    graph_from_mask,
    is_connected,
    is_ferrers,
    write_graph,
)
from .linalg import RationalMatrix, matrix_M, rat_str
from .spectral import majorization_report
from .trees import check_reduction, tau_brute_force, tau_matrix_tree


@dataclass(frozen=True)
class VerificationRecord:
    """Everything checked for one graph; the verdicts use exact integers only."""

    graph: BipartiteGraph
    tau: int
    F: Fraction
    inequality_ok: bool
    equality: bool
    ferrers: bool
    reduction_ok: bool
    majorizes: bool


def record_dict(rec: VerificationRecord) -> dict:
    """JSON-ready form of a record; the graph rides along in its text format."""
    return {
        "graph": write_graph(rec.graph),
        "tau": rec.tau,
        "F": rat_str(rec.F),
        "inequality_ok": rec.inequality_ok,
        "equality": rec.equality,
        "ferrers": rec.ferrers,
        "reduction_ok": rec.reduction_ok,
        "majorizes": rec.majorizes,
    }


def verify_graph(
    g: BipartiteGraph, tol: float = 1e-9, *, fault_inject: bool = False
) -> VerificationRecord:
    """Verify one connected graph: bound, equality vs staircase shape, cross-checks.

    The inequality and equality verdicts compare tau*m*n against the degree
    product as exact integers.  The reduction identity and the majorization
    certificate run as well and land in their boolean fields.  fault_inject
    corrupts tau by one after the cross-checks, which is how campaign failure
    paths get exercised.
    """
    if not is_connected(g):
        raise DisconnectedGraph("verification needs a connected graph")
    tau = tau_matrix_tree(g)
    M = matrix_M(g)
    try:
        reduction_ok = check_reduction(g, tau=tau, M=M)
    except IdentityViolation:
        reduction_ok = False
    try:
        majorizes = majorization_report(g, tol, M=M).majorizes
    except IdentityViolation:
        majorizes = False
    if fault_inject:
        tau += 1
    dd = degrees(g)
    degree_product = prod(dd.a) * prod(dd.b)
    scaled = tau * g.m * g.n
    return VerificationRecord(
        graph=g,
        tau=tau,
        F=Fraction(degree_product, g.m * g.n),
        inequality_ok=scaled <= degree_product,
        equality=scaled == degree_product,
        ferrers=is_ferrers(g),
        reduction_ok=reduction_ok,
        majorizes=majorizes,
    )


@dataclass
class CampaignSummary:
    """Aggregate of one exhaustive campaign.

    violations stays 0 on the fail-fast path (the campaign aborts instead);
    in tally mode failure_counts and failure_examples break the number down
    by category.  oracle_checked counts graphs that also went through the
    brute-force and deletion-independence cross-checks.
    """

    dims: tuple[int, int]
    graphs_checked: int
    violations: int
    equality_cases: int
    ferrers_count: int
    wall_time: float
    oracle_checked: int = 0
    failure_counts: dict[str, int] = field(default_factory=dict)
    failure_examples: dict[str, str] = field(default_factory=dict)


def summary_dict(s: CampaignSummary) -> dict:
    return {
        "dims": list(s.dims),
        "graphs_checked": s.graphs_checked,
        "violations": s.violations,
        "equality_cases": s.equality_cases,
        "ferrers_count": s.ferrers_count,
        "wall_time": s.wall_time,
    }


def _examine(
    g: BipartiteGraph,
    tol: float,
    oracle_edge_cap: int | None,
    fault_inject: bool,
) -> tuple[VerificationRecord, list[str], bool]:
    rec = verify_graph(g, tol, fault_inject=fault_inject)
    bad = []
    if not rec.inequality_ok:
        bad.append("inequality")
    if rec.equality != rec.ferrers:
        bad.append("equality")
    if not rec.reduction_ok:
        bad.append("reduction")
    if not rec.majorizes:
        bad.append("majorization")
    oracled = False
    if oracle_edge_cap is not None and g.edge_count <= oracle_edge_cap:
        oracled = True
        try:
            tau_matrix_tree(g, check_all_deletions=True)
        except IdentityViolation:
            bad.append("deletion")
        brute, _ = tau_brute_force(g, cap=oracle_edge_cap)
        if brute != rec.tau:
            bad.append("oracle")
    return rec, bad, oracled


def _run_chunk(task) -> dict:
    (m, n, lo, hi, tol, oracle_edge_cap, fault_inject, fail_fast, collect) = task
    checked = equality = ferrers = oracled = 0
    failures: dict[str, int] = {}
    examples: dict[str, str] = {}
    records: list[dict] | None = [] if collect else None
    for mask in range(lo, hi):
        if not _mask_connected(m, n, mask):
            continue
        g = graph_from_mask(m, n, mask)
        rec, bad, used_oracle = _examine(g, tol, oracle_edge_cap, fault_inject)
        checked += 1
        equality += rec.equality
        ferrers += rec.ferrers
        oracled += used_oracle
        if bad:
            dump = (
                f"{', '.join(bad)} failed for tau={rec.tau}, F={rat_str(rec.F)}:\n"
                f"{write_graph(g)}"
            )
            if fail_fast:
                raise TheoremViolation(dump)
            for category in bad:
                failures[category] = failures.get(category, 0) + 1
                examples.setdefault(category, dump)
        if records is not None:
            records.append(record_dict(rec))
    return {
        "checked": checked,
        "equality": equality,
        "ferrers": ferrers,
        "oracled": oracled,
        "failures": failures,
        "examples": examples,
        "records": records,
    }


def _chunk_tasks(
    pairs: Sequence[tuple[int, int]],
    tol: float,
    oracle_edge_cap: int | None,
    fault_inject: bool,
    fail_fast: bool,
    collect: bool,
    chunk_bits: int = 13,
) -> list[tuple]:
    tasks = []
    step = 1 << chunk_bits
    for m, n in pairs:
        total = 1 << (m * n)
        for lo in range(0, total, step):
            hi = min(lo + step, total)
            tasks.append((m, n, lo, hi, tol, oracle_edge_cap, fault_inject, fail_fast, collect))
    return tasks


def verify_pairs(
    pairs: Iterable[tuple[int, int]],
    *,
    cap: int | None = None,
    tol: float = 1e-9,
    workers: int | None = None,
    oracle_edge_cap: int | None = None,
    fault_inject: bool = False,
    fail_fast: bool = True,
    emit: Callable[[dict], None] | None = None,
) -> CampaignSummary:
    """Exhaustively verify every connected labeled graph for the given part sizes.

    Each (m, n) pair must respect the enumeration cap.  With fail_fast the
    first violating graph aborts the whole campaign inside a TheoremViolation;
    otherwise violations are tallied per category.  oracle_edge_cap turns on
    the brute-force and deletion-independence cross-checks for graphs with at
    most that many edges.  emit receives one JSON-ready record per graph, and
    workers > 1 splits the mask ranges across processes.
    """
    pair_list = sorted(set(pairs))
    if not pair_list:
        raise ValueError("no (m, n) pairs to verify")
    limit = effective_cap(cap)
    for m, n in pair_list:
        if m < 1 or n < 1:
            raise ValueError(f"bad pair ({m}, {n})")
        if m * n > limit:
            raise CapExceeded(f"pair ({m}, {n}) exceeds the enumeration cap {limit}")
    start = time.perf_counter()
    tasks = _chunk_tasks(pair_list, tol, oracle_edge_cap, fault_inject, fail_fast, emit is not None)
    checked = equality = ferrers = oracled = violations = 0
    failure_counts: dict[str, int] = {}
    failure_examples: dict[str, str] = {}

    def absorb(chunk: dict) -> None:
        nonlocal checked, equality, ferrers, oracled, violations
        checked += chunk["checked"]
        equality += chunk["equality"]
        ferrers += chunk["ferrers"]
        oracled += chunk["oracled"]
        for category, count in chunk["failures"].items():
            violations += count
            failure_counts[category] = failure_counts.get(category, 0) + count
            failure_examples.setdefault(category, chunk["examples"][category])
        if emit is not None and chunk["records"] is not None:
            for rec in chunk["records"]:
                emit(rec)

    if workers is not None and workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            for chunk in pool.imap(_run_chunk, tasks):
                absorb(chunk)
    else:
        for task in tasks:
            absorb(_run_chunk(task))
    if fail_fast and equality != ferrers:
        raise TheoremViolation(
            f"equality cases ({equality}) and staircase graphs ({ferrers}) diverge"
        )
    max_m = max(m for m, _ in pair_list)
    max_n = max(n for _, n in pair_list)
    return CampaignSummary(
        dims=(max_m, max_n),
        graphs_checked=checked,
        violations=violations,
        equality_cases=equality,
        ferrers_count=ferrers,
        wall_time=time.perf_counter() - start,
        oracle_checked=oracled,
        failure_counts=failure_counts,
        failure_examples=failure_examples,
    )


def verify_range(
    m_max: int,
    n_max: int,
    *,
    cap: int | None = None,
    tol: float = 1e-9,
    workers: int | None = None,
    fault_inject: bool = False,
    emit: Callable[[dict], None] | None = None,
) -> CampaignSummary:
    """Verify every connected labeled graph with 1 <= m <= m_max, 1 <= n <= n_max.

    Fail-fast: the first violation aborts with the offending graph inside the
    exception, so a returned summary always has violations == 0 and equal
    equality and staircase counts.
    """
    if m_max < 1 or n_max < 1:
        raise ValueError(f"bad range ({m_max}, {n_max})")
    pairs = [(m, n) for m in range(1, m_max + 1) for n in range(1, n_max + 1)]
    summary = verify_pairs(
        pairs,
        cap=cap,
        tol=tol,
        workers=workers,
        fault_inject=fault_inject,
        fail_fast=True,
        emit=emit,
    )
    summary.dims = (m_max, n_max)
    return summary


def corollary_check(
    g: BipartiteGraph,
    z: Sequence[Fraction | int],
    *,
    cap: int | None = None,
) -> bool:
    """Weighted form of the bound, checked exactly at one nonnegative weight vector.

    With weights z indexed by X then Y, the generating sum over spanning
    trees of prod_v z_v^(deg_T(v) - 1), times (sum over X)(sum over Y), must
    not exceed prod_v (sum of z over the neighbors of v).  The tree list
    comes from the brute-force enumerator, so the edge cap applies.  At
    z = 1 this is exactly the tau*m*n <= degree-product comparison.
    """
    weights = [Fraction(x) for x in z]
    if len(weights) != g.m + g.n:
        raise ValueError(f"expected {g.m + g.n} weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    _, trees = tau_brute_force(g, cap=cap)
    xw = weights[: g.m]
    yw = weights[g.m :]
    tree_sum = Fraction(0)
    for tree in trees:
        deg = [0] * (g.m + g.n)
        for i, j in tree:
            deg[i] += 1
            deg[g.m + j] += 1
        term = Fraction(1)
        for w, d in zip(weights, deg):
            term *= w ** (d - 1)
        tree_sum += term
    lhs = tree_sum * sum(xw) * sum(yw)
    rhs = Fraction(1)
    for i in range(g.m):
        rhs *= sum(yw[j] for j, t in enumerate(g.nbrs) if (t >> i) & 1)
    for t in g.nbrs:
        rhs *= sum(xw[i] for i in range(g.m) if (t >> i) & 1)
    if lhs > rhs:
        raise TheoremViolation(
            f"weighted bound fails: {lhs} > {rhs} at z = "
            f"{[rat_str(w) for w in weights]} for:\n{write_graph(g)}"
        )
    return True


def equality_flag_diagonalization(p: PartitionSpec) -> bool:
    """Exact diagonalization of M for a staircase graph in its nested-flag basis.

    The flag adapted to nested neighborhoods {x_0..x_(t-1)} is spanned by the
    all-ones vector and v_r = (1, ..., 1, -(r-1), 0, ..., 0) with r-1 leading
    ones.  In that basis M must be diagonal with r-th entry equal to the
    number of columns of height at least r, which is the r-th X-degree; the
    determinant must therefore be the exact product of the X-degrees.
    """
    g = ferrers_from_partition(p)
    m = g.m
    M = matrix_M(g)
    a = degrees(g).a
    counts = [sum(1 for h in p.t if h >= r) for r in range(1, m + 1)]
    if list(a) != counts:
        raise IdentityViolation(
            f"degree readback {list(a)} disagrees with column-height counts {counts}"
        )
    basis: list[list[Fraction]] = [[Fraction(1)] * m]
    for r in range(2, m + 1):
        basis.append(
            [Fraction(1)] * (r - 1) + [Fraction(1 - r)] + [Fraction(0)] * (m - r)
        )
    images = [M.mul_vec(v) for v in basis]
    for r in range(m):
        for s in range(m):
            value = sum((x * y for x, y in zip(basis[r], images[s])), Fraction(0))
            if r == s:
                norm2 = sum((x * x for x in basis[r]), Fraction(0))
                expected = counts[r] * norm2
            else:
                expected = Fraction(0)
            if value != expected:
                raise IdentityViolation(
                    f"flag basis entry ({r},{s}) is {value}, expected {expected} "
                    f"for partition {p.t}"
                )
    det = M.det_exact()
    expected_det = Fraction(prod(a))
    if det != expected_det:
        raise IdentityViolation(f"det M = {det} but the degree product is {expected_det}")
    return True
