"""Exhaustive enumeration of fusion rings within a coefficient bound.

Unit and duality rows are fixed up front, Frobenius reciprocity merges
tensor entries into orbit variables, and associativity is imposed as a
system of quadratic equations over the remaining variables.  A shallow
prefix of the variables is searched depth-first with the equations that
close early; the remaining block of completions is evaluated vectorized.
Survivors are validated, filtered, and deduplicated by canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .rings import (
    FusionRing,
    axiom_violations,
    invertibles,
    relabel,
    universal_grading,
)

MAX_SEARCH_RANK = 5
DEFAULT_NODE_BUDGET = 10**9
_TAIL_CAP = 1 << 20


class BudgetExceeded(RuntimeError):
    """The node budget ran out; no partial results are returned."""


@dataclass(frozen=True)
class SearchSpec:
    rank: int
    max_coeff: int
    self_dual: bool = False
    nontrivial_grading: bool = False
    non_pointed: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET


@dataclass
class SearchResult:
    rings: list[FusionRing]
    nodes: int
    raw_count: int
    bound: int


def _involution_patterns(rank: int):
    """All duality involutions on {0..rank-1} fixing 0, identity first."""

    def rec(points):
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for sub in rec(rest):
            yield ((first, first),) + sub
        for idx, partner in enumerate(rest):
            for sub in rec(rest[:idx] + rest[idx + 1 :]):
                yield ((first, partner), (partner, first)) + sub

    patterns = set()
    for pairs in rec(tuple(range(1, rank))):
        dual = list(range(rank))
        for a, b in pairs:
            dual[a] = b
        patterns.add(tuple(dual))
    return sorted(patterns)


def _orbits(rank: int, dual):
    """Orbit classes of tensor positions under the reciprocity symmetries."""
    var_of: dict[tuple[int, int, int], int] = {}
    orbits: list[tuple] = []
    for trip in itertools.product(range(1, rank), repeat=3):
        if trip in var_of:
            continue
        orbit = set()
        stack = [trip]
        while stack:
            t = stack.pop()
            if t in orbit:
                continue
            orbit.add(t)
            i, j, k = t
            stack.append((dual[j], dual[i], dual[k]))
            stack.append((dual[i], k, j))
        members = tuple(sorted(orbit))
        for t in members:
            var_of[t] = len(orbits)
        orbits.append(members)
    order = sorted(
        range(len(orbits)),
        key=lambda oi: (
            0 if any(i == j == k for (i, j, k) in orbits[oi]) else 1,
            orbits[oi][0],
        ),
    )
    remap = {old: new for new, old in enumerate(order)}
    ordered = [orbits[old] for old in order]
    var_of = {t: remap[v] for t, v in var_of.items()}
    return ordered, var_of


def _equations(rank: int, dual, var_of):
    """Deduplicated associativity equations: (const, ((a, b, coeff), ...)).

    Each equation asserts const + sum coeff * v[a] * v[b] == 0 over the
    orbit variables.  Returns None when the constants alone are already
    contradictory for this duality pattern.
    """
    eqs = {}
    for i, j, k, l in itertools.product(range(1, rank), repeat=4):
        coeffs: dict[tuple[int, int], int] = {}
        const = (1 if dual[i] == j else 0) * (1 if k == l else 0) - (
            1 if dual[j] == k else 0
        ) * (1 if i == l else 0)
        for m in range(1, rank):
            a, b = var_of[(i, j, m)], var_of[(m, k, l)]
            key = (min(a, b), max(a, b))
            coeffs[key] = coeffs.get(key, 0) + 1
            a, b = var_of[(j, k, m)], var_of[(i, m, l)]
            key = (min(a, b), max(a, b))
            coeffs[key] = coeffs.get(key, 0) - 1
        coeffs = {key: v for key, v in coeffs.items() if v}
        if not coeffs:
            if const:
                return None
            continue
        items = tuple(sorted(coeffs.items()))
        if items[0][1] < 0:
            items = tuple((key, -v) for key, v in items)
            const = -const
        eqs[(const, items)] = None
    return [
        (const, tuple((a, b, v) for (a, b), v in items))
        for (const, items) in eqs.keys()
    ]


def _tail_block(bound: int, t: int) -> np.ndarray:
    rows = (bound + 1) ** t
    dtype = np.int16 if bound <= 100 else np.int32
    cols = np.empty((t, rows), dtype=dtype)
    for j in range(t):
        period = (bound + 1) ** (t - 1 - j)
        cols[j] = (np.arange(rows) // period) % (bound + 1)
    return cols


def _build_tensor(rank, dual, orbits, values) -> np.ndarray:
    n = np.zeros((rank, rank, rank), dtype=np.int64)
    for j in range(rank):
        n[0, j, j] = 1
    for i in range(1, rank):
        n[i, 0, i] = 1
        n[i, dual[i], 0] = 1
    for var, members in enumerate(orbits):
        for (i, j, k) in members:
            n[i, j, k] = values[var]
    return n


def _search_pattern(rank, dual, bound, budget):
    """All associative tensors for one duality pattern; returns (tensors, nodes)."""
    orbits, var_of = _orbits(rank, dual)
    nvars = len(orbits)
    if nvars == 0:
        return [_build_tensor(rank, dual, orbits, [])], 1
    eqs = _equations(rank, dual, var_of)
    if eqs is None:
        return [], 0

    t = 1
    while t < nvars and (bound + 1) ** (t + 1) <= _TAIL_CAP:
        t += 1
    p = nvars - t

    prefix_eqs, tail_eqs = [], []
    for const, terms in eqs:
        if all(a < p and b < p for a, b, _ in terms):
            prefix_eqs.append((const, terms))
        else:
            tail_eqs.append((const, terms))

    cols = _tail_block(bound, t)
    rows = cols.shape[1]
    nodes = 0
    tensors = []

    for prefix in itertools.product(range(bound + 1), repeat=p):
        ok = True
        for const, terms in prefix_eqs:
            total = const
            for a, b, coeff in terms:
                total += coeff * prefix[a] * prefix[b]
            if total:
                ok = False
                break
        if not ok:
            continue
        nodes += rows
        if nodes > budget:
            raise BudgetExceeded(
                f"node budget exhausted after {nodes} tensor completions"
            )
        survivors = np.arange(rows)
        for const, terms in tail_eqs:
            base = const
            vec = None
            for a, b, coeff in terms:
                if a < p and b < p:
                    base += coeff * prefix[a] * prefix[b]
                    continue
                if a < p:
                    part = (coeff * prefix[a]) * cols[b - p][survivors].astype(np.int64)
                elif b < p:
                    part = (coeff * prefix[b]) * cols[a - p][survivors].astype(np.int64)
                else:
                    part = coeff * (
                        cols[a - p][survivors].astype(np.int64)
                        * cols[b - p][survivors]
                    )
                vec = part if vec is None else vec + part
            total = base if vec is None else vec + base
            if vec is None:
                if total:
                    survivors = survivors[:0]
            else:
                survivors = survivors[np.nonzero(total == 0)[0]]
            if survivors.size == 0:
                break
        for idx in survivors:
            values = list(prefix) + [int(cols[j][idx]) for j in range(t)]
            tensors.append(_build_tensor(rank, dual, orbits, values))
    return tensors, nodes


def enumerate_rings(spec: SearchSpec) -> SearchResult:
    """All valid fusion rings within the bound, up to isomorphism.

    Soundness is rechecked on every survivor with the full axiom suite;
    completeness holds within the coefficient bound.  Output order is the
    canonical-form sort, independent of search order.
    """
    if not 1 <= spec.rank <= MAX_SEARCH_RANK:
        raise ValueError(f"rank must be between 1 and {MAX_SEARCH_RANK}")
    if spec.max_coeff < 0:
        raise ValueError("max_coeff must be nonnegative")
    nodes = 0
    found: list[FusionRing] = []
    patterns = (
        [tuple(range(spec.rank))]
        if spec.self_dual
        else _involution_patterns(spec.rank)
    )
    for dual in patterns:
        tensors, used = _search_pattern(
            spec.rank, dual, spec.max_coeff, spec.node_budget - nodes
        )
        nodes += used
        for n in tensors:
            ring = FusionRing(n, dual=dual)
            bad = axiom_violations(ring)
            if bad:
                raise AssertionError(f"search produced an invalid ring: {bad[:3]}")
            found.append(ring)

    kept = []
    for ring in found:
        if spec.non_pointed and invertibles(ring)[0].order == ring.rank:
            continue
        if spec.nontrivial_grading and universal_grading(ring).is_trivial:
            continue
        kept.append(ring)

    canon: dict = {}
    for ring in kept:
        c = canonical_form(ring)
        key = (c.dual, c.N.tobytes())
        canon.setdefault(key, c)
    rings = [canon[key] for key in sorted(canon)]
    return SearchResult(rings=rings, nodes=nodes, raw_count=len(kept), bound=spec.max_coeff)


def canonical_form(ring: FusionRing) -> FusionRing:
    """Lexicographically minimal relabeling; identical on isomorphic rings.

    Minimizes the (dual, tensor) pair over unit-fixing permutations, with
    the lexicographically first achieving permutation as tie-break so the
    map is idempotent.  Names are regenerated generically.
    """
    rank = ring.rank
    if rank > 8:
        raise ValueError("rank above 8 is not supported")
    best_key = None
    best_perm = None
    for rest in itertools.permutations(range(1, rank)):
        perm = (0,) + rest
        moved = relabel(ring, perm)
        key = (moved.dual, tuple(int(v) for v in moved.N.reshape(-1)))
        if best_key is None or key < best_key:
            best_key, best_perm = key, perm
    out = relabel(ring, best_perm)
    names = ("1",) + tuple(f"x{i}" for i in range(1, rank))
    return FusionRing(out.N, dual=out.dual, names=names, name=ring.name)
