"""Fusion rings and their ring-level algebra.

A fusion ring is stored as a rank x rank x rank tensor of nonnegative
integers N[i][j][k] (the multiplicity of basis element k in i*j), a
duality involution fixing the unit at index 0, and display names.  All
structural facts (dimensions, gradings, subrings, products) are computed
from the tensor alone in exact arithmetic.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import (
    DEFAULT_WIDTH,
    MixedRadicand,
    QuadNum,
    RealInterval,
    char_poly,
    factor_small,
    isolate_real_roots,
    real_compare,
    real_max,
    roots_as_quadnum,
)

MAX_RANK = 8


class GradingInconsistent(ValueError):
    """Component products of the candidate grading are not single components."""


class ValidationError(ValueError):
    """A tensor failed the fusion-ring axioms; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:8])
        more = "" if len(self.violations) <= 8 else f" (+{len(self.violations) - 8} more)"
        super().__init__(f"{len(self.violations)} axiom violation(s): {lines}{more}")


Violation = namedtuple("Violation", ["identity", "indices"])


class FusionRing:
    """A based ring with nonnegative structure constants and duality.

    Index 0 is the unit.  Instances are immutable; the tensor array is
    write-protected after construction.  Construction checks shapes only;
    use validate() or axiom_violations() for the ring axioms.
    """

    __slots__ = ("name", "names", "dual", "N")

    def __init__(self, N, dual=None, names=None, name: str = ""):
        arr = np.array(N, dtype=np.int64)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise ValueError(f"tensor must be cubic, got shape {arr.shape}")
        rank = arr.shape[0]
        if rank < 1:
            raise ValueError("rank must be at least 1")
        if dual is None:
            dual = tuple(range(rank))
        dual = tuple(int(d) for d in dual)
        if sorted(dual) != list(range(rank)):
            raise ValueError("dual is not a permutation")
        if any(dual[dual[i]] != i for i in range(rank)):
            raise ValueError("dual is not an involution")
        if dual[0] != 0:
            raise ValueError("dual must fix the unit")
        if names is None:
            names = ("1",) + tuple(f"x{i}" for i in range(1, rank))
        names = tuple(str(n) for n in names)
        if len(names) != rank:
            raise ValueError("wrong number of names")
        if len(set(names)) != rank:
            raise ValueError("names must be distinct")
        if any((not n) or any(c.isspace() for c in n) for n in names):
            raise ValueError("names must be nonempty and whitespace-free")
        arr.setflags(write=False)
        self.N = arr
        self.dual = dual
        self.names = names
        self.name = str(name)

    @property
    def rank(self) -> int:
        return self.N.shape[0]

    @property
    def is_self_dual(self) -> bool:
        return all(self.dual[i] == i for i in range(self.rank))

    def left_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by basis element i (columns are images)."""
        return self.N[i].T.copy()

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.name == other.name
            and self.names == other.names
            and self.dual == other.dual
            and np.array_equal(self.N, other.N)
        )

    def __hash__(self):
        return hash((self.name, self.names, self.dual, self.N.tobytes()))

    def __repr__(self):
        label = self.name or "?"
        return f"FusionRing({label}, rank={self.rank})"

    def validate(self) -> "FusionRing":
        violations = axiom_violations(self)
        if violations:
            raise ValidationError(violations)
        return self


def axiom_violations(ring: FusionRing) -> list[Violation]:
    """All fusion-ring axiom failures, named by identity and index tuple."""
    N, rank, dual = ring.N, ring.rank, ring.dual
    out: list[Violation] = []
    for idx in np.argwhere(N < 0):
        out.append(Violation("nonnegative", tuple(int(v) for v in idx)))
    eye = np.eye(rank, dtype=np.int64)
    for j, k in np.argwhere(N[0] != eye):
        out.append(Violation("unit-left", (0, int(j), int(k))))
    for i, k in np.argwhere(N[:, 0, :] != eye):
        out.append(Violation("unit-right", (int(i), 0, int(k))))
    dual_arr = np.array(dual)
    want = np.zeros((rank, rank), dtype=np.int64)
    want[np.arange(rank), dual_arr] = 1
    for i, j in np.argwhere(N[:, :, 0] != want):
        out.append(Violation("duality-unit", (int(i), int(j), 0)))
    # [X,Y] = [X*,Y*] transcribed to coefficients
    sym = N[np.ix_(dual_arr, dual_arr, dual_arr)].transpose(1, 0, 2)
    for i, j, k in np.argwhere(N != sym):
        out.append(Violation("frobenius-dual-pair", (int(i), int(j), int(k))))
    rot = N[dual_arr].transpose(0, 2, 1)
    for i, j, k in np.argwhere(N != rot):
        out.append(Violation("frobenius-rotation", (int(i), int(j), int(k))))
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    for i, j, k, l in np.argwhere(lhs != rhs):
        out.append(Violation("associativity", (int(i), int(j), int(k), int(l))))
    return out


def verify_axioms(ring: FusionRing) -> list[Violation]:
    """Alias kept close to the verification vocabulary; empty means valid."""
    return axiom_violations(ring)


# ---------------------------------------------------------------------------
# Frobenius-Perron dimensions


@dataclass(frozen=True)
class FPDimVector:
    """Per-element Perron dimensions, their squared total, and exactness."""

    dims: tuple
    total: object
    exact: bool

    def dim_of(self, vector):
        """Dimension of a formal nonnegative combination over the basis."""
        out = QuadNum(0)
        for coeff, dim in zip(vector, self.dims):
            if coeff:
                out = out + int(coeff) * dim
        return out


def _perron_root(matrix):
    cp = char_poly(matrix)
    factors, remainder = factor_small(cp)
    candidates = roots_as_quadnum(factors, on_complex="skip")
    if remainder is not None:
        candidates.extend(iv for iv, _ in isolate_real_roots(remainder, DEFAULT_WIDTH))
    if not candidates:
        raise ArithmeticError("no real eigenvalue found for a nonnegative matrix")
    return real_max(candidates)


def fpdim(ring: FusionRing) -> FPDimVector:
    """Exact Perron dimension of every basis element plus the ring total.

    Entries are QuadNum whenever the Perron root is rational or quadratic;
    otherwise a certified RealInterval of width <= 1e-12 is used and the
    vector is flagged inexact.
    """
    dims = tuple(_perron_root(ring.left_matrix(i)) for i in range(ring.rank))
    exact = all(isinstance(d, QuadNum) for d in dims)
    if not (isinstance(dims[0], QuadNum) and dims[0] == 1):
        raise ArithmeticError("unit dimension is not 1; ring is not valid")
    for d in dims:
        if isinstance(d, QuadNum) and d < 1:
            raise ArithmeticError("a basis element has dimension below 1")
    total = None
    if exact:
        try:
            acc = QuadNum(0)
            for d in dims:
                acc = acc + d * d
            total = acc
        except MixedRadicand:
            pass
    if total is None:
        acc = RealInterval(0, 0)
        for d in dims:
            acc = acc + RealInterval(*RealInterval._endpoints(d)) * d
        total = acc
    if exact:
        _check_homomorphism(ring, dims)
    return FPDimVector(dims=dims, total=total, exact=exact)


def _check_homomorphism(ring, dims):
    try:
        for i in range(ring.rank):
            for j in range(ring.rank):
                lhs = dims[i] * dims[j]
                rhs = QuadNum(0)
                for k in range(ring.rank):
                    if ring.N[i, j, k]:
                        rhs = rhs + int(ring.N[i, j, k]) * dims[k]
                if lhs != rhs:
                    raise ArithmeticError(
                        f"dimension homomorphism fails at ({i},{j}): {lhs} != {rhs}"
                    )
    except MixedRadicand:
        # dimensions from incompatible fields; identity not checkable exactly
        return


# ---------------------------------------------------------------------------
# invertibles and stabilizers


@dataclass(frozen=True)
class InvertibleGroup:
    """The group of dimension-1 basis elements under fusion."""

    elements: tuple[int, ...]
    table: dict

    def mul(self, g: int, h: int) -> int:
        return self.table[(g, h)]

    @property
    def order(self) -> int:
        return len(self.elements)

    def exponent_divides_two(self) -> bool:
        return all(self.mul(g, g) == 0 for g in self.elements)


def invertibles(ring: FusionRing) -> tuple[InvertibleGroup, "SubBasis"]:
    """Invertible elements with their group law, plus the pointed sub-basis."""
    elems = []
    for i in range(ring.rank):
        row = ring.N[i, ring.dual[i]]
        if row[0] == 1 and row.sum() == 1:
            elems.append(i)
    table = {}
    for g in elems:
        for h in elems:
            row = ring.N[g, h]
            if row.sum() != 1:
                raise ArithmeticError("product of invertibles is not simple")
            k = int(np.argmax(row))
            table[(g, h)] = k
    group = InvertibleGroup(tuple(elems), table)
    return group, SubBasis(tuple(elems), _subset_fp_total(ring, elems))


def stabilizer(ring: FusionRing, x: int) -> tuple[int, ...]:
    """Invertibles g with g*x = x; cross-checked against x*dual(x)."""
    group, _ = invertibles(ring)
    stab = tuple(g for g in group.elements if ring.N[g, x, x] == 1)
    for g in group.elements:
        expected = 1 if g in stab else 0
        if int(ring.N[x, ring.dual[x], g]) != expected:
            raise ArithmeticError(
                f"stabilizer relation fails at invertible {g} for element {x}"
            )
    return stab


# ---------------------------------------------------------------------------
# universal grading


@dataclass(frozen=True)
class Grading:
    """Partition of the basis into components plus the group law on them."""

    components: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]
    adjoint_support: tuple[int, ...]
    component_of: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.components)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def exponent_divides_two(self) -> bool:
        return all(self.table[g][g] == 0 for g in range(self.order))


def _support_product(ring, i, j):
    return set(int(k) for k in np.nonzero(ring.N[i, j])[0])


def subring_generated(ring: FusionRing, seeds) -> "SubBasis":
    """Smallest unit-containing, dual- and fusion-closed subset with the seeds."""
    closure = {0} | {int(s) for s in seeds}
    changed = True
    while changed:
        changed = False
        for i in list(closure):
            if ring.dual[i] not in closure:
                closure.add(ring.dual[i])
                changed = True
        for i, j in itertools.product(list(closure), repeat=2):
            extra = _support_product(ring, i, j) - closure
            if extra:
                closure |= extra
                changed = True
    indices = tuple(sorted(closure))
    return SubBasis(indices, _subset_fp_total(ring, indices))


@dataclass(frozen=True)
class SubBasis:
    """A fusion-closed subset of the basis, with its total dimension."""

    indices: tuple[int, ...]
    fp_total: object

    def induced_ring(self, ring: FusionRing) -> FusionRing:
        idx = list(self.indices)
        sub = ring.N[np.ix_(idx, idx, idx)]
        pos = {b: p for p, b in enumerate(idx)}
        dual = tuple(pos[ring.dual[b]] for b in idx)
        names = tuple(ring.names[b] for b in idx)
        out = FusionRing(sub, dual=dual, names=names, name=f"{ring.name}|sub")
        return out.validate()


def _subset_fp_total(ring, indices):
    dims = fpdim(ring).dims
    acc = QuadNum(0)
    try:
        for i in indices:
            d = dims[i]
            if isinstance(d, RealInterval):
                raise MixedRadicand("interval dimension")
            acc = acc + d * d
        return acc
    except MixedRadicand:
        iv = RealInterval(0, 0)
        for i in indices:
            iv = iv + RealInterval(*RealInterval._endpoints(dims[i])) * dims[i]
        return iv


def universal_grading(ring: FusionRing) -> Grading:
    """The canonical faithful grading computed from the tensor alone.

    The identity component is the fusion closure of all i*dual(i); two
    elements sit in one component when some product j*dual(k) meets that
    closure.  Component products must land in single components, otherwise
    the input was not a valid fusion ring.
    """
    rank = ring.rank
    seeds = set()
    for i in range(rank):
        seeds |= _support_product(ring, i, ring.dual[i])
    adjoint = set(subring_generated(ring, seeds).indices)

    parent = list(range(rank))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(u, v):
        parent[find(u)] = find(v)

    for j in range(rank):
        for k in range(rank):
            if _support_product(ring, j, ring.dual[k]) & adjoint:
                union(j, k)

    roots = sorted(set(find(v) for v in range(rank)), key=lambda r: min(v for v in range(rank) if find(v) == r))
    comp_members = {r: tuple(sorted(v for v in range(rank) if find(v) == r)) for r in roots}
    ordered = sorted(comp_members.values(), key=lambda c: (0 not in c, c[0]))
    component_of = [0] * rank
    for ci, members in enumerate(ordered):
        for v in members:
            component_of[v] = ci

    if set(ordered[0]) != adjoint:
        raise GradingInconsistent(
            "identity component differs from the adjoint closure"
        )

    n_comp = len(ordered)
    table = [[-1] * n_comp for _ in range(n_comp)]
    for gi, gmembers in enumerate(ordered):
        for hi, hmembers in enumerate(ordered):
            targets = set()
            for j in gmembers:
                for k in hmembers:
                    supp = _support_product(ring, j, k)
                    if not supp:
                        raise GradingInconsistent(f"empty product {j}*{k}")
                    targets |= {component_of[t] for t in supp}
            if len(targets) != 1:
                raise GradingInconsistent(
                    f"component product {gi}*{hi} hits components {sorted(targets)}"
                )
            table[gi][hi] = targets.pop()

    for gi in range(n_comp):
        if table[0][gi] != gi or table[gi][0] != gi:
            raise GradingInconsistent("identity component fails the unit law")
        if 0 not in table[gi]:
            raise GradingInconsistent(f"component {gi} has no inverse")
        for hi in range(n_comp):
            for ki in range(n_comp):
                if table[table[gi][hi]][ki] != table[gi][table[hi][ki]]:
                    raise GradingInconsistent("component law is not associative")

    grading = Grading(
        components=tuple(ordered),
        table=tuple(tuple(row) for row in table),
        adjoint_support=tuple(sorted(adjoint)),
        component_of=tuple(component_of),
    )
    _check_component_dims(ring, grading)
    return grading


def _check_component_dims(ring, grading):
    fp = fpdim(ring)
    if not fp.exact:
        return
    try:
        totals = []
        for members in grading.components:
            acc = QuadNum(0)
            for i in members:
                acc = acc + fp.dims[i] * fp.dims[i]
            totals.append(acc)
        for t in totals[1:]:
            if t != totals[0]:
                raise GradingInconsistent(
                    f"component dimensions differ: {totals[0]} vs {t}"
                )
        if totals[0] * len(totals) != fp.total:
            raise GradingInconsistent("total dimension is not order times component")
    except MixedRadicand:
        return


# ---------------------------------------------------------------------------
# products, relabelings, isomorphism


def relabel(ring: FusionRing, perm, names=None, name=None) -> FusionRing:
    """Transport the ring along a basis permutation (perm[i] = new index of i)."""
    perm = tuple(int(p) for p in perm)
    rank = ring.rank
    if sorted(perm) != list(range(rank)) or perm[0] != 0:
        raise ValueError("relabeling must be a unit-fixing permutation")
    inv = [0] * rank
    for i, p in enumerate(perm):
        inv[p] = i
    inv_arr = np.array(inv)
    new_n = ring.N[np.ix_(inv_arr, inv_arr, inv_arr)]
    new_dual = tuple(perm[ring.dual[inv[i]]] for i in range(rank))
    if names is None:
        names = tuple(ring.names[inv[i]] for i in range(rank))
    return FusionRing(new_n, dual=new_dual, names=names, name=name if name is not None else ring.name)


def deligne_product(a: FusionRing, b: FusionRing) -> FusionRing:
    """Componentwise product ring on basis pairs; unit is the pair of units."""
    ra, rb = a.rank, b.rank
    n = np.einsum("ijk,lmn->iljmkn", a.N, b.N).reshape(ra * rb, ra * rb, ra * rb)
    dual = tuple(a.dual[i] * rb + b.dual[j] for i in range(ra) for j in range(rb))
    names = []
    for i in range(ra):
        for j in range(rb):
            if i == 0 and j == 0:
                names.append("1")
            elif j == 0:
                names.append(a.names[i])
            elif i == 0:
                names.append(b.names[j])
            else:
                names.append(f"{a.names[i]}{b.names[j]}")
    if len(set(names)) != len(names):
        names = ["1"] + [f"{a.names[i]}.{b.names[j]}" for i in range(ra) for j in range(rb)][1:]
    out = FusionRing(n, dual=dual, names=names, name=f"{a.name or 'A'}*{b.name or 'B'}")
    return out.validate()


def _element_signature(ring: FusionRing, i: int):
    row_sums = tuple(sorted(int(s) for s in ring.N[i].sum(axis=1)))
    return (char_poly(ring.left_matrix(i)), ring.dual[i] == i, row_sums)


def isomorphic(a: FusionRing, b: FusionRing):
    """A unit-fixing based-ring isomorphism as a permutation, or None.

    The permutation sigma satisfies N_b[s(i)][s(j)][s(k)] = N_a[i][j][k]
    and transports dualities.  Candidates are filtered by per-element
    invariants before the exhaustive check.
    """
    if a.rank != b.rank:
        return None
    rank = a.rank
    if rank > MAX_RANK:
        raise ValueError(f"rank above {MAX_RANK} is not supported")
    sig_a = [_element_signature(a, i) for i in range(rank)]
    sig_b = [_element_signature(b, i) for i in range(rank)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    candidates = [
        [j for j in range(rank) if sig_b[j] == sig_a[i]] for i in range(rank)
    ]
    if not all(candidates):
        return None

    perm = [-1] * rank
    used = [False] * rank
    perm[0], used[0] = 0, True

    def consistent(i):
        si = perm[i]
        di = a.dual[i]
        if perm[di] != -1 and b.dual[si] != perm[di]:
            return False
        assigned = [x for x in range(rank) if perm[x] != -1]
        for j in assigned:
            for k in assigned:
                if b.N[si, perm[j], perm[k]] != a.N[i, j, k]:
                    return False
                if b.N[perm[j], si, perm[k]] != a.N[j, i, k]:
                    return False
                if b.N[perm[j], perm[k], si] != a.N[j, k, i]:
                    return False
        return True

    def search(i):
        if i == rank:
            return True
        for target in candidates[i]:
            if used[target]:
                continue
            perm[i] = target
            used[target] = True
            if consistent(i) and search(i + 1):
                return True
            perm[i] = -1
            used[target] = False
        return False

    if not search(1):
        return None
    sigma = tuple(perm)
    transported = relabel(a, sigma)
    if not np.array_equal(transported.N, b.N) or transported.dual != b.dual:
        raise AssertionError("isomorphism search returned a bad witness")
    return sigma


# ---------------------------------------------------------------------------
# formal combinations


def tensor_expand(ring: FusionRing, expr, factor: int) -> np.ndarray:
    """Right-multiply a formal nonnegative combination by a basis element."""
    vec = np.asarray(expr, dtype=np.int64)
    if vec.shape != (ring.rank,):
        raise ValueError("combination has the wrong length")
    return np.einsum("i,ik->k", vec, ring.N[:, factor, :])


def mul_combinations(ring: FusionRing, u, v) -> np.ndarray:
    """Product of two formal combinations, expanded over the basis."""
    uu = np.asarray(u, dtype=np.int64)
    vv = np.asarray(v, dtype=np.int64)
    return np.einsum("i,j,ijk->k", uu, vv, ring.N)


def basis_vector(rank: int, i: int) -> np.ndarray:
    vec = np.zeros(rank, dtype=np.int64)
    vec[i] = 1
    return vec
