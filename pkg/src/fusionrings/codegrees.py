"""Formal codegrees: the exact spectrum of the sum of N_i N_{dual(i)}."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactnum import (
    DEFAULT_WIDTH,
    QuadNum,
    RealInterval,
    char_poly,
    factor_small,
    isolate_real_roots,
    real_compare,
    real_sort_key,
    roots_as_quadnum,
)
from .rings import FusionRing


def codegree_matrix(ring: FusionRing) -> np.ndarray:
    """Sum over the basis of N_i times the matrix of left multiplication by
    dual(i).

    Frobenius reciprocity makes the dual factor equal the transpose of
    N_i; both are computed and compared so a convention slip cannot pass
    silently.  The result is symmetric positive definite for a valid ring.
    """
    rank = ring.rank
    total = np.zeros((rank, rank), dtype=np.int64)
    for i in range(rank):
        ni = ring.left_matrix(i)
        nd = ring.left_matrix(ring.dual[i])
        if not np.array_equal(nd, ni.T):
            raise ArithmeticError(
                f"left multiplication by dual({i}) is not the transpose of N_{i}"
            )
        total += ni @ nd
    if not np.array_equal(total, total.T):
        raise ArithmeticError("codegree matrix is not symmetric")
    return total


@dataclass(frozen=True)
class CodegreeSpectrum:
    """Multiset of codegrees with multiplicities and factorization provenance."""

    values: tuple  # ((value, multiplicity), ...) in descending value order
    source_poly: tuple
    exact: bool

    def as_list(self) -> list:
        out = []
        for value, mult in self.values:
            out.extend([value] * mult)
        return out

    @property
    def count(self) -> int:
        return sum(m for _, m in self.values)


def formal_codegrees(ring: FusionRing) -> CodegreeSpectrum:
    """Exact eigenvalue multiset of the codegree matrix.

    Eigenvalues carry algebraic multiplicity.  A ComplexRoot from the
    factor stage is fatal (the matrix is symmetric, so it signals an
    invalid ring).  Degree >= 3 leftovers fall back to certified
    intervals and clear the exact flag.
    """
    matrix = codegree_matrix(ring)
    poly = char_poly(matrix)
    factors, remainder = factor_small(poly)
    values: list = []
    for root in roots_as_quadnum(factors):
        values.append(root)
    exact = remainder is None
    interval_roots = []
    if remainder is not None:
        interval_roots = isolate_real_roots(remainder, DEFAULT_WIDTH)
        if sum(m for _, m in interval_roots) != len(remainder) - 1:
            raise ArithmeticError("symmetric matrix produced non-real eigenvalues")
        for iv, mult in interval_roots:
            values.extend([iv] * mult)
    for v in values:
        lo = v.lo if isinstance(v, RealInterval) else v
        if not lo > 0:
            raise ArithmeticError(f"nonpositive codegree {v}; ring is not valid")
    if len(values) != ring.rank:
        raise ArithmeticError("codegree count does not match the rank")
    values.sort(key=real_sort_key, reverse=True)
    grouped: list[tuple] = []
    for v in values:
        if grouped and (
            grouped[-1][0] is v
            or (isinstance(v, QuadNum) and isinstance(grouped[-1][0], QuadNum) and grouped[-1][0] == v)
        ):
            grouped[-1] = (grouped[-1][0], grouped[-1][1] + 1)
        else:
            grouped.append((v, 1))
    return CodegreeSpectrum(values=tuple(grouped), source_poly=poly, exact=exact)
