"""Built-in rings: the rank-2 family, the two graded rank-4 tables, and
products of rank-2 rings."""

from __future__ import annotations

import numpy as np

from .rings import FusionRing, deligne_product, relabel


def _from_table(name, names, table):
    """Commutative self-dual ring from rows for the non-unit products.

    table maps (i, j) with 1 <= i <= j to the full coefficient row of
    basis element i times j.
    """
    rank = len(names)
    n = np.zeros((rank, rank, rank), dtype=np.int64)
    for j in range(rank):
        n[0, j, j] = 1
    for i in range(1, rank):
        n[i, 0, i] = 1
    for (i, j), row in table.items():
        n[i, j] = row
        n[j, i] = row
    ring = FusionRing(n, dual=None, names=names, name=name)
    return ring.validate()


def k_n(n: int) -> FusionRing:
    """Rank-2 ring with x*x = 1 + n*x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _from_table(f"k_{n}", ("1", "X"), {(1, 1): (1, n)})


def fib() -> FusionRing:
    ring = k_n(1)
    return FusionRing(ring.N, names=ring.names, name="fib")


def z2() -> FusionRing:
    ring = k_n(0)
    return FusionRing(ring.N, names=ring.names, name="z2")


def fib_z2() -> FusionRing:
    """Rank-4 table with components {1, X} and {Y, Z}."""
    return _from_table(
        "fib_z2",
        ("1", "X", "Y", "Z"),
        {
            (1, 1): (1, 1, 0, 0),
            (1, 2): (0, 0, 0, 1),
            (1, 3): (0, 0, 1, 1),
            (2, 2): (1, 0, 0, 0),
            (2, 3): (0, 1, 0, 0),
            (3, 3): (1, 1, 0, 0),
        },
    )


def k12() -> FusionRing:
    """Rank-4 table with components {1, X, Y} and {Z}, total dimension 12."""
    return _from_table(
        "k12",
        ("1", "X", "Y", "Z"),
        {
            (1, 1): (1, 0, 0, 0),
            (1, 2): (0, 0, 1, 0),
            (1, 3): (0, 0, 0, 1),
            (2, 2): (1, 1, 1, 0),
            (2, 3): (0, 0, 0, 2),
            (3, 3): (1, 1, 2, 0),
        },
    )


def _product_in_standard_order(a, b, name):
    # reorder pair basis to (1, A*1, 1*B, A*B) and use the usual letters
    prod = deligne_product(a, b)
    ring = relabel(prod, (0, 2, 1, 3), names=("1", "X", "Y", "Z"), name=name)
    return ring.validate()


def fib_fib() -> FusionRing:
    return _product_in_standard_order(fib(), fib(), "fib_fib")


def z2_z2() -> FusionRing:
    return _product_in_standard_order(z2(), z2(), "z2_z2")


BUILDERS = {
    "fib": fib,
    "z2": z2,
    "k12": k12,
    "fib_z2": fib_z2,
    "fib_fib": fib_fib,
    "z2_z2": z2_z2,
}


def catalog_names() -> list[str]:
    return sorted(BUILDERS) + ["k_n"]


def get(name: str, n: int | None = None) -> FusionRing:
    """Look up a catalog ring; k_n takes the extra parameter or a k_<n> name."""
    if name == "k_n":
        if n is None:
            raise KeyError("k_n needs the parameter n")
        return k_n(n)
    if name in BUILDERS:
        return BUILDERS[name]()
    if name.startswith("k_"):
        suffix = name[2:]
        if suffix.isdigit():
            return k_n(int(suffix))
    raise KeyError(f"unknown catalog ring {name!r}")
