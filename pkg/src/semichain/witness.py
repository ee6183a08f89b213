"""Constructed semigroups: the level semilattice and the stock test families.

The level semilattice lives on points ``<x, i>`` where odd levels carry the
single slot 0 and an even level ``2n`` carries slots ``1..2n``. Two points of
one level with different slots multiply to ``<x-1, 0>``; otherwise the point
of smaller level wins. Every finite level bound gives a sub-semilattice.
"""

from __future__ import annotations

from typing import NamedTuple

from .sgcore import CayleyTable


class LevelElement(NamedTuple):
    level: int
    slot: int

    def label(self) -> str:
        return f"{self.level}.{self.slot}"


def check_level_element(a) -> LevelElement:
    a = LevelElement(*a)
    x, i = a
    if x < 1:
        raise ValueError(f"level must be positive: {a}")
    if x % 2 == 1 and i != 0:
        raise ValueError(f"odd level {x} only has slot 0: {a}")
    if x % 2 == 0 and not 1 <= i <= x:
        raise ValueError(f"even level {x} has slots 1..{x}: {a}")
    return a


def ex_op(a, b) -> LevelElement:
    (x, i), (y, j) = check_level_element(a), check_level_element(b)
    if x == y:
        return LevelElement(x, i) if i == j else LevelElement(x - 1, 0)
    return LevelElement(x, i) if x < y else LevelElement(y, j)


def ex_r(a) -> LevelElement:
    """Retraction onto the odd-level chain: even levels drop by one."""
    x, _ = check_level_element(a)
    return LevelElement(x, 0) if x % 2 else LevelElement(x - 1, 0)


def level_elements(max_level: int) -> list[LevelElement]:
    """All points with level <= max_level, ordered by (level, slot)."""
    out = []
    for x in range(1, max_level + 1):
        if x % 2:
            out.append(LevelElement(x, 0))
        else:
            out.extend(LevelElement(x, i) for i in range(1, x + 1))
    return out


def ex_truncate(max_level: int) -> tuple[CayleyTable, list[LevelElement]]:
    if max_level < 1:
        raise ValueError("level bound must be at least 1")
    elems = level_elements(max_level)
    index = {a: k for k, a in enumerate(elems)}
    rows = [[index[ex_op(a, b)] for b in elems] for a in elems]
    table = CayleyTable(rows, [a.label() for a in elems])
    return table.require_semigroup(), elems


def ex_r_fibers(max_level: int) -> dict[LevelElement, list[LevelElement]]:
    """Preimages of r restricted to a truncation, keyed by odd-level points."""
    fibers: dict[LevelElement, list[LevelElement]] = {}
    for a in level_elements(max_level):
        fibers.setdefault(ex_r(a), []).append(a)
    return fibers


def odd_levels(max_level: int) -> list[int]:
    """Table indices of the odd-level points in ``ex_truncate(max_level)``."""
    return [k for k, a in enumerate(level_elements(max_level)) if a.level % 2]


def monogenic(index: int, period: int) -> CayleyTable:
    """Semigroup generated by x with x^(index+period) = x^index.

    Element ``k`` is ``x^(k+1)``, so element 0 is the generator.
    """
    if index < 1 or period < 1:
        raise ValueError("index and period must be positive")
    n = index + period - 1

    def fold(s: int) -> int:
        if s >= index + period:
            s = index + (s - index) % period
        return s

    rows = [[fold(a + b) - 1 for b in range(1, n + 1)] for a in range(1, n + 1)]
    return CayleyTable(rows, [f"x^{k}" for k in range(1, n + 1)])


STOCK_FAMILIES = ("left_zero", "right_zero", "zero", "cyclic_group")


def stock(family: str, n: int) -> CayleyTable:
    if n < 1:
        raise ValueError("order must be positive")
    if family == "left_zero":
        rows = [[x] * n for x in range(n)]
    elif family == "right_zero":
        rows = [list(range(n)) for _ in range(n)]
    elif family == "zero":
        rows = [[0] * n for _ in range(n)]
    elif family == "cyclic_group":
        rows = [[(x + y) % n for y in range(n)] for x in range(n)]
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {STOCK_FAMILIES}")
    return CayleyTable(rows)


def chain_semilattice(n: int) -> CayleyTable:
    """The n-element linear order under min."""
    return CayleyTable([[min(x, y) for y in range(n)] for x in range(n)])
