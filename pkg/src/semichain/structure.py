"""Periodic structure of elements, idempotent fibers, and Green's H-classes."""

from __future__ import annotations

from dataclasses import dataclass

from .sgcore import CayleyTable, ElementSet


@dataclass(frozen=True)
class PowerProfile:
    """Index ``m`` and period ``r`` of ``<x>``: ``x^(m+r) = x^m`` with both minimal."""

    element: int
    index: int
    period: int
    idempotent_power: int
    powers: tuple[int, ...]  # x^1 .. x^(m+r-1)

    @property
    def idempotent_exponent(self) -> int:
        """The unique multiple of the period in ``[index, index + period - 1]``."""
        m, r = self.index, self.period
        return m + (-m) % r

    def power(self, k: int) -> int:
        """x^k for any k >= 1."""
        if k < 1:
            raise ValueError("exponents start at 1")
        m, r = self.index, self.period
        if k >= m + r:
            k = m + (k - m) % r
        return self.powers[k - 1]


@dataclass(frozen=True)
class HClass:
    representative: int
    members: ElementSet
    right_ideal: ElementSet
    left_ideal: ElementSet


def idempotents(table: CayleyTable) -> ElementSet:
    t = table.rows
    return ElementSet.of(table.order, (x for x in range(table.order) if t[x][x] == x))


def power_profile(table: CayleyTable, x: int) -> PowerProfile:
    row = table.rows
    seen = {x: 1}
    powers = [x]
    p = x
    while True:
        p = row[p][x]
        k = len(powers) + 1
        if p in seen:
            m = seen[p]
            r = k - m
            break
        seen[p] = k
        powers.append(p)
    e_exp = m + (-m) % r
    return PowerProfile(x, m, r, powers[e_exp - 1], tuple(powers))


def power_profiles(table: CayleyTable) -> list[PowerProfile]:
    return [power_profile(table, x) for x in range(table.order)]


def fiber_decomposition(table: CayleyTable) -> dict[int, ElementSet]:
    """Map each idempotent e to the set of elements having some power equal to e."""
    n = table.order
    masks = {e: 0 for e in idempotents(table)}
    for prof in power_profiles(table):
        masks[prof.idempotent_power] |= 1 << prof.element
    return {e: ElementSet(n, m) for e, m in masks.items()}


def fiber_by_search(table: CayleyTable, e: int) -> ElementSet:
    """The fiber of e computed from the definition: x^k = e for some k >= 1.

    Independent of :func:`power_profile`; powers are walked until they repeat.
    """
    t = table.rows
    members = []
    for x in range(table.order):
        p, visited = x, set()
        while p not in visited:
            if p == e:
                members.append(x)
                break
            visited.add(p)
            p = t[p][x]
    return ElementSet.of(table.order, members)


def principal_right_ideal(table: CayleyTable, x: int) -> ElementSet:
    """xS^1 = {x} together with xS."""
    return ElementSet.of(table.order, (x, *table.rows[x]))


def principal_left_ideal(table: CayleyTable, x: int) -> ElementSet:
    """S^1x = {x} together with Sx."""
    t = table.rows
    return ElementSet.of(table.order, (x, *(t[s][x] for s in range(table.order))))


def _ideal_masks(table: CayleyTable) -> tuple[list[int], list[int]]:
    n = table.order
    right = [principal_right_ideal(table, x).mask for x in range(n)]
    left = [principal_left_ideal(table, x).mask for x in range(n)]
    return right, left


def h_class(table: CayleyTable, x: int) -> HClass:
    right, left = _ideal_masks(table)
    members = 0
    for y in range(table.order):
        if right[y] == right[x] and left[y] == left[x]:
            members |= 1 << y
    n = table.order
    return HClass(x, ElementSet(n, members), ElementSet(n, right[x]), ElementSet(n, left[x]))


def h_classes(table: CayleyTable) -> list[HClass]:
    """All H-classes, ordered by least member; each representative is its least member."""
    n = table.order
    right, left = _ideal_masks(table)
    groups: dict[tuple[int, int], int] = {}
    for y in range(n):
        key = (right[y], left[y])
        groups[key] = groups.get(key, 0) | 1 << y
    out = []
    for (r, l), members in groups.items():
        rep = (members & -members).bit_length() - 1
        out.append(HClass(rep, ElementSet(n, members), ElementSet(n, r), ElementSet(n, l)))
    return sorted(out, key=lambda h: h.representative)


def is_group_with_identity(table: CayleyTable, e: int, members: ElementSet) -> bool:
    """Closed under the product, e is a two-sided identity, and inverses exist."""
    t = table.rows
    if e not in members:
        return False
    for a in members:
        if t[e][a] != a or t[a][e] != a:
            return False
        for b in members:
            if t[a][b] not in members:
                return False
        if not any(t[a][b] == e and t[b][a] == e for b in members):
            return False
    return True


def is_group_hclass(table: CayleyTable, e: int) -> bool:
    """Check that H_e is a group with identity e."""
    if table.rows[e][e] != e:
        raise ValueError(f"element {e} is not idempotent")
    return is_group_with_identity(table, e, h_class(table, e).members)
