"""Cayley tables of finite semigroups and dense element sets.

Elements are positional integer handles ``0..n-1``; labels are display only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

# Order above which the associativity check switches to Light's test over a
# generating set.
LIGHT_THRESHOLD = 16


class MalformedTableError(ValueError):
    """Raised for tables that are not a total binary operation on ``[0, n)``."""


class NotASemigroupError(ValueError):
    """Raised when an analysis is asked of a non-associative table."""

    def __init__(self, counterexample: "Counterexample"):
        self.counterexample = counterexample
        x, y, z = counterexample
        super().__init__(f"operation is not associative at ({x}, {y}, {z})")


class Counterexample(NamedTuple):
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class ElementSet:
    """A subset of ``[0, universe_order)`` stored as an integer bitmask."""

    universe_order: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe_order:
            raise ValueError("members outside the universe")

    @classmethod
    def of(cls, universe_order: int, members: Iterable[int] = ()) -> "ElementSet":
        mask = 0
        for m in members:
            if not 0 <= m < universe_order:
                raise ValueError(f"element {m} outside [0, {universe_order})")
            mask |= 1 << m
        return cls(universe_order, mask)

    @classmethod
    def full(cls, universe_order: int) -> "ElementSet":
        return cls(universe_order, (1 << universe_order) - 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: object) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.universe_order and bool(
            self.mask >> int(x) & 1
        )

    def __bool__(self) -> bool:
        return self.mask != 0

    def _coerce(self, other: "ElementSet") -> int:
        if not isinstance(other, ElementSet):
            return NotImplemented
        if other.universe_order != self.universe_order:
            raise ValueError("element sets over different universes")
        return other.mask

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.universe_order, self.mask | self._coerce(other))

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.universe_order, self.mask & self._coerce(other))

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.universe_order, self.mask & ~self._coerce(other))

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & ~self._coerce(other) == 0

    def add(self, x: int) -> "ElementSet":
        return ElementSet.of(self.universe_order, [*self, x])

    def discard(self, x: int) -> "ElementSet":
        return ElementSet(self.universe_order, self.mask & ~(1 << x))

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"ElementSet({self.to_list()})"


class CayleyTable:
    """An ``n x n`` multiplication table; entry ``[x, y]`` is the product ``xy``.

    Construction checks shape and range only. Associativity is checked by
    :func:`validate_associativity` (cached through :meth:`require_semigroup`).
    """

    __slots__ = ("order", "products", "rows", "labels", "_checked", "_counterexample")

    def __init__(self, products, labels: Sequence[str] | None = None):
        rows = [list(r) for r in products]
        n = len(rows)
        if n == 0:
            raise MalformedTableError("a semigroup table needs at least one element")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise MalformedTableError(f"row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                    raise MalformedTableError(f"entry ({i}, {j}) is not an integer: {v!r}")
                if not 0 <= v < n:
                    raise MalformedTableError(f"entry ({i}, {j}) = {v} outside [0, {n})")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise MalformedTableError(f"{len(labels)} labels for {n} elements")
            if len(set(labels)) != n:
                raise MalformedTableError("labels must be pairwise distinct")
        arr = np.array(rows, dtype=np.int64).reshape(n, n)
        arr.setflags(write=False)
        self.order = n
        self.products = arr
        self.rows = tuple(tuple(int(v) for v in r) for r in rows)
        self.labels = labels
        self._checked = False
        self._counterexample = None

    def __call__(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self.rows == other.rows and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.rows, self.labels))

    def __repr__(self) -> str:
        return f"CayleyTable(order={self.order}, rows={[list(r) for r in self.rows]})"

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def elements(self) -> range:
        return range(self.order)

    def full_set(self) -> ElementSet:
        return ElementSet.full(self.order)

    def element_set(self, members: Iterable[int]) -> ElementSet:
        return ElementSet.of(self.order, members)

    def require_semigroup(self) -> "CayleyTable":
        """Return self after checking associativity once; raise if it fails."""
        if not self._checked:
            self._counterexample = validate_associativity(self)
            self._checked = True
        if self._counterexample is not None:
            raise NotASemigroupError(self._counterexample)
        return self


def _full_associativity(t: np.ndarray) -> Counterexample | None:
    n = t.shape[0]
    left = t[t]  # left[x, y, z] = (xy)z
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # x(yz)
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    # argwhere walks in C order, so the first hit is the lexicographic least
    return Counterexample(*(int(v) for v in bad[0]))


def generating_set(table: CayleyTable) -> list[int]:
    """Greedy generating set: add the least element not yet reached, then close."""
    t = table.rows
    n = table.order
    reached = [False] * n
    members: list[int] = []
    gens: list[int] = []
    for g in range(n):
        if reached[g]:
            continue
        gens.append(g)
        reached[g] = True
        members.append(g)
        # closure of the current members under the (possibly non-associative) product
        i = 0
        while i < len(members):
            a = members[i]
            for b in members[: i + 1]:
                for p in (t[a][b], t[b][a]):
                    if not reached[p]:
                        reached[p] = True
                        members.append(p)
            i += 1
    return gens


def _light_test(t: np.ndarray, gens: Sequence[int]) -> bool:
    for a in gens:
        # x(ay) versus (xa)y over all x, y
        if not np.array_equal(t[:, t[a]], t[t[:, a]]):
            return False
    return True


def validate_associativity(table: CayleyTable) -> Counterexample | None:
    """Return ``None`` if the table is associative, else the least failing triple."""
    t = table.products
    if table.order > LIGHT_THRESHOLD and _light_test(t, generating_set(table)):
        return None
    return _full_associativity(t)


def has_identity(table: CayleyTable) -> int | None:
    t = table.products
    idx = np.arange(table.order)
    for e in range(table.order):
        if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx):
            return e
    return None


def adjoin_identity(table: CayleyTable) -> CayleyTable:
    """S^1: the table itself if it has an identity, else S with a new identity ``n``."""
    if has_identity(table) is not None:
        return table
    n = table.order
    rows = [list(r) + [i] for i, r in enumerate(table.rows)]
    rows.append(list(range(n + 1)))
    labels = None
    if table.labels is not None:
        new = "1"
        while new in table.labels:
            new = "_" + new
        labels = [*table.labels, new]
    return CayleyTable(rows, labels)


def left_translate(table: CayleyTable, x: int, a: ElementSet) -> ElementSet:
    row = table.rows[x]
    return ElementSet.of(table.order, (row[y] for y in a))


def right_translate(table: CayleyTable, a: ElementSet, x: int) -> ElementSet:
    t = table.rows
    return ElementSet.of(table.order, (t[y][x] for y in a))
