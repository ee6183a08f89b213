"""Semigroups of small order up to isomorphism (optionally anti-isomorphism)."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .sgcore import CayleyTable

MAX_ENUM_ORDER = 4
SYMMETRIES = ("iso", "iso_and_anti")


class SamplingBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class CanonicalForm:
    order: int
    flat: tuple[int, ...]

    def table(self) -> CayleyTable:
        n = self.order
        return CayleyTable([self.flat[i * n:(i + 1) * n] for i in range(n)])

    def digest(self) -> str:
        data = bytes([self.order, *self.flat])
        return hashlib.sha256(data).hexdigest()[:16]


def _check_symmetry(symmetry: str) -> bool:
    if symmetry in ("iso-anti", "iso_anti"):
        symmetry = "iso_and_anti"
    if symmetry not in SYMMETRIES:
        raise ValueError(f"symmetry must be one of {SYMMETRIES}, got {symmetry!r}")
    return symmetry == "iso_and_anti"


def _relabelings(n: int, flat: tuple[int, ...], anti: bool) -> Iterator[tuple[int, ...]]:
    sources = [flat]
    if anti:
        sources.append(tuple(flat[y * n + x] for x in range(n) for y in range(n)))
    for src in sources:
        for p in permutations(range(n)):
            inv = [0] * n
            for old, new in enumerate(p):
                inv[new] = old
            # new table at (a, b) is p[old(a) * old(b)]
            yield tuple(p[src[inv[a] * n + inv[b]]] for a in range(n) for b in range(n))


def _canonical_flat(n: int, flat: tuple[int, ...], anti: bool) -> tuple[int, ...]:
    return min(_relabelings(n, flat, anti))


def canonical_form(table: CayleyTable, symmetry: str = "iso") -> CanonicalForm:
    """Lexicographically least row-major table over all relabelings.

    With ``symmetry="iso_and_anti"`` the transposed table's relabelings are
    included as well.
    """
    anti = _check_symmetry(symmetry)
    n = table.order
    flat = tuple(v for row in table.rows for v in row)
    return CanonicalForm(n, _canonical_flat(n, flat, anti))


def _labeled_semigroups(n: int, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    """All associative tables on ``[0, n)``, filled cell by cell in row-major order.

    After each assignment only the triples that read the new cell are checked,
    and only once all four products they need are defined. ``prefix`` fixes
    the first cells, which partitions the search for parallel workers.
    """
    size = n * n
    t = [-1] * size
    rng = range(n)

    def consistent(a: int, b: int) -> bool:
        # (xy)z = x(yz) for every defined triple that reads cell (a, b)
        for x in rng:
            for y in rng:
                xy = t[x * n + y]
                if xy < 0:
                    continue
                for z in rng:
                    yz = t[y * n + z]
                    if yz < 0:
                        continue
                    if not (
                        (x == a and y == b)
                        or (y == a and z == b)
                        or (xy == a and z == b)
                        or (x == a and yz == b)
                    ):
                        continue
                    l, r = t[xy * n + z], t[x * n + yz]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    def fill(cell: int) -> Iterator[tuple[int, ...]]:
        if cell == size:
            yield tuple(t)
            return
        a, b = divmod(cell, n)
        for v in rng:
            t[cell] = v
            if consistent(a, b):
                yield from fill(cell + 1)
        t[cell] = -1

    for cell, v in enumerate(prefix):
        t[cell] = v
        if not consistent(*divmod(cell, n)):
            return
    yield from fill(len(prefix))


def labeled_semigroups(n: int) -> Iterator[CayleyTable]:
    """Every associative table of order ``n`` (not quotiented by symmetry)."""
    _check_order(n)
    for flat in _labeled_semigroups(n):
        yield CayleyTable([flat[i * n:(i + 1) * n] for i in range(n)])


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"exhaustive enumeration supports orders 1..{MAX_ENUM_ORDER}, got {n}")


def _canonical_branch(n: int, anti: bool, prefix: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [f for f in _labeled_semigroups(n, prefix) if _canonical_flat(n, f, anti) == f]


def enumerate_semigroups(n: int, symmetry: str = "iso", jobs: int = 1) -> Iterator[CayleyTable]:
    """One representative per class, each emitted in its canonical form.

    Output order is row-major lexicographic regardless of ``jobs``; with
    ``jobs > 1`` the search is split by first-row prefix across processes.
    """
    _check_order(n)
    anti = _check_symmetry(symmetry)
    if jobs <= 1:
        flats: Iterator[tuple[int, ...]] = (
            f for f in _labeled_semigroups(n) if _canonical_flat(n, f, anti) == f
        )
    else:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial
        from itertools import chain, product

        prefixes = list(product(range(n), repeat=n))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            flats = chain.from_iterable(
                list(pool.map(partial(_canonical_branch, n, anti), prefixes))
            )
    for flat in flats:
        yield CayleyTable([flat[i * n:(i + 1) * n] for i in range(n)])


def _compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    # apply f, then g
    return tuple(g[i] for i in f)


def transformation_closure(gens: list[tuple[int, ...]], limit: int) -> list[tuple[int, ...]] | None:
    """Closure of transformations under composition in BFS order; None past ``limit``."""
    elems = []
    seen = set()
    for g in gens:
        if g not in seen:
            seen.add(g)
            elems.append(g)
    i = 0
    while i < len(elems):
        f = elems[i]
        for g in gens:
            h = _compose(f, g)
            if h not in seen:
                if len(elems) >= limit:
                    return None
                seen.add(h)
                elems.append(h)
        i += 1
    return elems


def random_semigroup(n: int, seed=None, max_attempts: int = 10_000) -> CayleyTable:
    """A random transformation semigroup with at most ``n`` elements.

    Deterministic for a given seed. Degree and generator count are drawn
    small so that closures stay within ``n``; oversized closures are resampled.
    """
    if not 1 <= n <= 64:
        raise ValueError("random sampling supports 1 <= n <= 64")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        degree = rng.randint(1, min(n, 4))
        k = rng.randint(1, 3)
        gens = [tuple(rng.randrange(degree) for _ in range(degree)) for _ in range(k)]
        elems = transformation_closure(gens, n)
        if elems is None:
            continue
        index = {f: i for i, f in enumerate(elems)}
        rows = [[index[_compose(f, g)] for g in elems] for f in elems]
        return CayleyTable(rows)
    raise SamplingBudgetExceeded(f"no closure of size <= {n} in {max_attempts} attempts")
