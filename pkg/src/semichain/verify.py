"""Invariant harness: runs the structural checks over a corpus of tables.

Every check holds in every finite semigroup. A failing check carries a
witness (elements and products) that can be replayed by hand.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import order, ramsey, sgt, structure
from .enumeration import enumerate_semigroups, random_semigroup
from .sgcore import CayleyTable, ElementSet
from .witness import STOCK_FAMILIES, ex_truncate, monogenic, stock


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None


@dataclass
class LemmaReport:
    table_id: str
    checks: list[CheckResult] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Analysis:
    """Structure shared by the checks, computed once per table."""

    table: CayleyTable
    profiles: list[structure.PowerProfile]
    idempotents: list[int]
    fibers: dict[int, ElementSet]
    hclass_of: list[structure.HClass]

    @classmethod
    def of(cls, table: CayleyTable) -> "Analysis":
        table.require_semigroup()
        hclass_of: list[structure.HClass] = [None] * table.order  # type: ignore[list-item]
        for h in structure.h_classes(table):
            for y in h.members:
                hclass_of[y] = h
        return cls(
            table,
            structure.power_profiles(table),
            list(structure.idempotents(table)),
            structure.fiber_decomposition(table),
            hclass_of,
        )

    def h(self, x: int) -> ElementSet:
        return self.hclass_of[x].members


def _fail(name: str, **witness) -> CheckResult:
    return CheckResult(name, False, witness)


def check_lemma_he(a: Analysis) -> CheckResult:
    """H_e minus e is an antichain for every idempotent e."""
    t = a.table.rows
    for e in a.idempotents:
        rest = sorted(a.h(e).discard(e))
        for x in rest:
            for y in rest:
                if x != y and t[x][y] in (x, y):
                    return _fail("lemma_he", e=e, x=x, y=y, xy=t[x][y])
    return CheckResult("lemma_he", True)


def check_lemma_ideal(a: Analysis) -> CheckResult:
    """Products between the fiber of e and H_e, in both orders, stay in H_e."""
    t = a.table.rows
    for e in a.idempotents:
        h = a.h(e)
        for x in a.fibers[e]:
            for y in h:
                if t[x][y] not in h:
                    return _fail("lemma_ideal", e=e, x=x, y=y, side="xy", product=t[x][y], h_e=h.to_list())
                if t[y][x] not in h:
                    return _fail("lemma_ideal", e=e, x=x, y=y, side="yx", product=t[y][x], h_e=h.to_list())
    return CheckResult("lemma_ideal", True)


def check_power_step(a: Analysis) -> CheckResult:
    """If n is least with x^n = e idempotent, then x^(n+1) lies in H_e."""
    for prof in a.profiles:
        e = prof.idempotent_power
        n = prof.powers.index(e) + 1
        nxt = prof.power(n + 1)
        if nxt not in a.h(e):
            return _fail("power_step", x=prof.element, e=e, n=n, next_power=nxt, h_e=a.h(e).to_list())
    return CheckResult("power_step", True)


def check_fiber_partition(a: Analysis) -> CheckResult:
    """Fibers over the idempotents are disjoint, cover S, and match the definition."""
    seen = 0
    for e, fib in a.fibers.items():
        if e not in fib:
            return _fail("fiber_partition", e=e, reason="idempotent missing from its fiber", fiber=fib.to_list())
        if seen & fib.mask:
            return _fail("fiber_partition", e=e, reason="fibers overlap", fiber=fib.to_list())
        seen |= fib.mask
        direct = structure.fiber_by_search(a.table, e)
        if direct != fib:
            return _fail(
                "fiber_partition", e=e, reason="definitions disagree",
                by_profile=fib.to_list(), by_search=direct.to_list(),
            )
    if seen != a.table.full_set().mask:
        missing = sorted(a.table.full_set() - ElementSet(a.table.order, seen))
        return _fail("fiber_partition", reason="fibers do not cover S", missing=missing)
    return CheckResult("fiber_partition", True)


def check_hclass_group(a: Analysis) -> CheckResult:
    for e in a.idempotents:
        if not structure.is_group_hclass(a.table, e):
            return _fail("hclass_group", e=e, h_e=structure.h_class(a.table, e).members.to_list())
    return CheckResult("hclass_group", True)


def check_fiber_outside_h(a: Analysis) -> CheckResult:
    """Pairs from the fiber of e outside H_e never take colors 0-3 of chi5.

    Color 0 on (x_n, x_m) gives x_n = x_n x_m^p = x_n e, which lies in H_e;
    colors 1-3 argue the same way. So those elements form an antichain.
    """
    for e in a.idempotents:
        xs = sorted(a.fibers[e] - a.h(e))
        col = ramsey.chi5(a.table, xs)
        for n, m, c in col.pairs():
            if c != 4:
                return _fail("fiber_outside_h", e=e, x_n=xs[n], x_m=xs[m], color=c)
    return CheckResult("fiber_outside_h", True)


def check_chi6_defined(a: Analysis) -> CheckResult:
    for x, y in combinations(a.idempotents, 2):
        for p, q in ((x, y), (y, x)):
            cases = ramsey.chi6_cases(a.table, p, q)
            if len(cases) != 1:
                return _fail("chi6_defined", e_n=p, e_m=q, cases=cases)
    return CheckResult("chi6_defined", True)


LEMMA_CHECKS: list[Callable[[Analysis], CheckResult]] = [
    check_lemma_he,
    check_lemma_ideal,
    check_power_step,
    check_fiber_partition,
    check_hclass_group,
    check_fiber_outside_h,
    check_chi6_defined,
]


def check_table(table: CayleyTable, table_id: str = "table", node_budget: int | None = None) -> LemmaReport:
    report = LemmaReport(table_id)
    a = Analysis.of(table)
    for check in LEMMA_CHECKS:
        report.checks.append(check(a))

    stats: dict = {
        "order": table.order,
        "idempotent_count": len(a.idempotents),
        "fiber_sizes": {str(e): len(f) for e, f in sorted(a.fibers.items())},
        "hclass_sizes": sorted((len(h.members) for h in structure.h_classes(table)), reverse=True),
        "power_profiles": [[p.index, p.period, p.idempotent_power] for p in a.profiles],
    }
    try:
        chain = order.max_chain(table, node_budget)
        anti = order.max_antichain(table, node_budget)
    except order.CliqueBudgetExceeded as exc:
        report.checks.append(_fail("clique_search", reason=str(exc), best=exc.best.to_list()))
    else:
        stats.update(
            max_chain=len(chain), max_antichain=len(anti),
            max_chain_witness=chain.to_list(), max_antichain_witness=anti.to_list(),
        )
        ok = len(chain) >= 1 and table.order >= max(len(chain), len(anti))
        report.checks.append(
            CheckResult("finite_bounds", True) if ok
            else _fail("finite_bounds", order=table.order, max_chain=len(chain), max_antichain=len(anti))
        )
    report.stats = stats
    return report


# ---------------------------------------------------------------------------
# corpus specs

CorpusItem = tuple[str, Callable[[], CayleyTable]]


def _range(tok: str) -> range:
    lo, _, hi = tok.partition("-")
    lo_i = int(lo)
    return range(lo_i, (int(hi) if hi else lo_i) + 1)


def _enum_items(n: int, symmetry: str) -> Iterator[CorpusItem]:
    for i, t in enumerate(enumerate_semigroups(n, symmetry)):
        yield f"enum/{n}/{symmetry}/{i}", (lambda t=t: t)


def _file_items(path: Path) -> Iterator[CorpusItem]:
    files = sorted(path.glob("*.sgt")) if path.is_dir() else [path]
    for f in files:
        yield f"file/{f}", (lambda f=f: sgt.load(f))


def parse_corpus(spec: str) -> list[Iterable[CorpusItem]]:
    """Parse a comma-separated corpus spec into lazy sources.

    Tokens:
      ``enum:N`` or ``enum:A-B`` with optional ``:iso`` / ``:iso-anti`` (default iso-anti);
      ``stock:N`` (all families, orders 1..N) or ``stock:FAMILY:N``;
      ``example:N`` or ``example:A-B``; ``monogenic:S`` (all index+period <= S);
      ``random:COUNT:MAXN[:SEED]``; ``file:PATH`` (a ``.sgt`` file or a directory of them).
    """
    sources: list[Iterable[CorpusItem]] = []
    for raw in spec.split(","):
        tok = raw.strip()
        if not tok:
            continue
        kind, _, rest = tok.partition(":")
        parts = rest.split(":") if rest else []
        try:
            if kind == "enum":
                sym = parts[1] if len(parts) > 1 else "iso_and_anti"
                sym = "iso_and_anti" if sym in ("iso-anti", "iso_anti") else sym
                if sym not in ("iso", "iso_and_anti"):
                    raise ValueError(f"unknown symmetry {sym!r}")
                for n in _range(parts[0]):
                    if not 1 <= n <= 4:
                        raise ValueError("enumeration supports orders 1..4")
                    sources.append(_enum_items(n, sym))
            elif kind == "stock":
                if len(parts) == 2:
                    fams, top = [parts[0]], int(parts[1])
                    if parts[0] not in STOCK_FAMILIES:
                        raise ValueError(f"unknown family {parts[0]!r}")
                else:
                    fams, top = list(STOCK_FAMILIES), int(parts[0])
                sources.append(
                    [(f"stock/{f}/{n}", (lambda f=f, n=n: stock(f, n))) for f in fams for n in range(1, top + 1)]
                )
            elif kind == "example":
                sources.append([(f"example/{n}", (lambda n=n: ex_truncate(n)[0])) for n in _range(parts[0])])
            elif kind == "monogenic":
                top = int(parts[0])
                sources.append(
                    [
                        (f"monogenic/{m}/{r}", (lambda m=m, r=r: monogenic(m, r)))
                        for s in range(2, top + 1)
                        for m in range(1, s)
                        for r in [s - m]
                    ]
                )
            elif kind == "random":
                seed = int(parts[2]) if len(parts) > 2 else 0
                sources.append(random_seed_corpus(int(parts[0]), int(parts[1]), seed))
            elif kind == "file":
                sources.append(_file_items(Path(rest)))
            else:
                raise ValueError(f"unknown corpus source {kind!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"bad corpus token {tok!r}: {exc}") from None
    return sources


def iter_corpus(spec: str) -> Iterator[CorpusItem]:
    for source in parse_corpus(spec):
        yield from source


def _run_item(item: tuple[str, CayleyTable | Exception], node_budget: int | None) -> LemmaReport:
    table_id, table = item
    if isinstance(table, Exception):
        return LemmaReport(table_id, [_fail("load", error=str(table))])
    try:
        return check_table(table, table_id, node_budget)
    except Exception as exc:  # a crash on one table must not hide the others
        return LemmaReport(table_id, [_fail("load", error=f"{type(exc).__name__}: {exc}")])


def _materialize(items: Iterable[CorpusItem]) -> Iterator[tuple[str, CayleyTable | Exception]]:
    for table_id, load in items:
        try:
            yield table_id, load()
        except Exception as exc:
            yield table_id, exc


def run_suite(
    corpus: str | Iterable[CorpusItem],
    jobs: int = 1,
    fail_fast: bool = False,
    node_budget: int | None = None,
) -> list[LemmaReport]:
    """Check every table of the corpus; report order follows corpus order."""
    items = iter_corpus(corpus) if isinstance(corpus, str) else corpus
    tables = _materialize(items)
    reports: list[LemmaReport] = []
    if jobs <= 1:
        for item in tables:
            r = _run_item(item, node_budget)
            reports.append(r)
            if fail_fast and not r.passed:
                break
        return reports

    from concurrent.futures import ProcessPoolExecutor
    from functools import partial

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for r in pool.map(partial(_run_item, node_budget=node_budget), tables, chunksize=64):
            reports.append(r)
            if fail_fast and not r.passed:
                break
    return reports


def summary(reports: list[LemmaReport]) -> dict:
    return {
        "tables": len(reports),
        "checks": sum(len(r.checks) for r in reports),
        "failures": sum(len(r.failures) for r in reports),
    }


def report_json(reports: list[LemmaReport]) -> dict:
    return {"summary": summary(reports), "reports": [r.to_dict() for r in reports]}


def replay_witness(table: CayleyTable, result: CheckResult) -> bool:
    """Recompute a failure from its witness alone; True if the failure reproduces.

    Products are re-evaluated in the table, and membership is tested against
    the sets recorded in the witness, so the replay does not rerun the
    structure computations that produced them.
    """
    if result.passed or not result.witness:
        return False
    w = result.witness
    t = table.rows
    name = result.name
    if name == "lemma_he":
        return w["x"] != w["y"] and t[w["x"]][w["y"]] == w["xy"] in (w["x"], w["y"])
    if name == "lemma_ideal":
        x, y = w["x"], w["y"]
        prod = t[x][y] if w["side"] == "xy" else t[y][x]
        return prod == w["product"] and prod not in w["h_e"]
    if name == "power_step":
        p = w["x"]
        for _ in range(w["n"]):
            p = t[p][w["x"]]
        return p == w["next_power"] and p not in w["h_e"]
    if name == "hclass_group":
        return not structure.is_group_with_identity(table, w["e"], table.element_set(w["h_e"]))
    if name == "fiber_outside_h":
        return ramsey.chi5_color(table, w["x_n"], w["x_m"]) == w["color"] != 4
    if name == "chi6_defined":
        return len(ramsey.chi6_cases(table, w["e_n"], w["e_m"])) != 1
    if name == "finite_bounds":
        return w["max_chain"] < 1 or w["order"] < max(w["max_chain"], w["max_antichain"])
    if name == "fiber_partition":
        if "missing" in w:
            return bool(w["missing"])
        if "by_search" in w:
            return w["by_search"] != w["by_profile"]
        return True
    return True


def random_seed_corpus(count: int, max_order: int, seed: int = 0) -> list[CorpusItem]:
    """Seeded random tables with orders drawn uniformly from ``1..max_order``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_order)
        s = rng.getrandbits(64)
        out.append((f"random/{seed}/{i}", (lambda n=n, s=s: random_semigroup(n, s))))
    return out


def example_properties(max_level: int) -> list[CheckResult]:
    """Finite forms of the level semilattice's properties on one truncation."""
    from .sgcore import validate_associativity
    from .witness import ex_op, ex_r, ex_r_fibers, odd_levels

    table, elems = ex_truncate(max_level)
    index = {a: k for k, a in enumerate(elems)}
    t = table.rows
    out = []

    bad = validate_associativity(table)
    out.append(
        CheckResult("semilattice", True) if bad is None and order.is_semilattice(table)
        else _fail("semilattice", counterexample=list(bad) if bad else None)
    )

    anti = order.max_antichain(table)
    expected = 2 * (max_level // 2) if max_level >= 2 else 1
    out.append(
        CheckResult("max_antichain", True, {"size": len(anti)}) if len(anti) == expected
        else _fail("max_antichain", size=len(anti), expected=expected)
    )

    # antichains are pairwise-incomparable sets, so checking pairs is exact
    stray = [
        (x, y) for x, y in combinations(range(table.order), 2)
        if t[x][y] not in (x, y) and (elems[x].level != elems[y].level or elems[x].level % 2)
    ]
    out.append(
        CheckResult("antichains_in_even_levels", True) if not stray
        else _fail("antichains_in_even_levels", pair=[elems[stray[0][0]].label(), elems[stray[0][1]].label()])
    )

    cover = order.min_chain_cover(table)
    out.append(
        CheckResult("chain_cover", True, {"size": len(cover)}) if len(cover) == len(anti)
        else _fail("chain_cover", cover=len(cover), max_antichain=len(anti))
    )

    odd = table.element_set(odd_levels(max_level))
    out.append(CheckResult("odd_levels_chain", order.is_chain(table, odd)))

    hom_bad = next(
        ((a, b) for a in elems for b in elems if ex_r(ex_op(a, b)) != ex_op(ex_r(a), ex_r(b))), None
    )
    out.append(
        CheckResult("r_homomorphism", True) if hom_bad is None
        else _fail("r_homomorphism", a=hom_bad[0].label(), b=hom_bad[1].label())
    )

    fibers = ex_r_fibers(max_level)
    wrong = {}
    for base, pre in fibers.items():
        want = base.level + 2 if base.level + 1 <= max_level else 1
        if len(pre) != want or any(a not in index for a in pre):
            wrong[base.label()] = len(pre)
    out.append(
        CheckResult("r_fiber_sizes", True, {k.label(): len(v) for k, v in fibers.items()}) if not wrong
        else _fail("r_fiber_sizes", wrong=wrong)
    )
    return out
