import json

import pytest

from semichain import structure, verify
from semichain.sgcore import CayleyTable
from semichain.witness import monogenic, stock

CHECK_NAMES = [
    "lemma_he", "lemma_ideal", "power_step", "fiber_partition", "hclass_group",
    "fiber_outside_h", "chi6_defined", "finite_bounds",
]


def _report(table):
    return verify.check_table(table, "t")


def test_report_shape():
    r = _report(stock("cyclic_group", 4))
    assert [c.name for c in r.checks] == CHECK_NAMES
    assert r.passed
    s = r.stats
    assert s["max_chain"] == 1 and s["max_antichain"] == 3  # {1, 2, 3}
    assert s["fiber_sizes"] == {"0": 4}
    assert s["hclass_sizes"] == [4]
    assert s["idempotent_count"] == 1


def test_lemma_he_group_and_zero():
    a = verify.Analysis.of(stock("cyclic_group", 4))
    assert verify.check_lemma_he(a).passed
    assert sorted(a.h(0).discard(0)) == [1, 2, 3]
    assert verify.check_lemma_he(verify.Analysis.of(stock("zero", 4))).passed


def test_monogenic_hclass_of_idempotent():
    t = monogenic(3, 4)
    a = verify.Analysis.of(t)
    # the cycle x^3..x^6 is the group H_e around e = x^4; x, x^2 lie outside
    assert list(a.h(3)) == [2, 3, 4, 5]
    assert verify.check_lemma_ideal(a).passed
    assert verify.check_power_step(a).passed
    prof = structure.power_profile(t, 0)
    assert prof.power(5) in a.h(3)


def test_fiber_partition_examples():
    a = verify.Analysis.of(stock("left_zero", 4))
    assert verify.check_fiber_partition(a).passed
    assert [len(f) for f in a.fibers.values()] == [1, 1, 1, 1]
    a = verify.Analysis.of(stock("zero", 4))
    assert [len(f) for f in a.fibers.values()] == [4]


def test_corpus_parsing():
    ids = [i for i, _ in verify.iter_corpus("enum:2,stock:zero:3,example:1-2,monogenic:3,random:2:4:9")]
    assert ids[:4] == [f"enum/2/iso_and_anti/{i}" for i in range(4)]
    assert "stock/zero/3" in ids and "example/2" in ids and "monogenic/2/1" in ids
    assert sum(i.startswith("random/9/") for i in ids) == 2
    assert len([i for i, _ in verify.iter_corpus("stock:2")]) == 8
    for bad in ["nope:1", "enum:7", "enum:2:weird", "stock:foo:3", "random:3"]:
        with pytest.raises(ValueError):
            list(verify.iter_corpus(bad))


def test_suite_examples():
    reports = verify.run_suite("enum:3")
    assert len(reports) == 18
    assert verify.summary(reports)["failures"] == 0
    reports = verify.run_suite("example:1-8")
    assert len(reports) == 8 and all(r.passed for r in reports)
    assert [r.stats["max_antichain"] for r in reports] == [1, 2, 2, 4, 4, 6, 6, 8]
    assert verify.run_suite("") == []


def test_suite_is_deterministic_and_parallel_stable():
    a = verify.report_json(verify.run_suite("random:50:6:3,stock:4"))
    b = verify.report_json(verify.run_suite("random:50:6:3,stock:4", jobs=2))
    assert json.dumps(a) == json.dumps(b)


def test_unreadable_entries_do_not_abort(tmp_path):
    (tmp_path / "bad.sgt").write_text("2\n0 9\n0 0\n")
    (tmp_path / "good.sgt").write_text("1\n0\n")
    reports = verify.run_suite(f"file:{tmp_path},stock:zero:2")
    assert [r.passed for r in reports] == [False, True, True, True]
    assert reports[0].failures[0].name == "load"
    assert "outside" in reports[0].failures[0].witness["error"]


def test_non_associative_file_reported(tmp_path):
    (tmp_path / "na.sgt").write_text("2\n1 0\n0 0\n")
    (r,) = verify.run_suite(f"file:{tmp_path / 'na.sgt'}")
    assert not r.passed and "associative" in r.failures[0].witness["error"]


def test_corrupted_hclasses_fail_with_replayable_witnesses(monkeypatch):
    # every H-class collapses to a singleton
    def broken(table):
        return [structure.HClass(x, *(table.element_set([x]),) * 3) for x in range(table.order)]

    monkeypatch.setattr(structure, "h_classes", broken)
    table = stock("cyclic_group", 3)
    report = verify.check_table(table)
    failed = {c.name: c for c in report.failures}
    assert "lemma_ideal" in failed
    assert failed["lemma_ideal"].witness["e"] == 0
    for c in report.failures:
        assert verify.replay_witness(table, c), c


def test_passing_checks_do_not_replay():
    for c in verify.check_table(stock("zero", 3)).checks:
        assert not verify.replay_witness(stock("zero", 3), c)


def test_example_properties():
    for n in range(1, 9):
        assert all(c.passed for c in verify.example_properties(n))
