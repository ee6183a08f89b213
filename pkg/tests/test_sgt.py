import pytest

from semichain import sgt
from semichain.sgcore import CayleyTable
from semichain.witness import ex_truncate, monogenic, stock


def test_dumps_format_is_exact():
    t = CayleyTable([[0, 0], [0, 1]], labels=["z", "e"])
    assert sgt.dumps(t) == "2\n0 0\n0 1\nlabels: z e\n"
    assert sgt.dumps(stock("zero", 1)) == "1\n0\n"


def test_comments_and_labels():
    text = "# a comment\n3\n0 0 0\n# mid comment\n0 1 0\n0 0 2\nlabels: 1.0 2.1 2.2\n"
    t = sgt.loads(text)
    assert t.rows == ((0, 0, 0), (0, 1, 0), (0, 0, 2))
    assert t.labels == ("1.0", "2.1", "2.2")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("2\n0 2\n0 0\n", 2, 3),
        ("2\n0 0 0\n0 0\n", 2, None),
        ("2\n0 0\n", 3, None),
        ("x\n", 1, 1),
        ("2\n0 a\n0 0\n", 2, 3),
        ("2\n0 0\n0 0\nlabels: a\n", 4, None),
        ("2\n0 0\n0 0\nextra\n", 4, 1),
    ],
)
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(sgt.SgtParseError) as exc:
        sgt.loads(text, source="f.sgt")
    assert exc.value.line == line
    assert exc.value.column == column
    assert str(exc.value).startswith(f"f.sgt:{line}")


@pytest.mark.parametrize(
    "table",
    [stock("left_zero", 4), stock("cyclic_group", 7), monogenic(3, 4), ex_truncate(5)[0]],
)
def test_round_trip(table, tmp_path):
    p = tmp_path / "t.sgt"
    sgt.dump(table, p)
    once = sgt.load(p)
    assert once == table
    assert sgt.loads(sgt.dumps(once)) == once
