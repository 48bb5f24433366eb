import os
from pathlib import Path

import pytest

import incmatch

DATA = Path(os.environ.get("INCMATCH_DATA", Path(__file__).resolve().parents[2] / "data"))


def test_triangle_fixture():
    g = incmatch.DataGraph.load(str(DATA / "graphs" / "tri.txt"))
    p = incmatch.Pattern.load(str(DATA / "patterns" / "p3.txt"))
    r = incmatch.match(g, p, occurrences=True)
    assert r["embeddings"] == 3
    assert r["occurrences"] == 1
    assert incmatch.oracle_count(g, p) == 3


def test_enumerate_uses_original_ids():
    g = incmatch.DataGraph.from_edges([(10, 20), (20, 30), (30, 10)])
    p = incmatch.Pattern.parse("a b\nb c\nc a\n")
    r = incmatch.match(g, p, mode="enumerate", threads=2)
    assert r["matches"][0] == {"a": 10, "b": 20, "c": 30}
    assert len(r["matches"]) == 3


def test_plan_p7a():
    p = incmatch.Pattern.load(str(DATA / "patterns" / "p7a.txt"))
    plan = incmatch.plan(p)
    assert plan["start"] == "c"
    assert plan["split"][0] == "(a,c)"
    assert plan["removed"] == {"(b,c)": "(a,c)", "(f,c)": "(b,c)", "(c,e)": "(c,d)"}
    assert incmatch.plan(p, reduction=False)["removed"] == {}


def test_reduction_is_transparent():
    edges = [(u, (u * 7 + k) % 40) for u in range(40) for k in (1, 3, 11, 20) if (u * 7 + k) % 40 != u]
    g = incmatch.DataGraph.from_edges(edges)
    p = incmatch.Pattern.load(str(DATA / "patterns" / "p7a.txt"))
    on = incmatch.match(g, p)
    off = incmatch.match(g, p, reduction=False)
    assert on["embeddings"] == off["embeddings"] == incmatch.oracle_count(g, p)
    assert on["stats"]["adjacency_reads_removed"] == 0


def test_errors():
    with pytest.raises(incmatch.ParseError):
        incmatch.Pattern.parse("a a\n")
    with pytest.raises(incmatch.PlanError):
        incmatch.plan(incmatch.Pattern.parse("a b\nc d\n"))
    with pytest.raises(incmatch.UsageError):
        incmatch.match(incmatch.DataGraph.from_edges([(0, 1)]), incmatch.Pattern.parse("a b\n"), mode="fast")
