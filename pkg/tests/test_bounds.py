from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vdwtriples.bounds import (
    AxiomSet,
    BoundRecord,
    InconsistentBoundsError,
    Provenance,
    best_bounds,
    generate_table,
    lemma1_closure,
    lemma2_upper,
    load_reference,
    rule1_exact,
    table_to_csv,
    table_to_json,
    theorem2_upper,
    theorem3_upper,
    unexpected_mismatches,
)
from vdwtriples.colorings import GammaParams, gamma_prefix
from vdwtriples.core import FamilyParams, verify_coloring
from vdwtriples.solver import SearchConfig

NO_AXIOMS = AxiomSet()
SHIPPED = AxiomSet.shipped()


def test_theorem2_examples():
    assert theorem2_upper(2, 2, 5) == 4
    assert theorem2_upper(2, 10, 5) == 4
    assert theorem2_upper(3, 3, 5) is None
    assert theorem2_upper(1, 3, 5) is None
    assert theorem2_upper(2, 2, 4) is None


def test_theorem3_examples():
    assert theorem3_upper(5, 5) == 4
    assert theorem3_upper(6, 5) == 4
    assert theorem3_upper(7, 5) is None  # see test_colorings.test_one_seven_counterexample
    assert theorem3_upper(8, 5) is None
    assert theorem3_upper(8, 6) == 5
    assert theorem3_upper(2, 5) == 4
    assert theorem3_upper(1, 5) is None


@pytest.mark.parametrize("a,b,value", [(1, 4, 4), (3, 10, 4), (2, 2, None), (1, 1, None), (1, 2, 2)])
def test_lemma2_examples(a, b, value):
    assert lemma2_upper(a, b) == value


def test_rule1():
    assert rule1_exact(1, 2) == 1 and rule1_exact(3, 6) == 1 and rule1_exact(2, 5) is None


@given(st.integers(2, 8), st.integers(0, 400), st.integers(5, 12))
def test_theorem2_matches_rational_form(a, i, c):
    p = Fraction(2 * c - 2, c)
    holds = a <= p**c / (c - 1) and i <= p**c * (p ** (c - 1) - 2)
    assert (theorem2_upper(a, a + i, c) is not None) == holds


@given(st.integers(2, 200), st.integers(5, 12))
def test_theorem3_matches_rational_form(b, c):
    p = Fraction(2 * c - 2, c)
    assert (theorem3_upper(b, c) is not None) == (b <= p ** (c - 1))


def test_engine_uppers_are_witnessed_by_block_colorings():
    # every theorem-derived bound in the table range names a coloring that works
    cols = {}
    for rec in generate_table(3, 11, NO_AXIOMS):
        for prov in rec.upper_provenance:
            if prov.kind in ("theorem2", "theorem3"):
                c = int(prov.detail.split("=")[1])
                if c not in cols:
                    cols[c] = gamma_prefix(GammaParams(c), 20000)
                assert verify_coloring(FamilyParams(rec.a, rec.b), cols[c]).valid, rec


def test_lemma1_closure_examples():
    def rec(a, b, upper, kind):
        r = BoundRecord(a, b)
        r.offer_upper(upper, Provenance(kind))
        return r

    table = lemma1_closure([rec(1, 3, 3, "axiom"), BoundRecord(2, 5), BoundRecord(3, 7)])
    assert table[2, 5].upper == 3 and table[3, 7].upper == 3
    assert Provenance("lemma1", "from (1,3)") in table[3, 7].upper_provenance
    table = lemma1_closure([rec(2, 3, 2, "axiom"), BoundRecord(3, 5)])
    assert table[3, 5].upper == 2
    table = lemma1_closure([rec(1, 7, 4, "theorem3"), BoundRecord(2, 9)])
    assert table[2, 9].upper == 4


def test_best_bounds_examples():
    r = best_bounds(1, 2, SHIPPED)
    assert (r.lower, r.upper) == (1, 1)
    r = best_bounds(3, 8, SHIPPED)
    assert r.upper == 3 and Provenance("lemma1", "from (2,6)") in r.upper_provenance
    r = best_bounds(1, 4, NO_AXIOMS)
    assert (r.lower, r.upper) == (1, 4)
    r = best_bounds(1, 1, SHIPPED)
    assert r.regular and r.lower_text() == "inf" and r.upper_text() == "inf"
    r = best_bounds(1, 1, NO_AXIOMS)
    assert not r.regular and r.upper is None and r.upper_text() == "-"


def test_best_bounds_search_lower():
    r = best_bounds(2, 6, SHIPPED, SearchConfig(max_n=400, incremental=True), max_search_r=2)
    assert r.lower == 2 and Provenance("search", "r=2,n=114") in r.lower_provenance


def test_search_cutoff_is_a_note_not_a_bound():
    r = best_bounds(2, 5, SHIPPED, SearchConfig(max_n=100, incremental=True), max_search_r=3)
    assert r.lower == 1
    assert any(f.startswith("note: n(2,5;2) > 100 (max_n reached)") for f in r.flags)
    r = best_bounds(2, 5, SHIPPED, SearchConfig(max_n=400, node_budget=10, incremental=True))
    assert r.lower == 1 and "node budget exhausted" in r.flags[0]


def test_inconsistent_axioms_raise():
    bad = AxiomSet.parse("2 2 exact 5 # wrong on purpose\n")
    with pytest.raises(InconsistentBoundsError):
        best_bounds(2, 2, bad)


def test_axiom_parsing():
    ax = AxiomSet.parse("# header\n1 3 upper 3 # a source\n\n1 1 regular inf\n")
    assert [(x.a, x.b, x.kind, x.value, x.citation) for x in ax.axioms] == [
        (1, 3, "upper", 3, "a source"),
        (1, 1, "regular", None, ""),
    ]
    for text in ("1 3 upper", "1 3 lower 2", "3 1 upper 2", "1 3 upper 0"):
        with pytest.raises(ValueError):
            AxiomSet.parse(text)


def test_every_nonregular_pair_gets_a_finite_upper():
    for rec in generate_table(3, 11, SHIPPED):
        if (rec.a, rec.b) == (1, 1):
            assert rec.regular
        else:
            assert rec.upper is not None, rec


def test_no_axiom_column_one():
    recs = {r.key: r for r in generate_table(1, 9, NO_AXIOMS)}
    assert [recs[1, b].upper for b in range(4, 10)] == [4, 4, 4, 5, 5, 5]


def test_table_uppers_against_reference():
    ref = load_reference()
    assert len(ref) == 27
    recs = generate_table(3, 11, SHIPPED, reference=ref, gap_max=8)
    assert [r.key for r in recs][:4] == [(1, 1), (2, 2), (3, 3), (1, 2)]
    assert len(recs) == 27
    upper_flags = {r.key for r in recs if any(f.startswith("mismatch upper") for f in r.flags)}
    assert upper_flags == {(3, 4), (1, 7)}
    assert unexpected_mismatches(recs) == [r for r in recs if any(
        f.startswith("mismatch lower") for f in r.flags)]


def test_empty_range():
    assert generate_table(0, 0, SHIPPED) == []
    assert table_to_csv([]).strip() == "a,b,lower,upper,lower_provenance,upper_provenance,flags"


def test_serialization():
    recs = generate_table(2, 3, SHIPPED)
    rows = json.loads(table_to_json(recs))
    assert rows[0]["a"] == 1 and rows[0]["upper"] == "inf"
    csv_text = table_to_csv(recs)
    assert csv_text.splitlines()[0].startswith("a,b,lower,upper")
    assert len(csv_text.splitlines()) == len(recs) + 1
