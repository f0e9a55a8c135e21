import json

import pytest

from grouprank import (
    GroupAnalysis,
    InfiniteRankError,
    Mat,
    NumberFieldSpec,
    SchemaError,
    analyze,
    dump_group,
    hirsch_number,
    is_of_finite_index,
    load_group,
    rank_bound,
    rk_bound_gl,
)
from grouprank.numberfield import QF

from conftest import QRAT, diag, eij, mat, random_invertible
from corpus import build_corpus, free_group_generators, g6_template_fixture


def test_rk_bound_gl_examples():
    assert rk_bound_gl(1) == 1
    assert rk_bound_gl(2) == 4
    assert rk_bound_gl(4) == min(4 * 4 // 4 + 1, 6 + 6) == 5


def test_hirsch_examples():
    assert hirsch_number([mat(QRAT, [[0, -1], [1, 0]])], QRAT) == 0
    gens = [diag(QRAT, [2, 3, 5]), eij(QRAT, 3, 0, 1), eij(QRAT, 3, 1, 2)]
    assert hirsch_number(gens, QRAT) == 4
    ut4 = [eij(QRAT, 4, 0, 1), eij(QRAT, 4, 1, 2), eij(QRAT, 4, 2, 3)]
    assert hirsch_number(ut4, QRAT) == 6


def test_hirsch_infinite_rank():
    with pytest.raises(InfiniteRankError):
        hirsch_number(free_group_generators(), QRAT)


def test_rank_bound_examples():
    assert rank_bound([diag(QRAT, [2, QF(1, 2)])], QRAT) == 1 + 4
    rot4 = [mat(QRAT, [[0, -1, 0, 0], [1, 0, 0, 0],
                       [0, 0, 1, 0], [0, 0, 0, 1]])]
    assert rank_bound(rot4, QRAT) == 0 + 5
    assert rank_bound([Mat.identity(QRAT, 1)], QRAT) == 0 + 1


def test_finite_index_examples():
    g = [diag(QRAT, [2, 3])]
    assert is_of_finite_index(g, g, QRAT) is True
    assert is_of_finite_index(g, [diag(QRAT, [4, 9])], QRAT) is True
    assert is_of_finite_index([diag(QRAT, [2, 3]), diag(QRAT, [3, 2])],
                              [diag(QRAT, [2, 3])], QRAT) is False


def test_hirsch_monotone_on_subgroups():
    big = [diag(QRAT, [2, 3]), diag(QRAT, [3, 2])]
    small = [diag(QRAT, [2, 3])]
    assert hirsch_number(small, QRAT) <= hirsch_number(big, QRAT)


def test_corpus_expected_hirsch():
    for group in build_corpus():
        if group.expected_hirsch is None:
            continue
        assert hirsch_number(group.gens, group.spec) == group.expected_hirsch, group.name


def test_hirsch_conjugation_invariant(rng):
    for group in build_corpus()[:5]:
        x = random_invertible(group.spec, group.n, rng)
        xi = x.inverse()
        conj = [xi * g * x for g in group.gens]
        assert hirsch_number(conj, group.spec) == hirsch_number(group.gens, group.spec)


def test_g6_template():
    gens, expected = g6_template_fixture()
    assert hirsch_number(gens, QRAT) == expected


def test_analyze_report_fields():
    rep = analyze([diag(QRAT, [2, QF(1, 2)])], QRAT, verify=True)
    d = rep.to_dict()
    assert d["status"] == "ok"
    assert d["hirsch"] == 1
    assert d["prufer_upper_bound"] == 5
    assert d["prime_used"] == 5
    assert d["certificates"]["verified"]["failures"] == 0
    assert d["hirsch"] <= d["prufer_upper_bound"]
    json.dumps(d)


def test_analyze_infinite():
    rep = analyze(free_group_generators(), QRAT)
    assert rep.status == "infinite_rank"
    assert rep.finite_rank is False


def test_analyze_budget_unknown():
    rep = analyze(free_group_generators(), QRAT, budget=10)
    assert rep.status == "unknown"


def test_prime_override_changes_site():
    d = [diag(QRAT, [2, QF(1, 2)])]
    ga5 = GroupAnalysis(d, QRAT)
    ga7 = GroupAnalysis(d, QRAT, prime=7)
    assert ga5.hirsch == ga7.hirsch == 1
    assert ga5.prime_used == 5 and ga7.prime_used == 7


def test_groupfile_roundtrip(tmp_path):
    spec = NumberFieldSpec((1, 0, 1))
    i = spec.alpha()
    gens = [Mat(spec, [[spec.one, i], [spec.zero, spec.one]])]
    path = tmp_path / "g.json"
    dump_group(spec, gens, path, name="example")
    spec2, gens2, name = load_group(path)
    assert spec2 == spec and gens2 == gens and name == "example"


def test_groupfile_schema_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"schema": 2}')
    with pytest.raises(SchemaError) as e:
        load_group(path)
    assert "schema" in str(e.value)

    path.write_text(json.dumps({
        "schema": 1, "field": {"minpoly": [0, 1]},
        "generators": [[[[[1, 1]], [[0, 1]]], [[[0, 1]], [[1, 1]]]]],
    }))
    spec, gens, _ = load_group(path)
    assert gens[0].rows[0][1] == (QF(0),)

    path.write_text(json.dumps({
        "schema": 1, "field": {"minpoly": [0, 1]},
        "generators": [[[[[0, 1]], [[0, 1]]], [[[0, 1]], [[0, 1]]]]],
    }))
    with pytest.raises(SchemaError) as e:
        load_group(path)
    assert "singular" in str(e.value)

    path.write_text(json.dumps({
        "schema": 1, "field": {"minpoly": [0, 1]},
        "generators": [[[[[1, 0]], [[2, 1]]], [[[0, 1]], [[1, 1]]]]],
    }))
    with pytest.raises(SchemaError) as e:
        load_group(path)
    assert "denominator" in str(e.value)

    path.write_text(json.dumps({
        "schema": 1, "field": {"minpoly": [0, 1]},
        "generators": [[[[[1, 1]], [[0, 1]]]]],
    }))
    with pytest.raises(SchemaError) as e:
        load_group(path)
    assert "generators[0]" in str(e.value)
