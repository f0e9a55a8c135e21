import pytest

from grouprank import (
    GroupRankError,
    NumberFieldSpec,
    completely_reducible_part,
    completely_reducible_presentation,
    is_arithmetic_unipotent,
    lie_span,
    unipotent_radical_rank,
    unipotent_rank,
)
from grouprank.matrix import is_unipotent, nilpotent_exp

from conftest import QRAT, diag, eij, random_invertible, random_unipotent
from corpus import build_corpus
from oracles import sift_hirsch

GAUSS = NumberFieldSpec((1, 0, 1))


def test_rank_u_examples():
    assert unipotent_rank([eij(QRAT, 3, 0, 1), eij(QRAT, 3, 1, 2)], QRAT) == 3
    assert unipotent_rank([eij(QRAT, 2, 0, 1)], QRAT) == 1
    assert unipotent_rank([eij(QRAT, 2, 0, 1, 2), eij(QRAT, 2, 0, 1, 3)], QRAT) == 1
    ut4 = [eij(QRAT, 4, 0, 1), eij(QRAT, 4, 1, 2), eij(QRAT, 4, 2, 3)]
    assert unipotent_rank(ut4, QRAT) == 4 * 3 // 2


def test_rank_u_rejects_non_unipotent():
    with pytest.raises(GroupRankError):
        unipotent_rank([diag(QRAT, [2, 1])], QRAT)


def test_rank_u_number_field_blowup():
    i = GAUSS.alpha()
    g1 = eij(GAUSS, 2, 0, 1)
    g2 = eij(GAUSS, 2, 0, 1, i)
    assert unipotent_rank([g1, g2], GAUSS) == 2


def test_rank_u_conjugation_invariant(rng):
    gens = [eij(QRAT, 3, 0, 1), eij(QRAT, 3, 1, 2)]
    for _ in range(5):
        x = random_invertible(QRAT, 3, rng)
        xi = x.inverse()
        conj = [xi * g * x for g in gens]
        assert unipotent_rank(conj, QRAT) == unipotent_rank(gens, QRAT)


def test_rank_u_bound(rng):
    for _ in range(10):
        n = rng.choice([2, 3, 4])
        gens = [random_unipotent(QRAT, n, rng) for _ in range(2)]
        assert unipotent_rank(gens, QRAT) <= n * (n - 1) // 2


def test_lie_span_exponentials_unipotent(rng):
    gens = [random_unipotent(QRAT, 4, rng) for _ in range(2)]
    span = lie_span(gens, QRAT)
    for b in span.basis:
        assert is_unipotent(nilpotent_exp(b))


def test_rank_u_matches_sifting_oracle(rng):
    for _ in range(8):
        n = rng.choice([2, 3, 4])
        gens = [random_unipotent(QRAT, n, rng) for _ in range(rng.choice([1, 2]))]
        got = unipotent_rank(gens, QRAT)
        expect = sift_hirsch([tuple(tuple(x[0] for x in row) for row in g.rows)
                              for g in gens])
        assert got == expect


def test_arithmeticity_examples():
    assert is_arithmetic_unipotent([eij(QRAT, 3, 0, 1), eij(QRAT, 3, 1, 2)], 3, QRAT)
    assert not is_arithmetic_unipotent([eij(QRAT, 3, 0, 1)], 3, QRAT)
    assert is_arithmetic_unipotent([eij(QRAT, 3, 0, 1, 2), eij(QRAT, 3, 0, 2)], 2, QRAT)


def _radical_rank(gens, spec):
    crp = completely_reducible_part(gens, spec)
    pres = completely_reducible_presentation(crp.gens, spec)
    return unipotent_radical_rank(gens, crp, pres, spec)


def test_radical_examples():
    rank, witness = _radical_rank([diag(QRAT, [2, 1]), eij(QRAT, 2, 0, 1)], QRAT)
    assert rank == 1 and witness

    rank2, witness2 = _radical_rank([diag(QRAT, [2, 3])], QRAT)
    assert rank2 == 0 and witness2 == []

    gens3 = [diag(QRAT, [2, 3, 5]), eij(QRAT, 3, 0, 1), eij(QRAT, 3, 1, 2)]
    rank3, witness3 = _radical_rank(gens3, QRAT)
    assert rank3 == 3
    # the witness generates a subgroup of the radical of the same rank
    assert unipotent_rank(witness3, QRAT) == 3


def test_radical_monotone_saturation():
    # the loop's rank sequence is checked internally; a nontrivial case where
    # conjugation genuinely enlarges the span
    gens = [diag(QRAT, [1, 2]), eij(QRAT, 2, 0, 1)]
    rank, witness = _radical_rank(gens, QRAT)
    assert rank == 1


def test_radical_on_unipotent_corpus_groups():
    for group in build_corpus():
        if not group.unipotent:
            continue
        rank, witness = _radical_rank(group.gens, group.spec)
        assert rank == unipotent_rank(group.gens, group.spec), group.name
