import itertools
import json
import random

import pytest

from gtorsion.permrep.perm import PermAssignment, Permutation, evaluate
from gtorsion.permrep.search import (SearchBudgetExceeded, WitnessRecord, iter_models,
                                     search_exhaustive_oracle, search_range,
                                     search_unconstrained, search_witness,
                                     verify_witness, witness_from_images)
from gtorsion.presentations import (STD, TWO_GEN, candidate, push,
                                    surgery_group_two_gen)
from gtorsion.words import commutator, invert


def brute_models(params, n, x=None, extra=()):
    """Every y with all relators trivial, by direct evaluation."""
    x = x or Permutation.full_cycle(n)
    rels = list(surgery_group_two_gen(params).relators) + list(extra)
    out = []
    for ys in itertools.permutations(range(n + 1)):
        asg = PermAssignment(n, {"x": x, "y": Permutation(ys)})
        if all(evaluate(r, asg).is_identity() for r in rels):
            out.append(Permutation(ys))
    return out


def test_table_row_2_2(filled_rows):
    row = next(r for r in filled_rows if (r["p"], r["q"]) == (2, 2))
    rec = witness_from_images((2, 2), row["x"], row["y"])
    assert rec.degree == row["n"] == 5
    assert verify_witness(rec)
    assert not rec.candidate_image.is_identity()


def test_corrupted_row_is_rejected(filled_rows):
    row = next(r for r in filled_rows if (r["p"], r["q"]) == (3, 1))
    y = list(row["y"])
    y[0], y[1] = y[1], y[0]
    with pytest.raises(ValueError):
        witness_from_images((3, 1), row["x"], y)


def test_record_round_trip():
    rec = search_witness((2, 2), 5)
    back = WitnessRecord.from_dict(json.loads(rec.to_json()))
    assert back == rec


def test_minimal_witnesses():
    assert list(search_witness((2, 2), 5).y.images) == [1, 2, 4, 0, 5, 3]
    assert list(search_witness((2, 1), 7).y.images) == [1, 3, 7, 5, 0, 6, 2, 4]
    assert search_witness((1, 1), 6) is None


@pytest.mark.parametrize("params,n", [((1, 1), 4), ((2, 2), 5), ((2, 1), 5), ((1, -1), 5),
                                      ((3, -2), 4), ((-2, 3), 5)])
def test_iter_models_matches_brute_force(params, n):
    assert list(iter_models(params, n)) == brute_models(params, n)


def test_extra_relators_are_enforced():
    a, b, _ = STD.gens()
    extra = push(commutator(invert(b), a), "std", "two_gen", (1, -1))
    models = list(iter_models((1, -1), 5, extra_relators=[extra]))
    assert models == brute_models((1, -1), 5, extra=[extra])


@pytest.mark.parametrize("params", [(1, 1), (2, 2), (3, 1), (2, -1), (-3, 2)])
def test_pruned_equals_oracle(params):
    for n in range(1, 7):
        got = search_witness(params, n)
        want = search_exhaustive_oracle(params, n)
        assert (got is None) == (want is None)
        if got:
            assert got.y == want.y


def test_other_candidates():
    cand = candidate("[b,t^{-n}bt^n]", (2, 2), n=2)
    got = search_witness((2, 2), 5, cand)
    want = search_exhaustive_oracle((2, 2), 5, cand)
    assert (got is None) == (want is None)
    if got:
        assert got.y == want.y and got.candidate_label == cand.label


@pytest.mark.parametrize("params,n", [((1, 1), 4), ((2, 2), 5), ((2, 1), 5), ((1, -1), 5)])
def test_unconstrained_matches_every_x(params, n):
    brute = any(search_exhaustive_oracle(params, n, x_image=xs) is not None
                for xs in itertools.permutations(range(n + 1)))
    assert (search_unconstrained(params, n) is not None) == brute


def test_search_range_and_budget():
    recs = search_range((2, 2), 6)
    assert [r.degree for r in recs] == [5, 6]
    with pytest.raises(SearchBudgetExceeded):
        search_range((2, 2), 12)
    with pytest.raises(SearchBudgetExceeded):
        search_exhaustive_oracle((2, 2), 10)


def test_parallel_shards_agree():
    assert search_witness((3, 2), 7, workers=2) == search_witness((3, 2), 7)


def test_random_x_constraint():
    rng = random.Random(7)
    for _ in range(4):
        xs = list(range(6))
        rng.shuffle(xs)
        got = search_witness((2, 2), 5, x_image=xs)
        want = search_exhaustive_oracle((2, 2), 5, x_image=xs)
        assert (got is None) == (want is None)
        if got:
            assert got.y == want.y


def test_bad_degree():
    with pytest.raises(ValueError):
        search_witness((1, 1), 0)
    with pytest.raises(ValueError):
        search_witness((1, 1), 3, x_image=[1, 0])


def test_witness_uses_two_gen_words():
    rec = search_witness((2, 2), 5)
    assert rec.candidate_word.alphabet == TWO_GEN
