"""Tests for the random baseline, bands, A/B pair enumeration, and ranking."""

import math
from itertools import combinations

import pytest

from plutchik_pea.agreement import AnnotationRecord
from plutchik_pea.calibration import (
    ABPair,
    AgreementBand,
    CalibrationResult,
    Ranking,
    annotation_index,
    enumerate_ab_pairs,
    interpret,
    pea_rank,
    random_baseline,
    sample_hits,
)
from plutchik_pea.wheel import Emotion24

E = Emotion24


def rec(item, worker, *emotions):
    return AnnotationRecord(item_id=item, worker_id=worker, emotions=frozenset(emotions))


# ---------------------------------------------------------------- baseline


def test_baseline_is_deterministic():
    a = random_baseline(n_annotations=200, seed=5)
    b = random_baseline(n_annotations=200, seed=5)
    assert a == b


def test_baseline_seeds_differ():
    a = random_baseline(n_annotations=200, seed=1)
    b = random_baseline(n_annotations=200, seed=2)
    assert a.scores != b.scores


def test_baseline_saturates_when_everyone_picks_everything():
    result = random_baseline(n_annotations=100, emotions_per_annotation=8, seed=3)
    assert all(s == 1.0 for s in result.scores)
    assert result.mean == 1.0


def test_baseline_one_score_per_annotation():
    result = random_baseline(n_annotations=250, workers_per_item=5, seed=0)
    assert len(result.scores) == 250  # 50 items x 5 single-use workers
    assert sum(result.histogram) == 250
    assert len(result.histogram) == 20


def test_baseline_mean_reflects_best_match_scoring():
    # with 3-of-8 random subsets, crediting each choice with its best
    # counterpart concentrates well above the midpoint
    result = random_baseline(n_annotations=2000, seed=0)
    assert 0.77 <= result.mean <= 0.82


def test_baseline_validates_parameters():
    with pytest.raises(ValueError, match="positive"):
        random_baseline(n_annotations=0)
    with pytest.raises(ValueError, match="<= 8"):
        random_baseline(emotions_per_annotation=9)
    with pytest.raises(ValueError, match="two workers"):
        random_baseline(workers_per_item=1)


def test_baseline_warns_on_ragged_division():
    with pytest.warns(UserWarning, match="dropped"):
        random_baseline(n_annotations=52, workers_per_item=5, seed=0)


def test_calibration_result_validates_consistency():
    with pytest.raises(ValueError, match="inconsistent"):
        CalibrationResult(scores=(0.5, 0.5), mean=0.9, histogram=(2,))
    with pytest.raises(ValueError, match="histogram"):
        CalibrationResult(scores=(0.5, 0.5), mean=0.5, histogram=(1,))
    with pytest.raises(ValueError, match="no scores"):
        CalibrationResult(scores=(), mean=0.0, histogram=())


def test_histogram_top_bin_owns_exact_one():
    result = random_baseline(n_annotations=100, emotions_per_annotation=8, seed=0)
    assert result.histogram[-1] == len(result.scores)


# ---------------------------------------------------------------- interpret


def test_interpret_fixture_values():
    assert interpret(0.30) is AgreementBand.POOR
    assert interpret(0.657) is AgreementBand.MODERATE
    assert interpret(1.0) is AgreementBand.HIGH
    assert interpret(0.0) is AgreementBand.NONE


def test_interpret_boundaries_belong_to_the_upper_band():
    assert interpret(0.25) is AgreementBand.POOR
    assert interpret(0.50) is AgreementBand.MODERATE
    assert interpret(0.75) is AgreementBand.HIGH


def test_interpret_rejects_out_of_range():
    with pytest.raises(ValueError):
        interpret(-0.01)
    with pytest.raises(ValueError):
        interpret(1.01)


def test_interpret_is_monotone():
    order = list(AgreementBand)
    previous = 0
    for i in range(101):
        band = interpret(i / 100)
        assert order.index(band) >= previous
        previous = order.index(band)


# ---------------------------------------------------------------- ab pairs


def annotations_with_workers(item, m):
    return [rec(item, f"w{k}", E.JOY) for k in range(m)]


def test_pair_counts_match_formula():
    for m in range(2, 7):
        pairs = enumerate_ab_pairs(annotations_with_workers("t", m))
        expected = m * math.comb(m - 1, 2)
        assert len(pairs) == expected


def test_three_workers_give_three_pairs():
    pairs = enumerate_ab_pairs(annotations_with_workers("t", 3))
    assert len(pairs) == 3
    assert {p.shared_worker for p in pairs} == {"w0", "w1", "w2"}


def test_five_workers_match_brute_force():
    workers = [f"w{k}" for k in range(5)]
    brute = {
        (shared, frozenset(combo))
        for shared in workers
        for combo in combinations([w for w in workers if w != shared], 2)
    }
    pairs = enumerate_ab_pairs(annotations_with_workers("t", 5))
    assert len(pairs) == len(brute) == 30
    assert {(p.shared_worker, frozenset((p.pair_a[1], p.pair_b[1]))) for p in pairs} == brute


def test_pair_invariants():
    records = annotations_with_workers("t", 5) + annotations_with_workers("u", 4)
    for p in enumerate_ab_pairs(records):
        assert p.pair_a[0] == p.shared_worker == p.pair_b[0]
        assert p.pair_a[1] != p.pair_b[1]
        assert p.shared_worker not in (p.pair_a[1], p.pair_b[1])


def test_small_items_yield_no_pairs():
    records = annotations_with_workers("t", 2) + annotations_with_workers("u", 1)
    assert enumerate_ab_pairs(records) == []


def test_enumeration_order_is_stable():
    records = annotations_with_workers("t", 4)
    assert enumerate_ab_pairs(records) == enumerate_ab_pairs(list(reversed(records)))


# ---------------------------------------------------------------- sampling


def fake_pairs(n):
    return [
        ABPair(f"t{i}", "w0", ("w0", "w1"), ("w0", "w2")) for i in range(n)
    ]


def test_sample_hits_batch_count():
    batches = sample_hits(fake_pairs(600), n_sample=500, pairs_per_hit=10, seed=0)
    assert len(batches) == 50
    assert all(len(b.pairs) == 10 for b in batches)
    assert [b.hit_id for b in batches] == [f"hit-{i:03d}" for i in range(50)]


def test_sample_hits_short_last_batch_warns():
    with pytest.warns(UserWarning, match="short"):
        batches = sample_hits(fake_pairs(12), n_sample=12, pairs_per_hit=10, seed=0)
    assert [len(b.pairs) for b in batches] == [10, 2]


def test_sample_hits_is_deterministic_and_without_replacement():
    pool = fake_pairs(40)
    a = sample_hits(pool, n_sample=20, pairs_per_hit=5, seed=9)
    b = sample_hits(pool, n_sample=20, pairs_per_hit=5, seed=9)
    assert a == b
    sampled = [p for batch in a for p in batch.pairs]
    assert len(sampled) == len(set(sampled)) == 20


def test_sample_hits_errors():
    with pytest.raises(ValueError, match="empty"):
        sample_hits([], n_sample=1)
    with pytest.raises(ValueError, match="cannot sample 10"):
        sample_hits(fake_pairs(5), n_sample=10)
    with pytest.raises(ValueError, match="positive"):
        sample_hits(fake_pairs(5), n_sample=0)


# ---------------------------------------------------------------- ranking


def test_rank_identical_beats_opposite():
    records = [
        rec("t", "w1", E.JOY),
        rec("t", "w2", E.JOY),      # A pair: identical
        rec("t", "w3", E.GRIEF),    # B pair: opposite group
    ]
    pair = ABPair("t", "w1", ("w1", "w2"), ("w1", "w3"))
    assert pea_rank(pair, annotation_index(records)) is Ranking.A_HIGHER


def test_rank_equal_pairs_are_same():
    records = [
        rec("t", "w1", E.JOY),
        rec("t", "w2", E.JOY),
        rec("t", "w3", E.JOY),
    ]
    pair = ABPair("t", "w1", ("w1", "w2"), ("w1", "w3"))
    assert pea_rank(pair, annotation_index(records)) is Ranking.SAME


def test_rank_b_higher():
    records = [
        rec("t", "w1", E.JOY),
        rec("t", "w2", E.GRIEF),
        rec("t", "w3", E.JOY),
    ]
    pair = ABPair("t", "w1", ("w1", "w2"), ("w1", "w3"))
    assert pea_rank(pair, annotation_index(records)) is Ranking.B_HIGHER


def test_rank_directed_flag_changes_the_comparison():
    records = [
        rec("t", "w1", E.JOY, E.GRIEF),
        rec("t", "w2", E.JOY),
        rec("t", "w3", E.FEAR),
    ]
    pair = ABPair("t", "w1", ("w1", "w2"), ("w1", "w3"))
    index = annotation_index(records)
    assert pea_rank(pair, index) is Ranking.A_HIGHER
    assert pea_rank(pair, index, directed=True) is Ranking.SAME


def test_rank_missing_annotation_is_an_error():
    records = [rec("t", "w1", E.JOY), rec("t", "w2", E.JOY)]
    pair = ABPair("t", "w1", ("w1", "w2"), ("w1", "w3"))
    with pytest.raises(ValueError, match="missing annotation.*w3"):
        pea_rank(pair, annotation_index(records))
