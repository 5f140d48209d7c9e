import math

import pytest

import bwskit


def make_items(count):
    return bwskit.ItemSet([bwskit.Item(f"i{k:03d}") for k in range(1, count + 1)])


def test_version_is_exposed():
    assert bwskit.__version__.count(".") == 2


def test_generated_design_is_balanced():
    items = make_items(30)
    spec = bwskit.DesignSpec(tuple_size=4, tuple_count=60, seed=7)
    tuples = bwskit.generate_tuples(items, spec)
    assert len(tuples) == 60

    report = bwskit.verify_tuple_set(tuples, items)
    assert report.balanced()
    assert report.within_tuple_duplicates == 0
    assert report.unknown_item_ids == []
    assert report.appearance_sum == 240


def test_counting_scores():
    tuples = bwskit.TupleSet([bwskit.Tuple("t1", ["a", "b", "c", "d"])])
    responses = [
        bwskit.BwsResponse("t1", "ann1", "a", "d"),
        bwskit.BwsResponse("t1", "ann2", "a", "c"),
    ]
    table = bwskit.score_bws(tuples, responses)
    scores = {entry.item_id: entry.score for entry in table.entries}
    assert scores == {"a": 1.0, "b": 0.0, "c": -0.5, "d": -0.5}


def test_rating_scores_and_normalization():
    scale = bwskit.ScaleConfig(-4, 4)
    responses = [bwskit.RsResponse("a", f"ann{k}", r) for k, r in enumerate([3, 4, 4])]
    table = bwskit.score_rs(responses, scale)
    assert table.entries[0].n_ratings == 3
    assert math.isclose(table.entries[0].score, 11 / 3)

    normalized = bwskit.normalize_scores(table, scale)
    assert normalized.normalized
    assert math.isclose(normalized.entries[0].score, (11 / 3 + 4) / 8)


def test_gold_filter_drops_inaccurate_annotators():
    gold = [bwskit.BwsGold("t1", "a", "d")]
    responses = [
        bwskit.BwsResponse("t1", "good", "a", "d"),
        bwskit.BwsResponse("t1", "bad", "d", "a"),
        bwskit.BwsResponse("t2", "bad", "x", "y"),
    ]
    result = bwskit.filter_gold_bws(responses, gold, threshold=0.7)
    assert [r.annotator_id for r in result.retained] == ["good"]
    rejected = {a.annotator_id for a in result.annotators if a.rejected}
    assert rejected == {"bad"}


def test_simulation_and_reliability_roundtrip():
    items = make_items(40)
    spec = bwskit.DesignSpec(tuple_size=4, tuple_count=80, seed=11)
    tuples = bwskit.generate_tuples(items, spec)
    world = bwskit.make_world(items, seed=3)
    model = bwskit.AnnotatorModel(perception_noise_sd=0.2, rs_bias_sd=0.1, annotator_count=8)
    scale = bwskit.ScaleConfig(-4, 4)

    bws = bwskit.simulate_bws(world, tuples, k=4, model=model, seed=21)
    matched = bwskit.matched_budgets(len(items), len(tuples), 4)
    assert matched.integral
    rs = bwskit.simulate_rs(world, items, k=matched.ratings_per_item, model=model,
                            scale=scale, seed=22)
    assert len(bws) == len(rs)

    report_bws = bwskit.shr_bws(tuples, bws, trials=10, seed=5)
    report_rs = bwskit.shr_rs(rs, scale, trials=10, seed=5)
    assert report_bws.trials == 10
    assert -1.0 <= report_bws.mean_rho <= 1.0
    assert -1.0 <= report_rs.mean_rho <= 1.0

    comparison = bwskit.compare_methods(
        bwskit.normalize_scores(bwskit.score_bws(tuples, bws), scale),
        bwskit.normalize_scores(bwskit.score_rs(rs, scale), scale),
    )
    assert comparison.item_count == len(items)

    diff = bwskit.shr_difference_test(report_bws, report_rs, resamples=200, seed=9)
    assert 0.0 < diff.p_value <= 1.0


def test_simulation_is_deterministic():
    items = make_items(20)
    tuples = bwskit.generate_tuples(items, bwskit.DesignSpec(4, 40, 2))
    world = bwskit.make_world(items, seed=1)
    model = bwskit.AnnotatorModel()

    def run():
        out = bwskit.simulate_bws(world, tuples, k=3, model=model, seed=17)
        return [(r.tuple_id, r.annotator_id, r.best_id, r.worst_id) for r in out]

    assert run() == run()


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        bwskit.ItemSet([])
    with pytest.raises(ValueError):
        bwskit.ScaleConfig(4, 4)
