import numpy as np
import pytest

from netdrift import (
    RunRecord,
    SimParams,
    active_choices,
    build_complete,
    build_lattice,
    build_preset,
    build_superstar,
    degree_stats,
    expected_choice_count,
    lifespan,
    lifespans,
    rank_size,
    run,
    top_overlap,
    top_popular,
    top_survivors,
)


def make_record(first, last, total, n_agents, periods, active_ge=None):
    if active_ge is None:
        active_ge = np.zeros((periods, 8), dtype=np.int32)
    return RunRecord(n_agents=n_agents, periods=periods,
                     first_period=np.array(first, dtype=np.int32),
                     last_period=np.array(last, dtype=np.int32),
                     total_selections=np.array(total, dtype=np.int64),
                     active_ge=active_ge)


# choice table: id 0 lives [0,3] total 5; id 1 lives [0,0] total 1;
# id 2 lives [1,3] total 4; id 3 lives [2,2] total 2 -> sum 12 = 3 agents x 4
REC = make_record(first=[0, 0, 1, 2], last=[3, 0, 3, 2],
                  total=[5, 1, 4, 2], n_agents=3, periods=4)


def test_rank_size_sorted_descending():
    assert rank_size(REC).tolist() == [5, 4, 2, 1]


def test_rank_size_sum_is_agents_times_periods():
    assert rank_size(REC).sum() == 3 * 4


def test_lifespan_values():
    assert lifespans(REC).tolist() == [4, 1, 3, 1]
    assert lifespan(REC, 0) == 4
    assert lifespan(REC, 3) == 1


def test_lifespan_unknown_choice():
    with pytest.raises(KeyError):
        lifespan(REC, 99)
    with pytest.raises(KeyError):
        lifespan(REC, -1)


def test_top_survivors_tie_broken_by_id():
    assert top_survivors(REC, 3) == [(0, 4), (2, 3), (1, 1)]
    assert top_survivors(REC, 10) == [(0, 4), (2, 3), (1, 1), (3, 1)]


def test_top_popular():
    assert top_popular(REC, 2) == [(0, 5), (2, 4)]


def test_top_popular_matches_rank_size_head():
    rec = run(build_complete(12), SimParams(mu=0.15, periods=60, seed=9))
    curve = rank_size(rec)
    for k in (1, 5, 20):
        assert [v for _, v in top_popular(rec, k)] == curve[:k].tolist()


def test_top_popular_ties_by_id():
    rec = make_record(first=[0, 0, 0], last=[1, 1, 1], total=[2, 2, 2],
                      n_agents=3, periods=2)
    assert top_popular(rec, 2) == [(0, 2), (1, 2)]


def test_top_overlap_counts_intersection():
    # popular top-2 = {0, 2}; survivors top-2 = {0, 2} as well
    assert top_overlap(REC, 2) == 2
    # different sets: popularity favours 3, survival favours 2
    rec = make_record(first=[0, 0, 0, 3], last=[0, 3, 2, 3],
                      total=[1, 2, 3, 6], n_agents=3, periods=4)
    # popular top-2 = {3, 2}; survivor top-2 = {1, 2}
    assert top_overlap(rec, 2) == 1


def test_top_overlap_caps_at_distinct():
    assert top_overlap(REC, 50) == REC.distinct_choices_ever


def test_top_k_validation():
    with pytest.raises(ValueError):
        top_survivors(REC, 0)
    with pytest.raises(ValueError):
        top_popular(REC, -1)


def test_active_choices_mean():
    ge = np.zeros((4, 8), dtype=np.int32)
    ge[:, 0] = [3, 2, 2, 1]  # threshold 1
    ge[:, 1] = [0, 1, 1, 1]  # threshold 2
    rec = make_record(first=[0], last=[3], total=[12], n_agents=3, periods=4,
                      active_ge=ge)
    assert active_choices(rec, 1) == pytest.approx(2.0)
    assert active_choices(rec, 2) == pytest.approx(0.75)


def test_active_choices_monotone_in_threshold():
    rec = run(build_lattice(4), SimParams(mu=0.1, periods=80, seed=31))
    values = [active_choices(rec, t) for t in range(1, rec.threshold_cap + 1)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_active_choices_threshold_validation():
    rec = run(build_complete(5), SimParams(mu=0.0, periods=10, seed=0))
    with pytest.raises(ValueError):
        active_choices(rec, 0)
    with pytest.raises(ValueError):
        active_choices(rec, rec.threshold_cap + 1)


def test_active_threshold_one_after_fixation_is_one():
    # complete graph fixates fast at mu=0; late periods hold one choice
    rec = run(build_complete(10), SimParams(mu=0.0, periods=400, seed=2))
    assert rec.active_ge[-1, 0] == 1


def test_expected_choice_count():
    assert expected_choice_count(475, 0.0025, 2000) == pytest.approx(2848.8125)
    assert expected_choice_count(475, 0.05, 2000) == pytest.approx(47951.25)
    assert expected_choice_count(484, 0.0, 2000) == 484


def test_degree_stats_complete_regular():
    ds = degree_stats(build_preset("complete475"))
    assert ds.mean == 474
    assert ds.variance == 0
    assert ds.skewness == 0  # zero-variance convention


def test_degree_stats_lattice_matches_multiset():
    # degree multiset {2 x4, 3 x80, 4 x400}, moments computed independently
    multiset = np.array([2] * 4 + [3] * 80 + [4] * 400, dtype=float)
    ds = degree_stats(build_preset("lattice22"))
    assert ds.mean == pytest.approx(multiset.mean())
    assert ds.variance == pytest.approx(((multiset - multiset.mean()) ** 2).mean())
    m2 = ((multiset - multiset.mean()) ** 2).mean()
    m3 = ((multiset - multiset.mean()) ** 3).mean()
    assert ds.skewness == pytest.approx(m3 / m2 ** 1.5)
    assert ds.mean == pytest.approx(1848 / 484)


def test_degree_stats_superstar_right_skewed():
    multiset = np.array([480] + [24] * 20 + [2] * 460, dtype=float)
    ds = degree_stats(build_preset("superstar2420"))
    assert ds.mean == pytest.approx(multiset.mean())
    m2 = ((multiset - multiset.mean()) ** 2).mean()
    m3 = ((multiset - multiset.mean()) ** 3).mean()
    assert ds.skewness == pytest.approx(m3 / m2 ** 1.5)
    assert ds.skewness > 0


def test_superstar_more_skewed_than_lattice():
    assert degree_stats(build_preset("superstar2420")).skewness > \
        degree_stats(build_preset("lattice22")).skewness


def test_degree_stats_regular_small():
    assert degree_stats(build_superstar(1, 3)).variance > 0  # star is not regular
    assert degree_stats(build_complete(6)).variance == 0
    assert degree_stats(build_lattice(2)).variance == 0  # 4-cycle is 2-regular


def test_rank_size_on_real_run_conserves():
    net = build_lattice(4)
    rec = run(net, SimParams(mu=0.3, periods=50, seed=77))
    curve = rank_size(rec)
    assert np.all(np.diff(curve) <= 0)
    assert curve.sum() == net.node_count * 50
