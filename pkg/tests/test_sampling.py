import itertools

import pytest

from csmetric import (ConfigurationError, DomainError, PointDomain,
                      SampleConfig, sample_tuples)

INTERVAL = PointDomain.real_interval(0.0, 1.0)
NATS = PointDomain.naturals_up_to(4)
FINITE = PointDomain.finite_real_set([0.5, 1.5, 2.5])


@pytest.mark.parametrize("strategy", ["uniform_random", "stratified_grid", "grid_plus_random"])
@pytest.mark.parametrize("domain", [INTERVAL, NATS, FINITE])
def test_replay_is_exact(strategy, domain):
    cfg = SampleConfig(seed=7, count=500, strategy=strategy)
    assert sample_tuples(domain, 3, cfg) == sample_tuples(domain, 3, cfg)


@pytest.mark.parametrize("strategy", ["uniform_random", "stratified_grid", "grid_plus_random"])
def test_count_growth_only_appends(strategy):
    small = SampleConfig(seed=3, count=400, strategy=strategy)
    large = SampleConfig(seed=3, count=800, strategy=strategy)
    a = sample_tuples(INTERVAL, 2, small)
    b = sample_tuples(INTERVAL, 2, large)
    assert b[:len(a)] == a


@pytest.mark.parametrize("domain", [INTERVAL, NATS, FINITE])
def test_samples_stay_in_domain(domain):
    cfg = SampleConfig(seed=11, count=300)
    for tup in sample_tuples(domain, 4, cfg):
        assert all(domain.contains(x) for x in tup)


def test_naturals_are_exact_integers():
    cfg = SampleConfig(seed=1, count=200, strategy="uniform_random")
    for tup in sample_tuples(NATS, 2, cfg):
        assert all(isinstance(x, int) for x in tup)


def test_discrete_grid_is_exhaustive():
    cfg = SampleConfig(seed=0, count=10 ** 6, strategy="stratified_grid")
    tuples = sample_tuples(NATS, 2, cfg)
    assert len(tuples) == 25
    assert set(tuples) == set(itertools.product(range(5), repeat=2))


def test_discrete_grid_exhausts_quadruples():
    cfg = SampleConfig(seed=0, count=10 ** 6, strategy="stratified_grid")
    tuples = sample_tuples(NATS, 4, cfg)
    assert len(tuples) == 5 ** 4
    assert len(set(tuples)) == 5 ** 4


def test_dyadic_refinement_never_repeats():
    cfg = SampleConfig(seed=0, count=2000, strategy="stratified_grid")
    tuples = sample_tuples(INTERVAL, 2, cfg)
    assert len(set(tuples)) == len(tuples)


def test_grid_block_contains_corners():
    cfg = SampleConfig(seed=5, count=5000, strategy="grid_plus_random")
    tuples = sample_tuples(INTERVAL, 3, cfg)
    assert (0.0, 0.0, 0.0) in tuples
    assert (1.0, 1.0, 1.0) in tuples


def test_pinned_tuples_lead_the_stream():
    pins = ((0.25, 0.75), (0.5, 0.5))
    cfg = SampleConfig(seed=5, count=100, pinned=pins)
    tuples = sample_tuples(INTERVAL, 2, cfg)
    assert tuple(tuples[:2]) == pins


def test_pinned_other_arities_are_skipped():
    cfg = SampleConfig(seed=5, count=10, pinned=((0.1, 0.2, 0.3),))
    pairs = sample_tuples(INTERVAL, 2, cfg)
    assert (0.1, 0.2, 0.3) not in pairs
    triples = sample_tuples(INTERVAL, 3, cfg)
    assert triples[0] == (0.1, 0.2, 0.3)


def test_pinned_must_live_in_domain():
    cfg = SampleConfig(seed=5, count=10, pinned=((2.0, 0.5),))
    with pytest.raises(DomainError):
        sample_tuples(INTERVAL, 2, cfg)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        SampleConfig(seed=-1)
    with pytest.raises(ConfigurationError):
        SampleConfig(count=-5)
    with pytest.raises(ConfigurationError):
        SampleConfig(strategy="lattice")
    with pytest.raises(ConfigurationError):
        sample_tuples(INTERVAL, 0, SampleConfig())
