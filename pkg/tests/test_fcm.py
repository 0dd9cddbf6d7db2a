import numpy as np
import pytest

from eerpms import fuzzy_c_means


def two_blobs(rng, n_per=5, centers=((100.0, 0.0), (-100.0, 0.0))):
    points = []
    for cx, cy in centers:
        points.extend((cx + rng.normal(0, 3), cy + rng.normal(0, 3))
                      for _ in range(n_per))
    return np.array(points)


def test_single_cluster_is_trivial():
    rng = np.random.default_rng(1)
    points = rng.uniform(-50, 50, size=(20, 2))
    labels, centers = fuzzy_c_means(points, 1, rng)
    assert (labels == 0).all()
    assert centers[0] == pytest.approx(points.mean(axis=0))


def test_recovers_separated_groups():
    rng = np.random.default_rng(7)
    points = two_blobs(rng)
    labels, centers = fuzzy_c_means(points, 2, rng)
    first, second = labels[:5], labels[5:]
    assert len(set(first.tolist())) == 1
    assert len(set(second.tolist())) == 1
    assert first[0] != second[0]
    # centers land on the blob centroids
    got = sorted(float(c[0]) for c in centers)
    assert got[0] == pytest.approx(-100.0, abs=5.0)
    assert got[1] == pytest.approx(100.0, abs=5.0)


def test_deterministic_given_rng_state():
    points = np.random.default_rng(3).uniform(-100, 100, size=(30, 2))
    la, ca = fuzzy_c_means(points, 4, np.random.default_rng(11))
    lb, cb = fuzzy_c_means(points, 4, np.random.default_rng(11))
    assert (la == lb).all()
    assert ca == pytest.approx(cb)


def test_point_on_center_belongs_to_it():
    points = np.array([[0.0, 0.0], [0.0, 0.0], [50.0, 0.0], [50.0, 1.0]])
    labels, _ = fuzzy_c_means(points, 2, np.random.default_rng(0))
    assert labels[0] == labels[1]
    assert labels[2] == labels[3]
    assert labels[0] != labels[2]


def test_k_bounds_enforced():
    points = np.zeros((3, 2))
    with pytest.raises(ValueError):
        fuzzy_c_means(points, 4, np.random.default_rng(0))
    with pytest.raises(ValueError):
        fuzzy_c_means(points, 0, np.random.default_rng(0))
