"""Smoke tests for the python module."""

import math

import numpy as np
import pytest

import mvkit


def rng_views(seed=0, n=40, dims=(5, 6)):
    rng = np.random.default_rng(seed)
    return [rng.standard_normal((n, d)) for d in dims]


def test_validate_views_and_errors():
    views = rng_views()
    assert mvkit.validate_views(views) == (2, 40)
    with pytest.raises(mvkit.MvkitError):
        mvkit.validate_views([views[0], views[1][:-1]])


def test_cca_identical_views():
    x = np.random.default_rng(1).standard_normal((50, 3))
    result = mvkit.cca([x, x], n_components=3)
    assert np.allclose(result["correlations"], 1.0, atol=1e-8)
    assert result["scores"][0].shape == (50, 3)


def test_mv_kmeans_recovers_blobs():
    views, latent, labels = mvkit.make_latent_views(
        150, 2, [5, 6], noise_sigma=0.5, n_clusters=3, separation=8.0, seed=3
    )
    assert latent.shape == (150, 2)
    result = mvkit.mv_kmeans(views, n_clusters=3, seed=3)
    assert mvkit.adjusted_rand_index(result["labels"], labels) == pytest.approx(1.0)


def test_coreg_spectral_trace_is_monotone():
    views, _, labels = mvkit.make_latent_views(
        90, 2, [4, 4], noise_sigma=0.5, n_clusters=3, separation=8.0, seed=4
    )
    result = mvkit.coreg_spectral(views, n_clusters=3, coupling=0.5, seed=4)
    trace = result["objective_trace"]
    assert all(b >= a - 1e-9 for a, b in zip(trace, trace[1:]))
    assert mvkit.adjusted_rand_index(result["labels"], labels) >= 0.95


def test_ajive_identity():
    views = rng_views(seed=5, n=40, dims=(7, 9))
    result = mvkit.ajive(views, initial_ranks=[3, 4], n_resamples=50, seed=5)
    for v, x in enumerate(views):
        centered = x - x.mean(axis=0)
        recon = result["joint"][v] + result["individual"][v] + result["noise"][v]
        assert np.abs(recon - centered).max() < 1e-8


def test_cotraining_runs_semi_supervised():
    rng = np.random.default_rng(6)
    n = 300
    y_true = rng.integers(0, 2, n).astype(float)
    mu = np.where(y_true == 1, 1.5, -1.5)
    views = [
        np.column_stack([mu + rng.standard_normal(n), rng.standard_normal(n)])
        for _ in range(2)
    ]
    y = np.full(n, mvkit.unlabeled())
    y[:30] = y_true[:30]
    result = mvkit.cotrain_classifier(views, y, p=1, n=1, seed=6)
    accuracy = float(np.mean(result["predictions"] == y_true))
    assert accuracy >= 0.85
    assert np.allclose(result["probabilities"].sum(axis=1), 1.0, atol=1e-8)


def test_round_trip_through_disk(tmp_path):
    views, _, labels = mvkit.make_latent_views(
        20, 2, [3, 4], noise_sigma=0.2, n_clusters=2, separation=4.0, seed=7
    )
    mvkit.save_multiview_dir(views, tmp_path / "ds", labels=labels.astype(float))
    loaded, loaded_labels = mvkit.load_multiview_dir(tmp_path / "ds")
    for a, b in zip(views, loaded):
        assert np.array_equal(a, b)
    assert np.array_equal(loaded_labels, labels.astype(float))


def test_compose_round_trip():
    x = np.random.default_rng(8).standard_normal((10, 8))
    parts = mvkit.split_features(x, [3, 5])
    assert [p.shape[1] for p in parts] == [3, 2, 3]
    assert np.array_equal(mvkit.concat_views(parts), x)
    views, indices = mvkit.random_subspace(x, n_views=3, subset_size=8, seed=1)
    assert sorted(indices[0]) == list(range(8))


def test_embeddings_have_expected_shapes():
    views, _, _ = mvkit.make_latent_views(30, 2, [5, 6], noise_sigma=0.1, seed=9)
    assert mvkit.mvmds(views, 2).shape == (30, 2)
    omni = mvkit.omnibus(views, 3)
    assert len(omni["embeddings"]) == 2
    assert omni["embeddings"][0].shape == (30, 3)
    gcca = mvkit.gcca(views, 2)
    assert gcca["joint"].shape == (30, 2)
    svg = mvkit.scatter_svg(gcca["joint"])
    assert svg.startswith("<svg") and svg.count("<circle") == 30 * 4


def test_group_ica_separates_sources():
    rng = np.random.default_rng(10)
    s = rng.laplace(size=(800, 3)) / math.sqrt(2.0)
    a1 = rng.standard_normal((3, 8))
    a2 = rng.standard_normal((3, 9))
    result = mvkit.group_ica([s @ a1, s @ a2], individual_ranks=[3, 3], n_components=3, seed=10)
    assert result["converged"]
    corr = np.abs(np.corrcoef(result["sources"].T, s.T)[:3, 3:])
    # each true source is recovered by some component
    assert (corr.max(axis=0) > 0.95).all()
