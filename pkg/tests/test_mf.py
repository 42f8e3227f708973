import numpy as np
import pytest

from skinrec.catalog import CONCERN_ORDER, SKIN_TYPE_ORDER, Concern, SkinType
from skinrec.errors import IndexOutOfRange, ModelFormatError
from skinrec.mf import (
    MFConfig,
    ProfileIndex,
    build_interactions,
    load_model,
    objective,
    objective_grad,
    save_model,
    score,
    train,
)

# damped configuration for trajectory monotonicity checks: the lr=0.01 /
# momentum=0.9 defaults overshoot early on and only settle around epoch 120
DAMPED = MFConfig(learning_rate=0.002, momentum=0.9, epochs=500, seed=0)


def rank1_fixture(seed=7, n=12):
    rng = np.random.default_rng(seed)
    a = (rng.random(20) < 0.5).astype(float)
    b = (rng.random(n) < 0.5).astype(float)
    return a, b, np.outer(a, b)


# ------------------------------------------------------------------- profiles

def test_profile_index_has_twenty_row_major_pairs():
    profiles = ProfileIndex.default()
    assert len(profiles) == 20
    assert profiles.pairs[0] == (SkinType.COMBINATION, Concern.ACNE)
    assert profiles.pairs[1] == (SkinType.COMBINATION, Concern.CLEAR_SKIN)
    assert profiles.pairs[4] == (SkinType.DRY, Concern.ACNE)
    for st_index, skin_type in enumerate(SKIN_TYPE_ORDER):
        for c_index, concern in enumerate(CONCERN_ORDER):
            assert profiles.row_of(skin_type, concern) == st_index * 4 + c_index


# --------------------------------------------------------------- interactions

def test_interactions_dry_acne_row_marks_table_product(catalog, interactions):
    profiles = interactions.profiles
    row = profiles.row_of(SkinType.DRY, Concern.ACNE)
    col = catalog.by_id[1]  # Moisturizer / Acne / Dry=1
    assert interactions.r[row, col] == 1.0


def test_interactions_respect_suitability(catalog, interactions):
    profiles = interactions.profiles
    row = profiles.row_of(SkinType.DRY, Concern.ACNE)
    col = catalog.by_id[11]  # Dry=0
    assert interactions.r[row, col] == 0.0


def test_interactions_all_false_product_gives_zero_column():
    import io

    from skinrec.catalog import load_catalog

    text = (
        "Label,Issue,brand,name,ingredients,Combination,Dry,Normal,Oily,Sensitive\n"
        "Cleanser,Acne,ACME,Foam,water,0,0,0,0,0\n"
    )
    inter = build_interactions(load_catalog(io.StringIO(text)))
    assert inter.r.sum() == 0


def test_interactions_column_sums_match_counting_oracle(catalog, interactions):
    for col, product in enumerate(catalog.products):
        expected = sum(
            1
            for skin_type in SKIN_TYPE_ORDER
            for concern in CONCERN_ORDER
            if product.suits(skin_type) and product.targets(concern)
        )
        assert interactions.r[:, col].sum() == expected


def test_interactions_entries_are_binary(interactions):
    assert set(np.unique(interactions.r)) <= {0.0, 1.0}
    assert interactions.r.shape[0] == 20


# ------------------------------------------------------------------- training

def test_train_rank1_target_reconstructs():
    _, _, r = rank1_fixture()
    model = train(r, MFConfig(k=1, reg=0.0, epochs=2000, seed=0))
    mse = float(np.mean((r - model.u_factors @ model.v_factors.T) ** 2))
    assert mse < 1e-3


def test_train_all_zero_matrix_with_reg_collapses_scores():
    model = train(np.zeros((20, 12)), MFConfig(reg=0.5, epochs=500, seed=0))
    predictions = model.u_factors @ model.v_factors.T
    assert np.all(np.abs(predictions) < 1e-2)


def test_train_same_seed_identical_model(interactions):
    cfg = MFConfig(epochs=60, seed=5)
    a = train(interactions, cfg)
    b = train(interactions, cfg)
    np.testing.assert_array_equal(a.u_factors, b.u_factors)
    np.testing.assert_array_equal(a.v_factors, b.v_factors)
    assert a.final_loss == b.final_loss


def test_train_factor_shapes(interactions, model):
    n = interactions.r.shape[1]
    assert model.u_factors.shape == (20, model.k)
    assert model.v_factors.shape == (n, model.k)
    assert np.all(np.isfinite(model.u_factors))
    assert np.all(np.isfinite(model.v_factors))


def test_loss_trace_non_increasing_after_epoch_10(interactions):
    model = train(interactions, DAMPED)
    trace = np.array(model.loss_trace)
    assert np.all(np.diff(trace[10:]) <= 1e-8)


def test_objective_matches_naive_triple_loop(interactions, model):
    r = interactions.r
    u, v = model.u_factors, model.v_factors
    loss = objective(r, u, v, model.reg)
    naive = 0.0
    for i in range(r.shape[0]):
        for j in range(r.shape[1]):
            naive += (r[i, j] - float(np.dot(u[i], v[j]))) ** 2
    naive += model.reg * (float(np.sum(u * u)) + float(np.sum(v * v)))
    assert abs(loss - naive) < 1e-9


def test_objective_gradient_matches_finite_differences():
    rng = np.random.default_rng(2)
    r = (rng.random((4, 6)) < 0.4).astype(float)
    u = rng.normal(0, 0.1, size=(4, 2))
    v = rng.normal(0, 0.1, size=(6, 2))
    reg = 0.05
    grad_u, grad_v = objective_grad(r, u, v, reg)
    h = 1e-5
    for matrix, grad in ((u, grad_u), (v, grad_v)):
        numeric = np.zeros_like(matrix)
        for i in range(matrix.shape[0]):
            for j in range(matrix.shape[1]):
                up = matrix.copy()
                down = matrix.copy()
                up[i, j] += h
                down[i, j] -= h
                if matrix is u:
                    plus = objective(r, up, v, reg)
                    minus = objective(r, down, v, reg)
                else:
                    plus = objective(r, u, up, reg)
                    minus = objective(r, u, down, reg)
                numeric[i, j] = (plus - minus) / (2 * h)
        assert np.max(np.abs(grad - numeric)) < 1e-4


# -------------------------------------------------------------------- scoring

def test_score_rank1_hit_is_near_one():
    a, b, r = rank1_fixture()
    model = train(r, MFConfig(k=1, reg=0.0, epochs=2000, seed=0))
    profiles = ProfileIndex.default()
    hits = [(u, p) for u in range(20) for p in range(r.shape[1]) if r[u, p] == 1.0]
    u, p = hits[0]
    skin_type, concern = profiles.pairs[u]
    assert abs(score(model, skin_type, concern, p) - 1.0) < 0.05


def test_score_zero_factors_is_zero(model):
    from dataclasses import replace

    zeroed = replace(
        model,
        u_factors=np.zeros_like(model.u_factors),
        v_factors=np.zeros_like(model.v_factors),
    )
    assert score(zeroed, SkinType.DRY, Concern.ACNE, 0) == 0.0


def test_score_all_profiles_match_naive_dot_oracle(model):
    profiles = ProfileIndex.default()
    product_row = 3
    for row, (skin_type, concern) in enumerate(profiles.pairs):
        naive = sum(
            float(model.u_factors[row, k0]) * float(model.v_factors[product_row, k0])
            for k0 in range(model.k)
        )
        assert abs(score(model, skin_type, concern, product_row) - naive) < 1e-12


def test_score_bad_product_row(model):
    with pytest.raises(IndexOutOfRange):
        score(model, SkinType.DRY, Concern.ACNE, model.v_factors.shape[0])


# ---------------------------------------------------------------- persistence

def test_model_save_load_roundtrip(tmp_path, model):
    path = tmp_path / "model.mf"
    save_model(model, path)
    assert path.read_text().startswith("MFv1\n")
    loaded = load_model(path)
    np.testing.assert_array_equal(loaded.u_factors, model.u_factors)
    np.testing.assert_array_equal(loaded.v_factors, model.v_factors)
    assert loaded.k == model.k
    assert loaded.reg == model.reg
    assert loaded.seed == model.seed
    assert loaded.final_loss == model.final_loss
    assert loaded.fingerprint == model.fingerprint


def test_model_load_rejects_wrong_magic(tmp_path):
    path = tmp_path / "bad.mf"
    path.write_text("NOPE\nk=1\n")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_model_load_rejects_truncated_file(tmp_path, model):
    path = tmp_path / "model.mf"
    save_model(model, path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[: len(lines) // 2]))
    with pytest.raises(ModelFormatError):
        load_model(path)
