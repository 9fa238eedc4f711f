import json
import os
import pathlib

import numpy as np
import pytest

import diabpred

HEADER = ("Diabetes_012,HighBP,HighChol,CholCheck,BMI,Smoker,Stroke,HeartDiseaseorAttack,"
          "PhysActivity,Fruits,Veggies,HvyAlcoholConsump,AnyHealthcare,NoDocbcCost,GenHlth,"
          "MentHlth,PhysHlth,DiffWalk,Sex,Age,Education,Income")


def write_table(path, rows=600, seed=0):
    rng = np.random.default_rng(seed)
    lines = [HEADER]
    for _ in range(rows):
        bp, chol = rng.integers(0, 2, size=2)
        gen = rng.integers(1, 6)
        risk = 0.05 + 0.3 * bp + 0.2 * chol + 0.05 * gen
        target = 2 if rng.random() < risk else 0
        row = [target, bp, chol, 1, rng.integers(18, 45)] + list(rng.integers(0, 2, size=9)) + [
            gen, rng.integers(0, 31), rng.integers(0, 31), rng.integers(0, 2), rng.integers(0, 2),
            rng.integers(1, 14), rng.integers(1, 7), rng.integers(1, 9)]
        lines.append(",".join(str(int(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture()
def table(tmp_path):
    return write_table(tmp_path / "brfss.csv")


def test_load_and_smote(table):
    names, values = diabpred.load_csv(str(table))
    assert names[0] == "Diabetes_012" and len(names) == 22
    assert values.shape == (600, 22)
    y = (values[:, 0] > 0).astype(np.int32)
    xb, yb = diabpred.smote(values[:, 1:], y, seed=1)
    assert yb.sum() * 2 == len(yb)
    assert np.array_equal(xb[:600], values[:, 1:])


def test_models_and_metrics():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(400, 3))
    y = (x[:, 0] + 0.3 * rng.normal(size=400) > 0).astype(np.int32)
    lr = diabpred.fit_logistic(x, y)
    assert lr.converged and lr.weights[0] > 0
    p = lr.predict_proba(x)
    assert diabpred.roc_auc(y, p) > 0.9
    again = diabpred.LogisticModel.from_text(lr.to_text())
    assert np.array_equal(again.predict_proba(x), p)

    tree = diabpred.fit_tree(x, y, max_depth=3)
    assert tree.depth <= 3
    labels, scores = tree.predict(x)
    rep = diabpred.classification_report(y, labels)
    assert rep["accuracy"] > 0.8 and rep["1"]["support"] == int(y.sum())
    assert "accuracy" in diabpred.format_report(y, labels)


def test_grid_search_counts_fits():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(200, 2))
    y = (x[:, 1] > 0).astype(np.int32)
    result = diabpred.grid_search(x, y, "logistic")
    assert result["n_fits"] == 50
    assert set(result["best_params"]) == {"C", "optimizer"}


def test_run_train_writes_report(table, tmp_path):
    run_dir, report = diabpred.run("train", str(table), str(tmp_path / "runs"), config={"seed": 7})
    assert report["config"]["seed"] == "7"
    on_disk = json.loads((pathlib.Path(run_dir) / "report.json").read_text())
    assert on_disk == report
    assert "Model Report" in diabpred.render_report(report)


def test_errors_carry_kind(tmp_path):
    with pytest.raises(diabpred.DiabpredError) as err:
        diabpred.load_csv(str(tmp_path / "missing.csv"))
    assert err.value.kind == "Io"
    assert diabpred.error_kind_exit_code(err.value.kind) == 2
    with pytest.raises(diabpred.DiabpredError):
        diabpred.run("train", str(tmp_path / "x.csv"), config={"smotee": "1"})
