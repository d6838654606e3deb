"""Multi-label node classification harness.

One-vs-rest L2-regularized logistic regression on raw embedding rows,
top-k label prediction with the true per-node label count given, and
micro/macro F1 over repeated random splits at a sweep of training ratios.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np
from sklearn.linear_model import LogisticRegression

from .graph import LabeledDataset


@dataclass(frozen=True)
class EvalConfig:
    train_ratios: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(1, 10))
    repeats: int = 10
    C: float = 1.0
    seed: int = 0
    convergence_tol: float = 1e-6
    max_iters: int = 1000

    def __post_init__(self):
        if any(not (0 < r < 1) for r in self.train_ratios):
            raise ValueError("training ratios must lie in (0, 1)")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.C <= 0:
            raise ValueError("C must be > 0")


@dataclass(frozen=True)
class OvrClassifier:
    """Per-label linear scorers.

    Labels with no positive training examples get a constant-negative scorer
    (probability 0); labels positive on every training node get probability 1.
    """

    weights: np.ndarray  # (num_labels, d); zero rows for constant scorers
    bias: np.ndarray  # (num_labels,)
    constant: np.ndarray  # (num_labels,): nan = fitted, else the fixed prob

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        scores = features @ self.weights.T + self.bias
        probs = 1.0 / (1.0 + np.exp(-scores))
        fixed = ~np.isnan(self.constant)
        probs[:, fixed] = self.constant[fixed]
        return probs


def train_logreg_ovr(
    features: np.ndarray,
    data: LabeledDataset,
    train_idx: Sequence[int],
    cfg: EvalConfig,
) -> OvrClassifier:
    """Fit one L2-regularized logistic regression per label on raw features."""
    train_idx = np.asarray(train_idx, dtype=np.int64)
    if len(train_idx) == 0:
        raise ValueError("empty training set")
    x = features[train_idx]
    num_labels = data.num_labels
    d = features.shape[1]

    weights = np.zeros((num_labels, d))
    bias = np.zeros(num_labels)
    constant = np.full(num_labels, np.nan)

    for label in range(num_labels):
        y = np.array([label in data.labels[i] for i in train_idx])
        if not y.any():
            constant[label] = 0.0
            continue
        if y.all():
            constant[label] = 1.0
            continue
        clf = LogisticRegression(
            C=cfg.C,
            tol=cfg.convergence_tol,
            max_iter=cfg.max_iters,
            solver="lbfgs",
        )
        clf.fit(x, y)
        weights[label] = clf.coef_[0]
        bias[label] = clf.intercept_[0]
    return OvrClassifier(weights=weights, bias=bias, constant=constant)


def predict_top_k(
    clf: OvrClassifier, features: np.ndarray, k_per_node: Sequence[int]
) -> list[frozenset[int]]:
    """For each node, the k highest-probability labels (ties: lower id)."""
    probs = clf.predict_proba(features)
    num_labels = probs.shape[1]
    out: list[frozenset[int]] = []
    for i, k in enumerate(k_per_node):
        if k > num_labels:
            raise ValueError(f"k = {k} exceeds label count {num_labels}")
        if k == 0:
            out.append(frozenset())
            continue
        order = np.argsort(-probs[i], kind="stable")
        out.append(frozenset(int(j) for j in order[:k]))
    return out


def f1_scores(
    predicted: Sequence[frozenset[int] | set[int]],
    truth: Sequence[frozenset[int] | set[int]],
    num_labels: int,
) -> tuple[float, float]:
    """Micro and macro F1 over per-(node, label) decisions.

    Macro averages per-label F1 over labels with support in truth only;
    labels never appearing in truth are excluded. A vacuous problem (no
    positives anywhere on either side) scores micro 1.0, macro 0.0.
    """
    if len(predicted) != len(truth):
        raise ValueError("prediction/truth length mismatch")
    tp = np.zeros(num_labels, dtype=np.int64)
    fp = np.zeros(num_labels, dtype=np.int64)
    fn = np.zeros(num_labels, dtype=np.int64)
    support = np.zeros(num_labels, dtype=bool)
    for pred, true in zip(predicted, truth):
        for label in pred & true:
            tp[label] += 1
        for label in pred - true:
            fp[label] += 1
        for label in true - pred:
            fn[label] += 1
        for label in true:
            support[label] = True

    micro_denom = 2 * tp.sum() + fp.sum() + fn.sum()
    micro = 2.0 * tp.sum() / micro_denom if micro_denom > 0 else 1.0

    macro_terms = []
    for label in range(num_labels):
        if not support[label]:
            continue
        denom = 2 * tp[label] + fp[label] + fn[label]
        macro_terms.append(2.0 * tp[label] / denom if denom > 0 else 0.0)
    macro = float(np.mean(macro_terms)) if macro_terms else 0.0
    return float(micro), macro


@dataclass(frozen=True)
class EvalRow:
    method: str
    ratio: float
    repeats: int
    micro_f1_mean: float
    micro_f1_std: float
    macro_f1_mean: float
    macro_f1_std: float


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]

    def to_csv(self, sink: IO[str]) -> None:
        sink.write(
            "method,ratio,repeat_count,micro_f1_mean,micro_f1_std,"
            "macro_f1_mean,macro_f1_std\n"
        )
        for r in self.rows:
            sink.write(
                f"{r.method},{r.ratio!r},{r.repeats},{r.micro_f1_mean!r},"
                f"{r.micro_f1_std!r},{r.macro_f1_mean!r},{r.macro_f1_std!r}\n"
            )

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "method": r.method,
                    "ratio": r.ratio,
                    "repeat_count": r.repeats,
                    "micro_f1_mean": r.micro_f1_mean,
                    "micro_f1_std": r.micro_f1_std,
                    "macro_f1_mean": r.macro_f1_mean,
                    "macro_f1_std": r.macro_f1_std,
                }
                for r in self.rows
            ]
        )


def evaluate_sweep(
    features: np.ndarray,
    data: LabeledDataset,
    cfg: EvalConfig,
    method: str = "embedding",
) -> EvalReport:
    """Train/score over every (ratio, repeat) cell of the sweep.

    Each split comes from its own RNG substream keyed by (seed, ratio index,
    repeat index), so adding ratios or repeats never perturbs existing
    splits. Test nodes are predicted with their true label counts.
    """
    n = features.shape[0]
    if n != data.n:
        raise ValueError("embedding and dataset node counts differ")
    truth = data.labels
    k_all = data.label_counts()

    rows = []
    for ri, ratio in enumerate(cfg.train_ratios):
        micro_vals = np.empty(cfg.repeats)
        macro_vals = np.empty(cfg.repeats)
        for rj in range(cfg.repeats):
            rng = np.random.Generator(
                np.random.Philox(np.random.SeedSequence((cfg.seed, ri, rj)))
            )
            perm = rng.permutation(n)
            n_train = min(max(int(round(ratio * n)), 1), n - 1)
            train_idx = perm[:n_train]
            test_idx = perm[n_train:]
            clf = train_logreg_ovr(features, data, train_idx, cfg)
            preds = predict_top_k(clf, features[test_idx], k_all[test_idx])
            micro_vals[rj], macro_vals[rj] = f1_scores(
                preds, [truth[i] for i in test_idx], data.num_labels
            )
        rows.append(
            EvalRow(
                method=method,
                ratio=ratio,
                repeats=cfg.repeats,
                micro_f1_mean=float(micro_vals.mean()),
                micro_f1_std=float(micro_vals.std()),
                macro_f1_mean=float(macro_vals.mean()),
                macro_f1_std=float(macro_vals.std()),
            )
        )
    return EvalReport(rows=tuple(rows))
