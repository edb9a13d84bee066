#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
One-vs-rest RBF support vector classifier

Features are z-score normalized with statistics from the training data;
one soft-margin kernel machine per class is trained by sequential
minimal optimization with maximal-violating-pair working set selection
(ties go to the lowest index), so training is fully deterministic.
Prediction takes the argmax of the decision values, ties going to the
lowest class label.

Author: Dexter
Date: 2025
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from sealkit.core.config import config
from sealkit.core.exceptions import (
    ModelFormatError, SealkitIOError, TrainingError, ValidationError,
)
from sealkit.core.models import ClassificationReport


# 配置日志
logger = logging.getLogger(__name__)

MODEL_HEADER = 'sealkit-svm v1'
TAU = 1e-12

Sample = Tuple[Sequence[float], int]


def rbf_kernel(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    """K(a_i, b_j) = exp(-gamma·|a_i - b_j|²) for all pairs."""
    sq = (a * a).sum(axis=1)[:, None] + (b * b).sum(axis=1)[None, :] - 2.0 * (a @ b.T)
    return np.exp(-gamma * np.maximum(sq, 0.0))


@dataclass
class BinaryMachine:
    """
    One kernel machine separating `label` from all other classes

    decision(x) = Σ coefficients_i · K(sv_i, x) + bias
    """
    label: int
    gamma: float
    bias: float
    coefficients: np.ndarray      # (k,) y_i·alpha_i
    support_vectors: np.ndarray   # (k, d)

    def decision(self, x: np.ndarray) -> np.ndarray:
        if len(self.coefficients) == 0:
            return np.full(len(x), self.bias)
        return rbf_kernel(x, self.support_vectors, self.gamma) @ self.coefficients + self.bias


@dataclass
class ClassifierModel:
    """
    Normalization statistics plus the one-vs-rest machines

    Attributes:
        mean (np.ndarray): per-feature training mean
        std (np.ndarray): per-feature training standard deviation (zeros replaced by 1)
        machines (List[BinaryMachine]): one per class, ascending label order
        c (float): regularization parameter used for training
        gamma (float): RBF width parameter
    """
    mean: np.ndarray
    std: np.ndarray
    machines: List[BinaryMachine]
    c: float
    gamma: float

    @property
    def n_features(self) -> int:
        return len(self.mean)

    @property
    def labels(self) -> List[int]:
        return [machine.label for machine in self.machines]

    def normalize(self, features: np.ndarray) -> np.ndarray:
        return (features - self.mean) / self.std

    def decision_values(self, features) -> np.ndarray:
        x = np.atleast_2d(np.asarray(features, dtype=np.float64))
        if x.shape[1] != self.n_features:
            raise ValidationError(f"model expects {self.n_features} features, got {x.shape[1]}")
        z = self.normalize(x)
        return np.stack([machine.decision(z) for machine in self.machines], axis=1)


def _solve_smo(kernel: np.ndarray, y: np.ndarray, c: float, tol: float,
               max_iter: int) -> Tuple[np.ndarray, float]:
    """
    Solve the soft-margin dual with first-order working set selection

    Minimizes ½αᵀQα - Σα subject to 0 ≤ α ≤ C and yᵀα = 0, where
    Q_ij = y_i·y_j·K_ij. Stops when the maximal KKT violation drops below tol.

    Returns:
        Tuple[np.ndarray, float]: multipliers alpha and offset rho
    """
    n = len(y)
    alpha = np.zeros(n)
    grad = -np.ones(n)

    for _ in range(max_iter):
        minus_yg = -y * grad
        up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
        low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < c))
        if not up.any() or not low.any():
            break
        up_idx = np.flatnonzero(up)
        low_idx = np.flatnonzero(low)
        i = up_idx[np.argmax(minus_yg[up_idx])]
        j = low_idx[np.argmin(minus_yg[low_idx])]
        gap = minus_yg[i] - minus_yg[j]
        if gap < tol:
            break

        eta = max(kernel[i, i] + kernel[j, j] - 2.0 * kernel[i, j], TAU)
        room_i = c - alpha[i] if y[i] > 0 else alpha[i]
        room_j = alpha[j] if y[j] > 0 else c - alpha[j]
        step = min(gap / eta, room_i, room_j)

        old_i, old_j = alpha[i], alpha[j]
        alpha[i] = _snap(old_i + y[i] * step, c)
        alpha[j] = _snap(old_j - y[j] * step, c)
        delta_i = alpha[i] - old_i
        delta_j = alpha[j] - old_j
        grad += y * (y[i] * kernel[:, i] * delta_i + y[j] * kernel[:, j] * delta_j)
    else:
        logger.warning(f"SMO 达到最大迭代次数 {max_iter}，结果可能未收敛")

    return alpha, _compute_rho(alpha, y, grad, c)


def _snap(value: float, c: float) -> float:
    eps = 1e-12 * max(c, 1.0)
    if value <= eps:
        return 0.0
    if value >= c - eps:
        return c
    return value


def _compute_rho(alpha: np.ndarray, y: np.ndarray, grad: np.ndarray, c: float) -> float:
    yg = y * grad
    free = (alpha > 0) & (alpha < c)
    if free.any():
        return float(yg[free].mean())
    at_upper = alpha >= c
    at_lower = alpha <= 0
    upper_side = (at_upper & (y < 0)) | (at_lower & (y > 0))
    lower_side = (at_upper & (y > 0)) | (at_lower & (y < 0))
    ub = yg[upper_side].min() if upper_side.any() else np.inf
    lb = yg[lower_side].max() if lower_side.any() else -np.inf
    if np.isinf(ub) or np.isinf(lb):
        return float(ub if np.isfinite(ub) else lb if np.isfinite(lb) else 0.0)
    return float((ub + lb) / 2.0)


def _as_arrays(samples: Sequence[Sample]) -> Tuple[np.ndarray, np.ndarray]:
    if not samples:
        raise TrainingError("no training samples")
    x = np.asarray([list(features) for features, _ in samples], dtype=np.float64)
    labels = np.asarray([int(label) for _, label in samples], dtype=np.int64)
    if x.ndim != 2:
        raise ValidationError("all samples must have the same number of features")
    return x, labels


def train(samples: Sequence[Sample], c: Optional[float] = None,
          gamma: Optional[float] = None) -> ClassifierModel:
    """
    Train the one-vs-rest RBF classifier

    Args:
        samples: (feature vector, label) pairs
        c (float): regularization parameter, default config.SVM_C
        gamma (float): RBF width, default config.SVM_GAMMA

    Returns:
        ClassifierModel: normalization plus one machine per class present

    Raises:
        TrainingError: fewer than two classes, or a class with fewer than two samples
        ValidationError: non-positive C or gamma
    """
    c = config.SVM_C if c is None else float(c)
    gamma = config.SVM_GAMMA if gamma is None else float(gamma)
    if c <= 0 or gamma <= 0:
        raise ValidationError(f"C and gamma must be positive, got C={c}, gamma={gamma}")

    x, labels = _as_arrays(samples)
    classes, counts = np.unique(labels, return_counts=True)
    if len(classes) < 2:
        raise TrainingError("training needs at least two classes")
    for label, count in zip(classes, counts):
        if count < 2:
            raise TrainingError(f"class {label} has {count} sample(s), at least 2 required")

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std[std == 0] = 1.0
    z = (x - mean) / std
    kernel = rbf_kernel(z, z, gamma)

    machines = []
    for label in classes:
        y = np.where(labels == label, 1.0, -1.0)
        alpha, rho = _solve_smo(kernel, y, c, config.SVM_TOLERANCE, config.SVM_MAX_ITER)
        support = alpha > 0
        machines.append(BinaryMachine(
            label=int(label),
            gamma=gamma,
            bias=-rho,
            coefficients=(alpha * y)[support],
            support_vectors=z[support],
        ))
        logger.debug(f"类别 {label} 分类器训练完成: 支持向量 {int(support.sum())} 个")

    logger.info(f"模型训练完成: {len(x)} 个样本, {len(classes)} 个类别, C={c}, gamma={gamma:.6g}")
    return ClassifierModel(mean=mean, std=std, machines=machines, c=c, gamma=gamma)


def predict(model: ClassifierModel, features: Sequence[float]) -> int:
    """
    Classify one feature vector

    Raises:
        ValidationError: if the feature count does not match the model
    """
    return predict_many(model, [features])[0]


def predict_many(model: ClassifierModel, rows: Sequence[Sequence[float]]) -> List[int]:
    if len(rows) == 0:
        return []
    scores = model.decision_values(rows)
    # argmax keeps the first maximum, i.e. the lowest label
    return [model.labels[k] for k in np.argmax(scores, axis=1)]


def stratified_folds(labels: Sequence[int], folds: int, seed: Optional[int] = None) -> List[int]:
    """
    Assign each sample a fold, stratified by class

    Each class's indices are shuffled with a generator seeded by `seed`
    (default config.CV_SEED), then dealt round-robin, class by class in
    ascending label order, so fold sizes per class differ by at most one
    and periodic input layouts do not line up with the folds.
    """
    rng = np.random.default_rng(config.CV_SEED if seed is None else seed)
    assignment = [0] * len(labels)
    counter = 0
    for label in sorted(set(labels)):
        members = [index for index, value in enumerate(labels) if value == label]
        for index in rng.permutation(members):
            assignment[int(index)] = counter % folds
            counter += 1
    return assignment


def cross_validate(samples: Sequence[Sample], folds: Optional[int] = None,
                   c: Optional[float] = None, gamma: Optional[float] = None) -> ClassificationReport:
    """
    Stratified k-fold cross-validation

    Returns:
        ClassificationReport: confusion matrix, per-class precision/recall, accuracy

    Raises:
        TrainingError: if folds is out of range or a training split loses a class
    """
    folds = config.CV_FOLDS if folds is None else int(folds)
    _, labels = _as_arrays(samples)
    if folds < 2 or folds > len(samples):
        raise TrainingError(f"folds must lie in [2, {len(samples)}], got {folds}")

    classes = sorted(set(labels.tolist()))
    position = {label: k for k, label in enumerate(classes)}
    assignment = stratified_folds(labels.tolist(), folds)
    confusion = np.zeros((len(classes), len(classes)), dtype=np.int64)

    for fold in range(folds):
        test_idx = [i for i, f in enumerate(assignment) if f == fold]
        train_set = [samples[i] for i, f in enumerate(assignment) if f != fold]
        model = train(train_set, c, gamma)
        if set(model.labels) != set(classes):
            raise TrainingError(f"fold {fold} training split is missing a class")
        predicted = predict_many(model, [samples[i][0] for i in test_idx])
        for i, label in zip(test_idx, predicted):
            confusion[position[label], position[int(labels[i])]] += 1

    predicted_totals = confusion.sum(axis=1)
    true_totals = confusion.sum(axis=0)
    diagonal = np.diag(confusion)
    precision = [float(d / p) if p else 0.0 for d, p in zip(diagonal, predicted_totals)]
    recall = [float(d / t) if t else 0.0 for d, t in zip(diagonal, true_totals)]
    accuracy = float(diagonal.sum() / confusion.sum())
    logger.info(f"交叉验证完成: {folds} 折, 准确率 {accuracy * 100:.2f}%")
    return ClassificationReport(
        labels=classes,
        confusion=confusion.tolist(),
        precision=precision,
        recall=recall,
        accuracy=accuracy,
    )


def _fmt(value: float) -> str:
    return format(float(value), '.17g')


def save_model(model: ClassifierModel, path: str) -> None:
    """
    Write the model in the versioned plain-text format

    Raises:
        SealkitIOError: if the file cannot be written
    """
    lines = [
        MODEL_HEADER,
        f"features {model.n_features}",
        f"c {_fmt(model.c)}",
        "mean " + " ".join(_fmt(v) for v in model.mean),
        "std " + " ".join(_fmt(v) for v in model.std),
        f"machines {len(model.machines)}",
    ]
    for machine in model.machines:
        lines.append(f"machine {machine.label}")
        lines.append(f"gamma {_fmt(machine.gamma)}")
        lines.append(f"bias {_fmt(machine.bias)}")
        lines.append(f"vectors {len(machine.coefficients)}")
        for coef, vector in zip(machine.coefficients, machine.support_vectors):
            lines.append(" ".join([_fmt(coef)] + [_fmt(v) for v in vector]))
    try:
        with open(path, 'w') as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as e:
        logger.error(f"模型保存失败: {e}")
        raise SealkitIOError(f"cannot write model to {path}: {e}") from e
    logger.info(f"模型已保存到 {path}")


class _Reader:
    def __init__(self, path: str, lines: List[str]):
        self.path = path
        self.lines = lines
        self.pos = 0

    def field(self, name: str) -> List[str]:
        if self.pos >= len(self.lines):
            raise ModelFormatError(f"{self.path}: unexpected end of file, expected '{name}'")
        parts = self.lines[self.pos].split()
        self.pos += 1
        if not parts or parts[0] != name:
            raise ModelFormatError(f"{self.path}:{self.pos}: expected '{name}'")
        return parts[1:]

    def row(self) -> List[float]:
        if self.pos >= len(self.lines):
            raise ModelFormatError(f"{self.path}: unexpected end of file in support vectors")
        self.pos += 1
        return [float(v) for v in self.lines[self.pos - 1].split()]


def load_model(path: str) -> ClassifierModel:
    """
    Read a model written by save_model

    Raises:
        SealkitIOError: if the file cannot be read
        ModelFormatError: if the content is not a sealkit-svm v1 model
    """
    try:
        with open(path) as handle:
            lines = [line.strip() for line in handle if line.strip()]
    except OSError as e:
        raise SealkitIOError(f"cannot read model {path}: {e}") from e
    if not lines or lines[0] != MODEL_HEADER:
        raise ModelFormatError(f"{path}: missing '{MODEL_HEADER}' header")

    reader = _Reader(path, lines)
    reader.pos = 1
    try:
        n_features = int(reader.field('features')[0])
        c = float(reader.field('c')[0])
        mean = np.array([float(v) for v in reader.field('mean')])
        std = np.array([float(v) for v in reader.field('std')])
        count = int(reader.field('machines')[0])
        machines = []
        gamma = 0.0
        for _ in range(count):
            label = int(reader.field('machine')[0])
            gamma = float(reader.field('gamma')[0])
            bias = float(reader.field('bias')[0])
            n_vectors = int(reader.field('vectors')[0])
            rows = [reader.row() for _ in range(n_vectors)]
            if any(len(r) != n_features + 1 for r in rows):
                raise ModelFormatError(f"{path}: support vector rows must hold {n_features + 1} values")
            table = np.array(rows, dtype=np.float64).reshape(n_vectors, n_features + 1)
            machines.append(BinaryMachine(
                label=label, gamma=gamma, bias=bias,
                coefficients=table[:, 0].copy(), support_vectors=table[:, 1:].copy(),
            ))
    except (ValueError, IndexError) as e:
        raise ModelFormatError(f"{path}: malformed model ({e})") from e

    if len(mean) != n_features or len(std) != n_features:
        raise ModelFormatError(f"{path}: normalization must hold {n_features} values")
    logger.debug(f"模型加载完成: {path}, {len(machines)} 个分类器")
    return ClassifierModel(mean=mean, std=std, machines=machines, c=c, gamma=gamma)
