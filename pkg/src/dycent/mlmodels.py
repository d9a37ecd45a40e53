"""Minimal differentiable classifier with hand-written exact gradients,
plus synthetic datasets, for exercising the optimizers in the
stochastic/minibatch regime at desk scale.

The model is a single-hidden-layer MLP over a flattened parameter vector
[W1 | b1 | W2 | b2] with softmax cross-entropy loss; the gradient is exact
backpropagation, which keeps finite-difference checks meaningful.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .objective import BatchContext, Objective
from .vecmath import DimensionError, ParamVector, make_rng

ACTIVATIONS = ("relu", "tanh")


@dataclass
class Dataset:
    """Feature matrix with integer class labels."""

    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise DimensionError(f"features must be 2-D, got shape {self.features.shape}")
        if self.labels.shape != (self.features.shape[0],):
            raise DimensionError("labels must have one entry per feature row")
        if self.num_classes < 2:
            raise ValueError("need at least 2 classes")
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.num_classes):
            raise ValueError("labels must lie in [0, num_classes)")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("features contain NaN or Inf")

    def __len__(self) -> int:
        return self.features.shape[0]


@dataclass(frozen=True)
class MlpSpec:
    """Architecture of the one-hidden-layer classifier."""

    input_dim: int
    hidden_dim: int
    num_classes: int
    activation: str = "relu"
    init_seed: int = 0

    def __post_init__(self):
        if min(self.input_dim, self.hidden_dim, self.num_classes) < 1:
            raise ValueError("all dimensions must be >= 1")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}")

    @property
    def param_count(self) -> int:
        return (
            self.input_dim * self.hidden_dim
            + self.hidden_dim
            + self.hidden_dim * self.num_classes
            + self.num_classes
        )


def make_two_moons(n: int, noise: float, seed: int) -> Dataset:
    """Two interleaved half-circles with balanced classes and Gaussian noise."""
    if n < 2:
        raise ValueError(f"need n >= 2 points, got {n}")
    if noise < 0:
        raise ValueError(f"noise must be >= 0, got {noise}")
    n_outer = n // 2
    n_inner = n - n_outer
    t_outer = np.linspace(0.0, np.pi, n_outer)
    t_inner = np.linspace(0.0, np.pi, n_inner)
    outer = np.column_stack([np.cos(t_outer), np.sin(t_outer)])
    inner = np.column_stack([1.0 - np.cos(t_inner), 0.5 - np.sin(t_inner)])
    features = np.vstack([outer, inner])
    labels = np.concatenate([np.zeros(n_outer, dtype=np.int64), np.ones(n_inner, dtype=np.int64)])
    rng = make_rng(seed)
    features = features + noise * rng.standard_normal(features.shape)
    return Dataset(features=features, labels=labels, num_classes=2)


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


class MlpObjective(Objective):
    """Mean cross-entropy of the MLP over the pinned batch (default: all rows),
    as a function of the flattened parameter vector."""

    def __init__(self, spec: MlpSpec, data: Dataset):
        if data.features.shape[1] != spec.input_dim:
            raise DimensionError(
                f"dataset feature dim {data.features.shape[1]} != spec input dim {spec.input_dim}"
            )
        if data.num_classes != spec.num_classes:
            raise DimensionError(
                f"dataset classes {data.num_classes} != spec classes {spec.num_classes}"
            )
        if len(data) == 0:
            raise ValueError("dataset is empty")
        self.spec = spec
        self.data = data
        self.dim = spec.param_count
        self.lipschitz_bound = None
        self.name = "mlp_cross_entropy"
        self._batch: np.ndarray | None = None

    def set_batch(self, ctx: BatchContext) -> None:
        idx = ctx.batch_indices
        if idx.min() < 0 or idx.max() >= len(self.data):
            raise ValueError("batch indices out of dataset bounds")
        self._batch = idx

    def clear_batch(self) -> None:
        self._batch = None

    def _rows(self) -> tuple[np.ndarray, np.ndarray]:
        if self._batch is None:
            return self.data.features, self.data.labels
        return self.data.features[self._batch], self.data.labels[self._batch]

    def _unpack(self, params: ParamVector) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        s = self.spec
        params = self._check_dim(params)
        i = 0
        w1 = params[i : i + s.input_dim * s.hidden_dim].reshape(s.input_dim, s.hidden_dim)
        i += s.input_dim * s.hidden_dim
        b1 = params[i : i + s.hidden_dim]
        i += s.hidden_dim
        w2 = params[i : i + s.hidden_dim * s.num_classes].reshape(s.hidden_dim, s.num_classes)
        i += s.hidden_dim * s.num_classes
        b2 = params[i : i + s.num_classes]
        return w1, b1, w2, b2

    def _forward(self, params: ParamVector, x: np.ndarray):
        w1, b1, w2, b2 = self._unpack(params)
        z1 = x @ w1 + b1
        a1 = np.maximum(z1, 0.0) if self.spec.activation == "relu" else np.tanh(z1)
        logits = a1 @ w2 + b2
        return z1, a1, logits

    def value(self, x: ParamVector) -> float:
        rows, labels = self._rows()
        _, _, logits = self._forward(x, rows)
        shifted = logits - logits.max(axis=1, keepdims=True)
        log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        return float(-np.mean(log_probs[np.arange(len(labels)), labels]))

    def gradient(self, x: ParamVector) -> ParamVector:
        rows, labels = self._rows()
        w1, b1, w2, b2 = self._unpack(x)
        z1, a1, logits = self._forward(x, rows)
        probs = _softmax(logits)
        dlogits = probs
        dlogits[np.arange(len(labels)), labels] -= 1.0
        dlogits /= len(labels)

        gw2 = a1.T @ dlogits
        gb2 = dlogits.sum(axis=0)
        da1 = dlogits @ w2.T
        if self.spec.activation == "relu":
            dz1 = da1 * (z1 > 0.0)
        else:
            dz1 = da1 * (1.0 - a1 * a1)
        gw1 = rows.T @ dz1
        gb1 = dz1.sum(axis=0)
        return np.concatenate([gw1.ravel(), gb1, gw2.ravel(), gb2])

    def predict(self, params: ParamVector, features: np.ndarray) -> np.ndarray:
        """Argmax class per row; ties break toward the lowest class index."""
        _, _, logits = self._forward(params, features)
        return np.argmax(logits, axis=1)


def mlp_objective(spec: MlpSpec, data: Dataset) -> MlpObjective:
    """Minibatch-capable cross-entropy objective for the given model and data."""
    return MlpObjective(spec, data)


def initial_params(spec: MlpSpec) -> ParamVector:
    """Scaled-Gaussian weights (std 1/sqrt(fan_in)) and zero biases, from init_seed."""
    rng = make_rng(spec.init_seed)
    w1 = rng.standard_normal((spec.input_dim, spec.hidden_dim)) / np.sqrt(spec.input_dim)
    b1 = np.zeros(spec.hidden_dim)
    w2 = rng.standard_normal((spec.hidden_dim, spec.num_classes)) / np.sqrt(spec.hidden_dim)
    b2 = np.zeros(spec.num_classes)
    return np.concatenate([w1.ravel(), b1, w2.ravel(), b2])


def accuracy(params: ParamVector, spec: MlpSpec, data: Dataset) -> float:
    """Fraction of rows whose argmax prediction matches the label."""
    if len(data) == 0:
        raise ValueError("accuracy over an empty dataset is undefined")
    obj = MlpObjective(spec, data)
    predictions = obj.predict(np.asarray(params, dtype=np.float64), data.features)
    return float(np.mean(predictions == data.labels))


def load_csv_dataset(path: str) -> Dataset:
    """Read a dataset from CSV with header f0,...,fk,label.

    Non-numeric cells are rejected with the offending row number.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if not header or header[-1] != "label":
            raise ValueError(f"{path}: last header column must be 'label', got {header}")
        expected = [f"f{i}" for i in range(len(header) - 1)] + ["label"]
        if header != expected:
            raise ValueError(f"{path}: header must be {expected}, got {header}")
        features, labels = [], []
        for row_num, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}: row {row_num}: expected {len(header)} cells, got {len(row)}")
            try:
                features.append([float(c) for c in row[:-1]])
            except ValueError:
                raise ValueError(f"{path}: row {row_num}: non-numeric feature cell") from None
            try:
                labels.append(int(row[-1]))
            except ValueError:
                raise ValueError(f"{path}: row {row_num}: non-integer label cell") from None
    if not features:
        raise ValueError(f"{path}: no data rows")
    label_arr = np.asarray(labels, dtype=np.int64)
    if label_arr.min() < 0:
        raise ValueError(f"{path}: labels must be non-negative")
    return Dataset(
        features=np.asarray(features, dtype=np.float64),
        labels=label_arr,
        num_classes=int(label_arr.max()) + 1,
    )
