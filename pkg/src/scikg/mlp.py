"""A small seeded multilayer perceptron: one hidden layer, softmax output.

Plain numpy keeps training deterministic for a given seed, which the
checkpoint format relies on (weights round-trip bit-exactly).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

CHECKPOINT_VERSION = 1


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


class MLP:
    """input -> dense(hidden, relu) -> dense(n_classes, softmax)."""

    def __init__(
        self,
        input_dim: int,
        hidden_dim: int,
        n_classes: int,
        seed: int,
        learning_rate: float = 0.1,
        batch_size: int = 32,
        max_epochs: int = 200,
        plateau_tolerance: float = 1e-4,
        plateau_patience: int = 10,
    ):
        if n_classes < 2:
            raise ValueError("need at least two classes")
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        self.n_classes = n_classes
        self.seed = seed
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.max_epochs = max_epochs
        self.plateau_tolerance = plateau_tolerance
        self.plateau_patience = plateau_patience
        rng = np.random.default_rng(seed)
        self.w1 = rng.normal(0.0, np.sqrt(2.0 / input_dim), size=(input_dim, hidden_dim))
        self.b1 = np.zeros(hidden_dim)
        self.w2 = rng.normal(0.0, np.sqrt(2.0 / hidden_dim), size=(hidden_dim, n_classes))
        self.b2 = np.zeros(n_classes)
        self._rng = rng
        self.epochs_run = 0

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        hidden = _relu(x @ self.w1 + self.b1)
        return _softmax(hidden @ self.w2 + self.b2)

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(x), axis=1)

    def loss(self, x: np.ndarray, y: np.ndarray) -> float:
        proba = self.predict_proba(x)
        picked = proba[np.arange(len(y)), y]
        return float(-np.mean(np.log(np.clip(picked, 1e-12, None))))

    def fit(self, x: np.ndarray, y: np.ndarray) -> None:
        """Mini-batch gradient descent with an early plateau stop."""
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise ValueError(f"expected (n, {self.input_dim}) inputs, got {x.shape}")
        if len(x) != len(y) or len(x) == 0:
            raise ValueError("inputs and targets must align and be non-empty")
        if y.min() < 0 or y.max() >= self.n_classes:
            raise ValueError("target class out of range")
        n = len(x)
        best_loss = np.inf
        stale = 0
        for epoch in range(self.max_epochs):
            order = self._rng.permutation(n)
            for start in range(0, n, self.batch_size):
                batch = order[start: start + self.batch_size]
                self._step(x[batch], y[batch])
            self.epochs_run = epoch + 1
            epoch_loss = self.loss(x, y)
            if best_loss - epoch_loss < self.plateau_tolerance:
                stale += 1
                if stale >= self.plateau_patience:
                    break
            else:
                stale = 0
            best_loss = min(best_loss, epoch_loss)

    def _step(self, x: np.ndarray, y: np.ndarray) -> None:
        m = len(x)
        pre_hidden = x @ self.w1 + self.b1
        hidden = _relu(pre_hidden)
        proba = _softmax(hidden @ self.w2 + self.b2)
        grad_logits = proba
        grad_logits[np.arange(m), y] -= 1.0
        grad_logits /= m
        grad_w2 = hidden.T @ grad_logits
        grad_b2 = grad_logits.sum(axis=0)
        grad_hidden = grad_logits @ self.w2.T
        grad_hidden[pre_hidden <= 0.0] = 0.0
        grad_w1 = x.T @ grad_hidden
        grad_b1 = grad_hidden.sum(axis=0)
        self.w1 -= self.learning_rate * grad_w1
        self.b1 -= self.learning_rate * grad_b1
        self.w2 -= self.learning_rate * grad_w2
        self.b2 -= self.learning_rate * grad_b2

    def save(self, path: str | Path, class_labels: list[str]) -> None:
        np.savez(
            path,
            version=np.array([CHECKPOINT_VERSION]),
            dims=np.array([self.input_dim, self.hidden_dim, self.n_classes]),
            hyper=np.array(
                [
                    self.learning_rate,
                    self.batch_size,
                    self.max_epochs,
                    self.plateau_tolerance,
                    self.plateau_patience,
                    self.seed,
                ]
            ),
            classes=np.array(class_labels),
            w1=self.w1,
            b1=self.b1,
            w2=self.w2,
            b2=self.b2,
        )

    @classmethod
    def load(cls, path: str | Path) -> tuple["MLP", list[str]]:
        data = np.load(path, allow_pickle=False)
        version = int(data["version"][0])
        if version != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        input_dim, hidden_dim, n_classes = (int(v) for v in data["dims"])
        lr, batch, epochs, tol, patience, seed = data["hyper"]
        model = cls(
            input_dim=input_dim,
            hidden_dim=hidden_dim,
            n_classes=n_classes,
            seed=int(seed),
            learning_rate=float(lr),
            batch_size=int(batch),
            max_epochs=int(epochs),
            plateau_tolerance=float(tol),
            plateau_patience=int(patience),
        )
        model.w1 = data["w1"]
        model.b1 = data["b1"]
        model.w2 = data["w2"]
        model.b2 = data["b2"]
        return model, [str(c) for c in data["classes"]]
