"""Dense order-3 tensor container and the algebra the rest of the package builds on.

Storage is a C-contiguous ``float64`` array of shape ``(p1, p2, p3)``, so the
1-based entry ``(i, j, l)`` sits at flat offset ``((i-1)*p2 + (j-1))*p3 + (l-1)``.
Matricizations follow the cyclic index convention: for mode ``s`` the remaining
axes are taken in the order ``s+1, s+2`` (indices mod 3), *not* in increasing
axis order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Tensor3",
    "matricize",
    "dematricize",
    "mode_multiply",
    "frobenius_norm",
    "clamp_unit",
    "PrefixSums",
    "running_average",
]

_MODES = (1, 2, 3)


def _mode_axes(mode: int) -> tuple[int, int, int]:
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    m = mode - 1
    return (m, (m + 1) % 3, (m + 2) % 3)


@dataclass(frozen=True)
class Tensor3:
    """Immutable dense order-3 tensor with optional probability/symmetry flags.

    ``probability`` asserts every entry lies in [0, 1]; ``symmetric`` asserts
    ``T[i, j, l] == T[j, i, l]`` exactly and requires square leading dims.
    Both are validated at construction time.
    """

    data: np.ndarray
    probability: bool = False
    symmetric: bool = False

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.data, dtype=np.float64)
        if arr.ndim != 3:
            raise ValueError(f"expected an order-3 array, got ndim={arr.ndim}")
        if min(arr.shape) < 1:
            raise ValueError(f"all dims must be positive, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        if self.probability and (arr.min() < 0.0 or arr.max() > 1.0):
            raise ValueError(
                f"probability tensor has entries outside [0, 1]: "
                f"min={arr.min()}, max={arr.max()}"
            )
        if self.symmetric:
            if arr.shape[0] != arr.shape[1]:
                raise ValueError("symmetric flag requires p1 == p2")
            if not np.array_equal(arr, arr.transpose(1, 0, 2)):
                raise ValueError("symmetric flag set but tensor is not symmetric")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape  # type: ignore[return-value]

    @property
    def size(self) -> int:
        return self.data.size

    def with_flags(self, probability: bool | None = None, symmetric: bool | None = None) -> "Tensor3":
        """Return the same tensor with flags replaced (revalidated)."""
        return Tensor3(
            self.data,
            probability=self.probability if probability is None else probability,
            symmetric=self.symmetric if symmetric is None else symmetric,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:  # frozen dataclass with ndarray field
        return hash((self.dims, self.probability, self.symmetric))


def _as_array(t: Tensor3 | np.ndarray) -> np.ndarray:
    return t.data if isinstance(t, Tensor3) else np.asarray(t, dtype=np.float64)


def matricize(t: Tensor3 | np.ndarray, mode: int) -> np.ndarray:
    """Mode-``s`` matricization with cyclic column ordering.

    Mode 1 yields ``p1 x (p2*p3)``, mode 2 ``p2 x (p3*p1)``, mode 3
    ``p3 x (p1*p2)``; e.g. for mode 3 the entry at row ``i1``, column
    ``(i2-1)*p2 + i3`` equals ``T[i2, i3, i1]`` (1-based).
    """
    arr = _as_array(t)
    axes = _mode_axes(mode)
    return np.ascontiguousarray(np.transpose(arr, axes).reshape(arr.shape[axes[0]], -1))


def dematricize(m: np.ndarray, mode: int, dims: Sequence[int]) -> Tensor3:
    """Inverse of :func:`matricize` for the given mode and target dims."""
    arr = np.asarray(m, dtype=np.float64)
    dims = tuple(int(p) for p in dims)
    if len(dims) != 3 or min(dims) < 1:
        raise ValueError(f"dims must be three positive integers, got {dims}")
    axes = _mode_axes(mode)
    perm_dims = tuple(dims[a] for a in axes)
    if arr.ndim != 2 or arr.shape[0] != perm_dims[0] or arr.shape[1] != perm_dims[1] * perm_dims[2]:
        raise ValueError(
            f"matrix of shape {arr.shape} is inconsistent with mode {mode} and dims {dims}"
        )
    return Tensor3(np.transpose(arr.reshape(perm_dims), np.argsort(axes)))


def mode_multiply(t: Tensor3 | np.ndarray, mode: int, u: np.ndarray) -> Tensor3:
    """Marginal multiplication ``t x_mode u``, contracting ``dims[mode]`` with ``u.cols``.

    Satisfies ``matricize(mode_multiply(t, s, U), s) == U @ matricize(t, s)``.
    """
    arr = _as_array(t)
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError(f"u must be a matrix, got ndim={u.ndim}")
    if u.shape[1] != arr.shape[mode - 1]:
        raise ValueError(
            f"u has {u.shape[1]} columns but dims[{mode}] = {arr.shape[mode - 1]}"
        )
    new_dims = list(arr.shape)
    new_dims[mode - 1] = u.shape[0]
    return dematricize(u @ matricize(arr, mode), mode, new_dims)


def frobenius_norm(t: Tensor3 | np.ndarray) -> float:
    """Square root of the sum of squared entries."""
    return float(np.linalg.norm(_as_array(t).ravel()))


def clamp_unit(t: Tensor3 | np.ndarray) -> Tensor3:
    """Clip every entry into [0, 1]; the output carries the probability flag."""
    arr = _as_array(t)
    symmetric = t.symmetric if isinstance(t, Tensor3) else False
    return Tensor3(np.clip(arr, 0.0, 1.0), probability=True, symmetric=symmetric)


class PrefixSums:
    """Incrementally maintained prefix sums of a tensor stream.

    ``average(s, t)`` is the entrywise mean of the tensors at positions
    ``s+1 .. t`` (1-based stream positions), computed in one pass from the
    stored cumulative sums.
    """

    def __init__(self, dims: Sequence[int] | None = None):
        self._dims = tuple(int(p) for p in dims) if dims is not None else None
        self._sums: list[np.ndarray] = []
        if self._dims is not None:
            self._sums.append(np.zeros(self._dims))

    def __len__(self) -> int:
        return max(len(self._sums) - 1, 0)

    @property
    def dims(self) -> tuple[int, int, int] | None:
        return self._dims

    def append(self, t: Tensor3 | np.ndarray) -> None:
        arr = _as_array(t)
        if self._dims is None:
            self._dims = arr.shape
            self._sums.append(np.zeros(self._dims))
        if arr.shape != self._dims:
            raise ValueError(f"tensor dims {arr.shape} do not match stream dims {self._dims}")
        self._sums.append(self._sums[-1] + arr)

    def average(self, s: int, t: int) -> Tensor3:
        if not 0 <= s < t <= len(self):
            if s == t:
                raise ValueError(f"empty window (s == t == {s})")
            raise ValueError(f"window ({s}, {t}] out of range for stream of length {len(self)}")
        return Tensor3((self._sums[t] - self._sums[s]) / (t - s))


def running_average(prefix: PrefixSums, s: int, t: int) -> Tensor3:
    """Entrywise mean of stream positions ``s+1 .. t`` from prefix sums."""
    return prefix.average(s, t)
