"""Finite point spaces and real-valued functions on them.

A :class:`FiniteSpace` is an ordered list of distinct labels, optionally
carrying a metric (diagnostics only) and named subsets.  Every real-valued
function on such a space is a :class:`FunctionVector`; on a finite space
all functions are continuous, so no separate semicontinuity machinery is
needed at this level.
"""

from __future__ import annotations

import numpy as np

from .errors import ModelError, SpaceMismatchError


class FiniteSpace:
    """Ordered finite set of labelled points.

    Parameters
    ----------
    points : iterable of hashable labels, all distinct.
    metric : optional (n, n) array; must be symmetric, zero on the
        diagonal and satisfy the triangle inequality.  Used only for
        diagnostics, never by the calculus itself.
    named_subsets : optional mapping name -> iterable of labels.
    """

    def __init__(self, points, metric=None, named_subsets=None):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise ModelError("space labels must be unique")
        if not self.points:
            raise ModelError("space must contain at least one point")
        self._index = {p: i for i, p in enumerate(self.points)}

        self.metric = None
        if metric is not None:
            m = np.array(metric, dtype=float)
            n = len(self.points)
            if m.shape != (n, n):
                raise ModelError(f"metric must be {n}x{n}, got {m.shape}")
            if np.any(m < 0):
                raise ModelError("metric entries must be nonnegative")
            if not np.allclose(m, m.T):
                raise ModelError("metric must be symmetric")
            if np.any(np.abs(np.diag(m)) > 0):
                raise ModelError("metric diagonal must be zero")
            # triangle inequality: d(i,k) <= d(i,j) + d(j,k) for all j
            for j in range(n):
                if np.any(m > m[:, [j]] + m[[j], :] + 1e-12):
                    raise ModelError("metric violates the triangle inequality")
            m.setflags(write=False)
            self.metric = m

        self.named_subsets = {}
        if named_subsets:
            for name, labels in named_subsets.items():
                self.named_subsets[name] = frozenset(self.index(p) for p in labels)

    def __len__(self):
        return len(self.points)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ModelError(f"unknown point label {label!r}") from None

    def indices(self, labels):
        return [self.index(p) for p in labels]

    def subset_indices(self, name):
        if name not in self.named_subsets:
            raise ModelError(f"unknown subset {name!r}")
        return sorted(self.named_subsets[name])

    def subset_labels(self, name):
        return [self.points[i] for i in self.subset_indices(name)]

    # Spaces interoperate iff their label sequences agree; metric and
    # subsets are metadata.
    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"FiniteSpace({len(self.points)} points)"


def check_same_space(a, b, what="operands"):
    if a != b:
        raise SpaceMismatchError(f"{what} live on different spaces: {a!r} vs {b!r}")


class FunctionVector:
    """A real-valued function on a finite space, stored per point."""

    def __init__(self, space, values):
        self.space = space
        v = np.array(values, dtype=float)
        if v.shape != (len(space),):
            raise ModelError(f"function needs {len(space)} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ModelError("function values must be finite")
        v.setflags(write=False)  # shared freely across threads
        self.values = v

    @classmethod
    def constant(cls, space, c):
        return cls(space, np.full(len(space), float(c)))

    @classmethod
    def indicator(cls, space, labels):
        v = np.zeros(len(space))
        for p in labels:
            v[space.index(p)] = 1.0
        return cls(space, v)

    @classmethod
    def from_dict(cls, space, mapping, default=0.0):
        """Build from a label -> value mapping; omitted labels get `default`."""
        v = np.full(len(space), float(default))
        for p, x in mapping.items():
            v[space.index(p)] = float(x)
        return cls(space, v)

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))

    def __add__(self, other):
        check_same_space(self.space, other.space, "functions")
        return FunctionVector(self.space, self.values + other.values)

    def __sub__(self, other):
        check_same_space(self.space, other.space, "functions")
        return FunctionVector(self.space, self.values - other.values)

    def __mul__(self, scalar):
        return FunctionVector(self.space, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return FunctionVector(self.space, -self.values)

    def __repr__(self):
        return f"FunctionVector({np.array2string(self.values, precision=4)})"


def indicator_basis(space):
    """The per-point indicator functions, the default test basis."""
    return [FunctionVector.indicator(space, [p]) for p in space.points]
