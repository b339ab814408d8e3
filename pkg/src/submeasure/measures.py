"""Signed measures and strong submeasures on finite spaces.

A strong submeasure is represented by a nonempty finite collection of
signed measures (its generators) and acts on functions as the supremum
of the generators' linear actions.  When every generator is positive the
functional is monotone and its upper-semicontinuous envelope coincides
with plain evaluation; otherwise the envelope is computed by a linear
program (see :func:`StrongSubmeasure.envelope`).
"""

from __future__ import annotations

import itertools
import logging

import numpy as np
from scipy.optimize import linprog

from .errors import ModelError, PreconditionError
from .space import FunctionVector, check_same_space

log = logging.getLogger("submeasure")

#: absolute tolerance used by feasibility/optimality checks throughout
DEFAULT_TOL = 1e-9


class SignedMeasure:
    """A weight per point; acts linearly on functions."""

    def __init__(self, space, weights):
        self.space = space
        w = np.array(weights, dtype=float)
        if w.shape != (len(space),):
            raise ModelError(f"measure needs {len(space)} weights, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ModelError("measure weights must be finite")
        w.setflags(write=False)  # shared freely across threads
        self.weights = w

    @classmethod
    def from_dict(cls, space, mapping, default=0.0):
        w = np.full(len(space), float(default))
        for p, x in mapping.items():
            w[space.index(p)] = float(x)
        return cls(space, w)

    def __call__(self, phi):
        check_same_space(self.space, phi.space, "measure and function")
        return float(self.weights @ phi.values)

    def mass(self):
        return float(np.sum(self.weights))

    def total_variation(self):
        return float(np.sum(np.abs(self.weights)))

    def is_positive(self, tol=0.0):
        return bool(np.all(self.weights >= -tol))

    def __add__(self, other):
        check_same_space(self.space, other.space, "measures")
        return SignedMeasure(self.space, self.weights + other.weights)

    def __sub__(self, other):
        check_same_space(self.space, other.space, "measures")
        return SignedMeasure(self.space, self.weights - other.weights)

    def __mul__(self, scalar):
        return SignedMeasure(self.space, self.weights * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return SignedMeasure(self.space, -self.weights)

    def __repr__(self):
        return f"{type(self).__name__}({np.array2string(self.weights, precision=4)})"


class PositiveMeasure(SignedMeasure):
    """A signed measure with all weights nonnegative."""

    def __init__(self, space, weights):
        super().__init__(space, weights)
        if np.any(self.weights < 0):
            raise ModelError("positive measure has a negative weight")

    def __add__(self, other):
        out = super().__add__(other)
        if isinstance(other, PositiveMeasure):
            return PositiveMeasure(out.space, out.weights)
        return out

    def __mul__(self, scalar):
        if scalar >= 0:
            return PositiveMeasure(self.space, self.weights * float(scalar))
        return SignedMeasure(self.space, self.weights * float(scalar))

    __rmul__ = __mul__


def dirac(space, label, weight=1.0):
    w = np.zeros(len(space))
    w[space.index(label)] = float(weight)
    return PositiveMeasure(space, w) if weight >= 0 else SignedMeasure(space, w)


def uniform(space, labels=None, mass=1.0):
    """The measure spreading `mass` evenly over `labels` (default: all points)."""
    idx = range(len(space)) if labels is None else space.indices(labels)
    idx = list(idx)
    w = np.zeros(len(space))
    w[idx] = float(mass) / len(idx)
    return PositiveMeasure(space, w) if mass >= 0 else SignedMeasure(space, w)


def jordan_decompose(sigma):
    """Split a signed measure into its positive and negative parts.

    Returns ``(plus, minus, neg_norm)`` with ``plus - minus == sigma``,
    ``plus * minus == 0`` coordinatewise, and ``neg_norm`` the mass of
    the negative part.  On a finite space the coordinatewise split is
    the minimal decomposition: any other one adds equal mass to both
    parts.
    """
    plus = PositiveMeasure(sigma.space, np.maximum(sigma.weights, 0.0))
    minus = PositiveMeasure(sigma.space, np.maximum(-sigma.weights, 0.0))
    return plus, minus, minus.mass()


def negative_part_mass(sigma):
    return float(np.sum(np.maximum(-sigma.weights, 0.0)))


class MassInfo(tuple):
    """(mass_plus, mass_minus, norm); `exact` is False when norm is only
    the generator-total-variation upper bound (non-positive case)."""

    def __new__(cls, mass_plus, mass_minus, norm, exact):
        self = super().__new__(cls, (mass_plus, mass_minus, norm))
        self.exact = exact
        return self

    @property
    def mass_plus(self):
        return self[0]

    @property
    def mass_minus(self):
        return self[1]

    @property
    def norm(self):
        return self[2]


class StrongSubmeasure:
    """Supremum of a finite collection of signed measures.

    Evaluation is sublinear and bounded by construction; when every
    generator is positive, evaluation is also monotone in the function
    argument.
    """

    def __init__(self, space, generators):
        gens = list(generators)
        if not gens:
            raise ModelError("a strong submeasure needs at least one generator")
        for g in gens:
            check_same_space(space, g.space, "submeasure generators")
        self.space = space
        self.generators = gens
        matrix = np.vstack([g.weights for g in gens])
        matrix.setflags(write=False)
        self.matrix = matrix

    @classmethod
    def from_measure(cls, measure):
        return cls(measure.space, [measure])

    @classmethod
    def sup_of(cls, measures):
        measures = list(measures)
        return cls(measures[0].space, measures)

    @property
    def positivity_flag(self):
        return bool(np.all(self.matrix >= 0))

    def __len__(self):
        return len(self.generators)

    # -- evaluation ---------------------------------------------------

    def evaluate(self, phi):
        """sup over generators of their linear action on `phi`."""
        check_same_space(self.space, phi.space, "submeasure and function")
        return float(np.max(self.matrix @ phi.values))

    def evaluate_many(self, matrix):
        """Evaluate on each row of an (k, n) array of function values."""
        return np.max(self.matrix @ np.asarray(matrix, dtype=float).T, axis=0)

    def basis_values(self):
        """Values on the per-point indicator functions."""
        return np.max(self.matrix, axis=0)

    def achieving_generator(self, phi):
        """Diagnostic accessor: one generator attaining the supremum at
        `phi` (ties resolved by first index; evaluation itself never
        breaks ties)."""
        check_same_space(self.space, phi.space, "submeasure and function")
        return self.generators[int(np.argmax(self.matrix @ phi.values))]

    def mass_info(self):
        """Masses mu(1), mu(-1) and the operator norm.

        The closed norm formula max(|mu(1)|, |mu(-1)|) holds for
        positive submeasures; otherwise the maximal generator total
        variation is returned as an upper bound and flagged inexact.
        """
        n = len(self.space)
        mass_plus = float(np.max(self.matrix @ np.ones(n)))
        mass_minus = float(np.max(self.matrix @ (-np.ones(n))))
        if self.positivity_flag:
            return MassInfo(mass_plus, mass_minus, max(abs(mass_plus), abs(mass_minus)), True)
        bound = float(np.max(np.sum(np.abs(self.matrix), axis=1)))
        return MassInfo(mass_plus, mass_minus, bound, False)

    def norm_upper_bound(self):
        return self.mass_info().norm

    # -- envelope (upper-semicontinuous extension) ---------------------

    def envelope(self, g):
        """inf over functions psi >= g (coordinatewise) of evaluate(psi).

        For positive submeasures the infimum is attained at psi = g and
        the call short-circuits to plain evaluation.  Otherwise the
        infimum is an LP; when it is unbounded below, ``-inf`` is
        returned and a certificate direction is logged (see
        :func:`unbounded_direction`).
        """
        check_same_space(self.space, g.space, "submeasure and function")
        if self.positivity_flag:
            return self.evaluate(g)
        return _envelope_lp(self.matrix, g.values)

    def set_value(self, labels, mode="closed"):
        """Value of the induced set function on a subset of points.

        ``closed`` evaluates the envelope at the indicator.  ``open``
        takes the supremum of closed values over all subsets; for
        positive submeasures both modes agree by monotonicity and the
        subset enumeration is skipped.
        """
        idx = sorted(set(self.space.indices(labels)))
        ind = np.zeros(len(self.space))
        ind[idx] = 1.0
        closed_value = self.envelope(FunctionVector(self.space, ind))
        if mode == "closed":
            return closed_value
        if mode != "open":
            raise ValueError(f"mode must be 'closed' or 'open', got {mode!r}")
        if self.positivity_flag:
            return closed_value
        if len(idx) > 20:
            raise ModelError("open-mode subset enumeration capped at 20 points")
        best = -np.inf
        for r in range(len(idx) + 1):
            for sub in itertools.combinations(idx, r):
                v = np.zeros(len(self.space))
                v[list(sub)] = 1.0
                best = max(best, self.envelope(FunctionVector(self.space, v)))
        return best

    # -- structure ----------------------------------------------------

    def scale(self, factor):
        if factor < 0:
            raise PreconditionError("submeasures scale by nonnegative factors only")
        return StrongSubmeasure(self.space, [g * factor for g in self.generators])

    def translate(self, measure):
        """Add a fixed signed measure to every generator."""
        check_same_space(self.space, measure.space, "submeasure and measure")
        return StrongSubmeasure(self.space, [g + measure for g in self.generators])

    def dedup(self):
        seen = {}
        for g in self.generators:
            seen.setdefault(g.weights.tobytes(), g)
        return StrongSubmeasure(self.space, list(seen.values()))

    def prune(self):
        """Drop generators inside the convex hull of the others.

        The supremum over a finite set equals the supremum over the
        extreme points of its hull, so this is a lossless canonical
        form.
        """
        sub = self.dedup()
        gens = sub.generators
        if len(gens) == 1:
            return sub
        keep = list(range(len(gens)))
        i = 0
        while i < len(keep):
            others = [gens[j] for k, j in enumerate(keep) if k != i]
            if others and _in_hull(np.vstack([o.weights for o in others]), gens[keep[i]].weights):
                keep.pop(i)
            else:
                i += 1
        return StrongSubmeasure(self.space, [gens[j] for j in keep])

    def __repr__(self):
        kind = "positive" if self.positivity_flag else "signed"
        return f"StrongSubmeasure({len(self.generators)} {kind} generators on {len(self.space)} points)"


# -- module-level operations ------------------------------------------


def evaluate(mu, phi):
    return mu.evaluate(phi)


def combine(mu1, mu2, mode):
    """max or sum of two submeasures, as functionals.

    ``max`` takes the generator union.  ``sum`` takes pairwise generator
    sums; since the two suprema decouple, this realizes the functional
    sum exactly: the result evaluates to mu1(phi) + mu2(phi) on every
    phi.
    """
    check_same_space(mu1.space, mu2.space, "submeasures")
    if mode == "max":
        return StrongSubmeasure(mu1.space, mu1.generators + mu2.generators)
    if mode == "sum":
        gens = [g1 + g2 for g1 in mu1.generators for g2 in mu2.generators]
        return StrongSubmeasure(mu1.space, gens)
    raise ValueError(f"mode must be 'max' or 'sum', got {mode!r}")


def is_dominated(nu, mu, tol=DEFAULT_TOL):
    """Whether the positive measure `nu` satisfies nu(phi) <= mu(phi) for
    every function phi.

    By support-function duality on a finite-dimensional space this holds
    exactly when `nu` lies in the convex hull of the generator set, which
    is decided by a linear feasibility problem.
    """
    check_same_space(nu.space, mu.space, "measure and submeasure")
    if not mu.positivity_flag:
        raise PreconditionError("domination test requires a positive submeasure")
    return _in_hull(mu.matrix, nu.weights, tol=tol)


def _in_hull(matrix, target, tol=DEFAULT_TOL):
    """Feasibility of target = convex combination of the matrix rows."""
    m = matrix.shape[0]
    a_eq = np.vstack([matrix.T, np.ones((1, m))])
    b_eq = np.concatenate([target, [1.0]])
    res = linprog(np.zeros(m), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs")
    if res.status == 0:
        residual = a_eq @ res.x - b_eq
        return bool(np.max(np.abs(residual)) <= max(tol, 1e-8))
    return False


def _envelope_lp(matrix, g):
    """min t subject to (row . psi) <= t per generator row and psi >= g."""
    m, n = matrix.shape
    c = np.zeros(n + 1)
    c[-1] = 1.0
    a_ub = np.hstack([matrix, -np.ones((m, 1))])
    b_ub = np.zeros(m)
    bounds = [(gi, None) for gi in g] + [(None, None)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status == 0:
        return float(res.fun)
    if res.status == 3:
        log.debug("envelope unbounded below; certificate direction %s",
                  unbounded_direction_from_matrix(matrix))
        return float("-inf")
    raise ModelError(f"envelope LP failed with status {res.status}: {res.message}")


def unbounded_direction_from_matrix(matrix, tol=DEFAULT_TOL):
    """A ray certifying that the envelope is -inf: a direction d >= 0 with
    (row . d) < 0 for every generator row, or None when bounded."""
    m, n = matrix.shape
    res = linprog(np.zeros(n), A_ub=matrix, b_ub=-np.ones(m),
                  bounds=[(0, None)] * n, method="highs")
    if res.status == 0:
        return res.x
    return None


def unbounded_direction(mu):
    """Ray certificate for an unbounded envelope of `mu`, or None."""
    return unbounded_direction_from_matrix(mu.matrix)


class WeakLimit:
    """Outcome of a weak-limit extraction.

    ``converged`` reports whether every basis trace is Cauchy within the
    tolerance over the inspected tail; ``limit`` (when converged) is the
    supremum of the generators collected from the tail; ``oscillation``
    is the worst per-basis deviation seen in the tail.
    """

    def __init__(self, converged, limit, oscillation, traces):
        self.converged = converged
        self.limit = limit
        self.oscillation = oscillation
        self.traces = traces

    def __bool__(self):
        return self.converged


def weak_limit(seq, basis=None, tol=DEFAULT_TOL, tail=None):
    """Detect weak convergence of a submeasure sequence on a basis.

    The per-basis value traces must be Cauchy within `tol` over the tail
    window (default: last quarter, at least the last two entries).  The
    limit is represented as the supremum of all generators appearing in
    the tail.
    """
    seq = list(seq)
    if not seq:
        raise PreconditionError("empty sequence")
    space = seq[0].space
    for mu in seq:
        check_same_space(space, mu.space, "sequence members")
    norms = [mu.mass_info().norm for mu in seq]
    if not all(np.isfinite(norms)):
        raise PreconditionError("sequence norms must be uniformly bounded")
    if basis is None:
        basis = [FunctionVector.indicator(space, [p]) for p in space.points]

    values = np.array([[mu.evaluate(phi) for phi in basis] for mu in seq])
    k = tail if tail is not None else max(2, len(seq) // 4)
    k = min(k, len(seq))
    window = values[-k:]
    oscillation = float(np.max(window.max(axis=0) - window.min(axis=0))) if k > 1 else 0.0
    converged = oscillation <= tol
    limit = None
    if converged:
        gens = [g for mu in seq[-k:] for g in mu.generators]
        limit = StrongSubmeasure(space, gens).dedup()
    return WeakLimit(converged, limit, oscillation, values)


def convergent_subsequence(seq, basis=None, tol=1e-6):
    """Indices of a subsequence whose basis traces pairwise agree within tol.

    Finite-space weak compactness made constructive: bucket the bounded
    value vectors on a grid of mesh `tol`; the fullest bucket is a
    convergent subsequence by pigeonhole.
    """
    seq = list(seq)
    space = seq[0].space
    if basis is None:
        basis = [FunctionVector.indicator(space, [p]) for p in space.points]
    buckets = {}
    for i, mu in enumerate(seq):
        key = tuple(int(np.floor(mu.evaluate(phi) / tol)) for phi in basis)
        buckets.setdefault(key, []).append(i)
    best = max(buckets.values(), key=len)
    return best
