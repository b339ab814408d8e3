"""Invariant submeasures and entropy over the orbit subshift.

The forward-orbit space of an endo-correspondence is modelled by the
subshift of finite type on its edge graph.  Topological entropy is the
log spectral radius of the adjacency, measure entropy comes from
stationary Markov chains supported on the graph, and the entropy of an
invariant positive submeasure is the supremum of Markov entropies over
chains whose vertex marginal the submeasure dominates.
"""

from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from .correspondence import Correspondence
from .errors import ModelError, NonConvergenceError, PreconditionError
from .measures import (
    PositiveMeasure,
    StrongSubmeasure,
    combine,
    dirac,
    is_dominated,
)
from .space import FiniteSpace, indicator_basis

log = logging.getLogger("submeasure")

POWER_TOL = 1e-10


# -- orbit subshift ----------------------------------------------------


class OrbitSFT:
    """One-sided subshift of finite type on the edge graph of a map."""

    def __init__(self, base, adjacency=None, allowed_support=None):
        self.base = base
        self.space = base.space
        n = len(self.space)
        if adjacency is None:
            adjacency = np.zeros((n, n), dtype=int)
            for i, j, m in base.edges:
                adjacency[i, j] += m
        self.adjacency = np.array(adjacency, dtype=int)
        if self.adjacency.shape != (n, n):
            raise ModelError("adjacency shape does not match the vertex count")
        for i, j, m in base.edges:
            if self.adjacency[i, j] <= 0:
                raise ModelError("adjacency must be positive exactly on edges")
        if np.any((self.adjacency > 0) != _edge_mask(base, n)):
            raise ModelError("adjacency support must equal the edge set")
        if np.any(self.adjacency.sum(axis=1) == 0):
            raise ModelError("every vertex needs out-degree >= 1")
        self.adjacency.setflags(write=False)
        self.allowed_support = (
            None if allowed_support is None
            else frozenset(self.space.indices(allowed_support))
        )

    def transition_mask(self):
        """0/1 transition matrix, restricted to the allowed support."""
        mask = (self.adjacency > 0).astype(float)
        if self.allowed_support is not None:
            keep = np.zeros(len(self.space), dtype=bool)
            keep[list(self.allowed_support)] = True
            mask = mask * keep[:, None] * keep[None, :]
        return mask

    def words(self, depth):
        """All admissible vertex-index words of the given length."""
        if depth < 1:
            raise ModelError("word depth must be >= 1")
        mask = self.transition_mask()
        out = [(i,) for i in range(len(self.space)) if mask[i].any() or depth == 1]
        for _ in range(depth - 1):
            out = [w + (j,) for w in out for j in np.nonzero(mask[w[-1]])[0]]
        return out

    def truncation(self, depth):
        """Depth-N truncation: the space of admissible words together with
        the first- and second-letter projections as correspondences."""
        if depth < 2:
            raise ModelError("truncation depth must be >= 2")
        words = self.words(depth)
        labels = ["|".join(self.space.points[i] for i in w) for w in words]
        t_space = FiniteSpace(labels)
        first = _collapse(t_space, self.space, [w[0] for w in words])
        second = _collapse(t_space, self.space, [w[1] for w in words])
        return t_space, first, second

    def word_shift(self, depth):
        """The shift as a map between truncations: drop the first letter
        of a depth-N word, landing in the depth-(N-1) truncation."""
        if depth < 2:
            raise ModelError("word shift needs depth >= 2")
        words = self.words(depth)
        shorter = self.words(depth - 1)
        t_from = FiniteSpace(["|".join(self.space.points[i] for i in w) for w in words])
        t_to = FiniteSpace(["|".join(self.space.points[i] for i in w) for w in shorter])
        index = {w: k for k, w in enumerate(shorter)}
        return _collapse(t_from, t_to, [index[w[1:]] for w in words])

    def __repr__(self):
        return f"OrbitSFT({len(self.space)} vertices, {int((self.adjacency > 0).sum())} edges)"


def _edge_mask(base, n):
    mask = np.zeros((n, n), dtype=bool)
    for i, j, _ in base.edges:
        mask[i, j] = True
    return mask


def _collapse(source, target, image_indices):
    """Single-valued projection source -> target with declared limit
    fibers at every collapsed point (the envelope of the generic
    bijection is the fiber maximum, as for a blowup collapse)."""
    edges = [
        (source.points[i], target.points[j], 1) for i, j in enumerate(image_indices)
    ]
    in_mult = np.zeros(len(target), dtype=int)
    for j in image_indices:
        in_mult[j] += 1
    limit_fibers = {}
    for j in range(len(target)):
        if in_mult[j] != 1:
            fiber = [
                (source.points[i], 1.0)
                for i, jj in enumerate(image_indices) if jj == j
            ]
            if not fiber:
                raise ModelError(f"projection misses {target.points[j]!r}")
            limit_fibers[target.points[j]] = fiber
    return Correspondence(source, target, edges, indeterminacy=(),
                          generic_degree=1, limit_fibers=limit_fibers or None)


def build_orbit_sft(f, reachable_only=False):
    """The subshift on the edge graph of an endo-correspondence.

    With `reachable_only`, vertices are restricted to the forward closure
    of the points that never hit indeterminacy (the closure of generic
    orbits); by default the full path space is used, a documented
    superset.
    """
    if f.source != f.target:
        raise ModelError("orbit subshift needs an endo-correspondence")
    support = None
    if reachable_only:
        i_inf = indeterminacy_closure(f)
        seeds = [i for i in range(len(f.space)) if i not in i_inf]
        reach = set(seeds)
        frontier = list(seeds)
        fibers = {i: [j for j, _ in f._fibers[i]] for i in range(len(f.space))}
        while frontier:
            i = frontier.pop()
            for j in fibers[i]:
                if j not in reach:
                    reach.add(j)
                    frontier.append(j)
        support = [f.space.points[i] for i in sorted(reach)]
    return OrbitSFT(f, allowed_support=support)


def indeterminacy_closure(f):
    """Indices whose forward orbit (along the single-valued part) hits
    the indeterminacy set; computed by backward closure, terminating in
    at most |X| sweeps."""
    closure = set(f.indeterminacy)
    successor = {}
    for i in range(len(f.space)):
        if i not in f.indeterminacy:
            successor[i] = f._fibers[i][0][0]
    changed = True
    while changed:
        changed = False
        for i, j in successor.items():
            if i not in closure and j in closure:
                closure.add(i)
                changed = True
    return frozenset(closure)


# -- spectral entropy --------------------------------------------------


def power_iteration(matrix, tol=POWER_TOL, max_iter=500_000):
    """Dominant eigenpair of a nonnegative matrix with a simple Perron
    root (e.g. an irreducible block; see :func:`spectral_radius` for the
    general case).

    Runs on matrix + I so periodic structure cannot stall the iteration;
    the shift is removed from the returned value.  Stops on the residual
    ||A x - lambda x||.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if n == 0 or not np.any(a):
        return 0.0, np.zeros(n)
    shifted = a + np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        y = shifted @ x
        lam = float(x @ y)
        norm = np.linalg.norm(y)
        x = y / norm
        if np.linalg.norm(shifted @ x - lam * x) <= tol * max(1.0, abs(lam)):
            break
    else:
        raise NonConvergenceError("power iteration did not settle")
    return max(lam - 1.0, 0.0), x


def spectral_radius(matrix, tol=POWER_TOL):
    """Spectral radius of a nonnegative matrix: the maximum of the Perron
    roots of its strongly connected components."""
    mask = np.asarray(matrix, dtype=float)
    if not np.any(mask):
        return 0.0
    rho = 0.0
    for comp in strongly_connected_components(mask > 0):
        idx = sorted(comp)
        block = mask[np.ix_(idx, idx)]
        if len(idx) == 1 and block[0, 0] == 0:
            continue
        lam, _ = power_iteration(block, tol=tol)
        rho = max(rho, lam)
    return rho


def strongly_connected_components(mask):
    """SCCs of a 0/1 adjacency via reachability closure."""
    n = mask.shape[0]
    reach = (np.asarray(mask) > 0) | np.eye(n, dtype=bool)
    for _ in range(max(1, int(np.ceil(np.log2(max(n, 2)))))):
        reach = reach | (reach.astype(int) @ reach.astype(int) > 0)
    mutual = reach & reach.T
    seen = set()
    comps = []
    for i in range(n):
        if i in seen:
            continue
        comp = frozenset(np.nonzero(mutual[i])[0].tolist())
        seen |= comp
        comps.append(comp)
    return comps


def topological_entropy(sft, tol=POWER_TOL):
    """log of the spectral radius of the transition matrix.

    The radius is the maximum over strongly connected components, each
    handled by power iteration; an acyclic graph has entropy 0 (warned).
    """
    mask = sft.transition_mask()
    if not np.any(mask):
        log.warning("transition matrix is zero; entropy defaults to 0")
        return 0.0
    rho = spectral_radius(mask, tol=tol)
    if rho < 1.0:
        log.warning("no cycles in the transition graph; entropy defaults to 0")
        return 0.0
    return float(np.log(rho))


# -- Markov measures ---------------------------------------------------


class MarkovMeasure:
    """Stationary Markov measure supported on the subshift graph."""

    def __init__(self, sft, stationary, transitions, tol=1e-9):
        self.sft = sft
        self.stationary = stationary
        p = np.array(transitions, dtype=float)
        n = len(sft.space)
        pi = stationary.weights
        if p.shape != (n, n):
            raise ModelError("transition matrix shape mismatch")
        if abs(pi.sum() - 1.0) > tol:
            raise ModelError("stationary vector must have mass 1")
        if np.any(np.abs(p.sum(axis=1) - 1.0) > tol):
            raise ModelError("transition rows must sum to 1")
        if np.any((p > tol) & (sft.adjacency == 0)):
            raise ModelError("transition support must lie on the adjacency")
        if np.max(np.abs(pi @ p - pi)) > tol:
            raise ModelError("stationary vector is not invariant under the transitions")
        p.setflags(write=False)
        self.transitions = p

    def vertex_marginal(self):
        return self.stationary


def markov_entropy(m):
    """Entropy rate sum_i pi_i sum_j P_ij log(1 / P_ij), with 0 log 0 = 0."""
    from scipy.special import xlogy

    pi = m.stationary.weights
    p = m.transitions
    return float(-(pi @ xlogy(p, p).sum(axis=1)))


def parry_measure(sft, support=None):
    """The entropy-maximizing stationary Markov measure.

    Built from the Perron data of the transition matrix restricted to
    `support`; on a reducible graph the maximal-entropy strongly
    connected component carries the measure.
    """
    mask = sft.transition_mask()
    if support is not None:
        keep = np.zeros(len(sft.space), dtype=bool)
        keep[sft.space.indices(support)] = True
        mask = mask * keep[:, None] * keep[None, :]
    best = None
    for comp in strongly_connected_components(mask):
        idx = sorted(comp)
        block = mask[np.ix_(idx, idx)]
        if len(idx) == 1 and block[0, 0] == 0:
            continue
        lam, right = power_iteration(block)
        if lam <= 0:
            continue
        if best is None or lam > best[0]:
            _, left = power_iteration(block.T)
            best = (lam, idx, right, left)
    if best is None:
        raise ModelError("no cycle available for a Parry measure")
    lam, idx, right, left = best
    n = len(sft.space)
    block = mask[np.ix_(idx, idx)]
    pi = np.zeros(n)
    weights = left * right
    pi[idx] = weights / weights.sum()
    p = np.zeros((n, n))
    for a, i in enumerate(idx):
        row = block[a] * right
        p[i, np.array(idx)] = row / row.sum()
    _fill_stochastic_rows(p, sft)
    return MarkovMeasure(sft, PositiveMeasure(sft.space, pi), p, tol=1e-7)


def _fill_stochastic_rows(p, sft):
    """Give zero-mass vertices a deterministic admissible row."""
    for i in range(p.shape[0]):
        if p[i].sum() == 0:
            j = int(np.argmax(sft.adjacency[i] > 0))
            p[i, j] = 1.0


# -- invariant submeasures ---------------------------------------------


def _basis_values(mu):
    return mu.basis_values()


def cesaro_average(f, mu0, n):
    """(1/n) sum of the first n+1 pushforward iterates of mu0."""
    if n < 1:
        raise PreconditionError("cesaro average needs n >= 1")
    if not mu0.positivity_flag:
        raise PreconditionError("cesaro average needs a positive submeasure")
    current = mu0
    total = mu0
    for _ in range(n):
        current = f.pushforward_submeasure(current).prune()
        total = combine(total, current, "sum").prune()
    return total.scale(1.0 / n)


def _check_basis_order(f, mu0, direction, tol):
    pushed = f.pushforward_submeasure(mu0)
    base = _basis_values(mu0)
    new = _basis_values(pushed)
    if direction == "below" and np.any(new > base + tol):
        raise PreconditionError("pushforward does not decrease mu0 on the indicator basis")
    if direction == "above" and np.any(new < base - tol):
        raise PreconditionError("pushforward does not increase mu0 on the indicator basis")
    return pushed


def _iterate_to_fixed_point(f, mu0, tol, max_iter, direction, trace):
    if not mu0.positivity_flag:
        raise PreconditionError("invariant solvers need positive submeasures")
    if max_iter is None:
        max_iter = 10 * len(mu0.space) ** 2
    current = _check_basis_order(f, mu0, direction, tol).prune()
    prev_vals = _basis_values(mu0)
    for _ in range(max_iter):
        vals = _basis_values(current)
        if trace is not None:
            trace.append(vals)
        if np.max(np.abs(vals - prev_vals)) < tol:
            residual = np.max(np.abs(_basis_values(f.pushforward_submeasure(current)) - vals))
            if residual < tol:
                return current
        prev_vals = vals
        current = f.pushforward_submeasure(current).prune()
    raise NonConvergenceError(f"no invariant fixed point within {max_iter} iterations")


def largest_invariant_below(f, mu0, tol=1e-9, max_iter=None, trace=None):
    """Limit of the decreasing pushforward iterates of a seed satisfying
    f_*(mu0) <= mu0 on the indicator basis: a fixed point below mu0 that
    dominates every invariant measure below mu0.

    `trace`, when given, collects per-iteration indicator-basis values
    for convergence audits.
    """
    result = _iterate_to_fixed_point(f, mu0, tol, max_iter, "below", trace)
    if np.any(_basis_values(result) > _basis_values(mu0) + tol):
        raise NonConvergenceError("iteration left the order interval below mu0")
    return result


def smallest_invariant_above(f, mu0, tol=1e-9, max_iter=None, trace=None):
    """Limit of the increasing pushforward iterates of a seed satisfying
    f_*(mu0) >= mu0 on the indicator basis; evaluation at each fixed
    function is continuous along the monotone limit on a finite model,
    so the limit is invariant, and any invariant submeasure above mu0
    dominates every iterate and hence the limit."""
    result = _iterate_to_fixed_point(f, mu0, tol, max_iter, "above", trace)
    if np.any(_basis_values(result) < _basis_values(mu0) - tol):
        raise NonConvergenceError("iteration left the order interval above mu0")
    return result


def deterministic_successor(f):
    """x -> f(x) on the single-valued part."""
    return {
        i: f._fibers[i][0][0]
        for i in range(len(f.space))
        if i not in f.indeterminacy
    }


def find_cycles(f):
    """Cycles of the single-valued part avoiding indeterminate points."""
    succ = deterministic_successor(f)
    cycles = []
    seen = set()
    for start in succ:
        if start in seen:
            continue
        path = []
        pos = {}
        x = start
        while x in succ and x not in pos:
            if x in seen:
                break
            pos[x] = len(path)
            path.append(x)
            x = succ[x]
        if x in pos:
            cycle = tuple(path[pos[x]:])
            if all(c in succ for c in cycle):
                cycles.append(cycle)
        seen.update(path)
    return cycles


def sample_invariant_measures(f, rng, count, mass_range=(0.2, 1.0)):
    """Random invariant positive measures: mixtures of uniform cycle
    measures of the single-valued part."""
    cycles = find_cycles(f)
    if not cycles:
        return []
    out = []
    for _ in range(count):
        lam = rng.dirichlet(np.ones(len(cycles)))
        mass = rng.uniform(*mass_range)
        w = np.zeros(len(f.space))
        for c, l in zip(cycles, lam):
            w[list(c)] += mass * l / len(c)
        out.append(PositiveMeasure(f.space, w))
    return out


def sample_invariant_point_sups(f, rng, count):
    """Random invariant submeasures of the form sup of point masses over
    a forward-invariant vertex set (built by closing a random seed set
    forward and passing to the union of its eventual image cycle)."""
    fibers = {i: [j for j, _ in f._fibers[i]] for i in range(len(f.space))}
    out = []
    for _ in range(count):
        seed = {int(i) for i in np.nonzero(rng.random(len(f.space)) < 0.4)[0]}
        if not seed:
            seed = {int(rng.integers(len(f.space)))}
        closure = set(seed)
        frontier = list(seed)
        while frontier:
            i = frontier.pop()
            for j in fibers[i]:
                if j not in closure:
                    closure.add(j)
                    frontier.append(j)
        trajectory = [frozenset(closure)]
        current = frozenset(closure)
        while True:
            current = frozenset(j for i in current for j in fibers[i])
            if current in trajectory:
                loop = trajectory[trajectory.index(current):]
                invariant = frozenset().union(*loop)
                break
            trajectory.append(current)
        out.append(
            StrongSubmeasure.sup_of(
                [dirac(f.space, f.space.points[i]) for i in sorted(invariant)]
            )
        )
    return out


# -- submeasure entropy -------------------------------------------------


class EntropyResult(NamedTuple):
    value: float
    exact: bool
    certificate: object = None


def _is_point_mass_sup(mu):
    """Detect mu = c * sup of point masses; returns (c, support) or None."""
    pruned = mu.prune()
    support = []
    c = None
    for g in pruned.generators:
        nz = np.nonzero(g.weights)[0]
        if len(nz) != 1:
            return None
        w = g.weights[nz[0]]
        if c is None:
            c = w
        elif abs(w - c) > 1e-12:
            return None
        support.append(int(nz[0]))
    return c, sorted(set(support))


def check_invariance(f, mu, tol=1e-7):
    pushed = f.pushforward_submeasure(mu)
    return float(np.max(np.abs(_basis_values(pushed) - _basis_values(mu)))) <= tol


def submeasure_entropy(sft, mu, tol=1e-7):
    """Entropy of an invariant positive submeasure: the supremum of
    Markov entropies over stationary chains on the subshift whose vertex
    marginal the submeasure dominates.

    Exact (by subgraph Perron data) when mu is a sup of unit point
    masses; otherwise the best of (a) Parry measures of admissible
    support subgraphs and (b) the entropy-maximal feasible chain found
    by convex optimization over edge flows, returned as a certified
    lower bound with its witness chain.
    """
    if not mu.positivity_flag:
        raise PreconditionError("submeasure entropy needs a positive submeasure")
    if sft.base is not None and not check_invariance(sft.base, mu, tol):
        raise PreconditionError("submeasure is not invariant under the map")
    as_sup = _is_point_mass_sup(mu)
    if as_sup is not None and abs(as_sup[0] - 1.0) <= 1e-9:
        support = [sft.space.points[i] for i in as_sup[1]]
        restricted = OrbitSFT(sft.base, sft.adjacency, allowed_support=support)
        return EntropyResult(topological_entropy(restricted), True, None)

    best = -np.inf
    cert = None
    for candidate in _admissible_parry_candidates(sft, mu):
        h = markov_entropy(candidate)
        if h > best:
            best, cert = h, candidate
    flow = _max_entropy_flow(sft, mu)
    if flow is not None and flow[0] > best:
        best, cert = flow
    if cert is None:
        raise PreconditionError("no invariant probability marginal dominated by mu")
    return EntropyResult(float(best), False, cert)


def _admissible_parry_candidates(sft, mu):
    supports = [None]
    mask = sft.transition_mask()
    supports += [
        [sft.space.points[i] for i in sorted(comp)]
        for comp in strongly_connected_components(mask)
        if len(comp) > 1 or mask[tuple(comp)[0], tuple(comp)[0]]
    ]
    for g in mu.generators:
        supp = [sft.space.points[i] for i in np.nonzero(g.weights)[0]]
        if supp:
            supports.append(supp)
    out = []
    for support in supports:
        try:
            cand = parry_measure(sft, support=support)
        except (ModelError, NonConvergenceError):
            continue
        if is_dominated(cand.vertex_marginal(), mu, tol=1e-7):
            out.append(cand)
    return out


def _max_entropy_flow(sft, mu):
    """Maximize the entropy rate over stationary edge flows whose vertex
    marginal lies in the generator hull; concave, solved exactly."""
    import cvxpy as cp

    mask = sft.transition_mask()
    edges = [(i, j) for i in range(mask.shape[0]) for j in range(mask.shape[1]) if mask[i, j]]
    if not edges:
        return None
    q = cp.Variable(len(edges), nonneg=True)
    n = len(sft.space)
    out_rows = np.zeros((n, len(edges)))
    in_rows = np.zeros((n, len(edges)))
    for e, (i, j) in enumerate(edges):
        out_rows[i, e] = 1.0
        in_rows[j, e] = 1.0
    pi = out_rows @ q
    lam = cp.Variable(len(mu.generators), nonneg=True)
    constraints = [
        cp.sum(q) == 1,
        out_rows @ q == in_rows @ q,
        cp.sum(lam) == 1,
        pi == mu.matrix.T @ lam,
    ]
    obj = cp.Minimize(cp.sum(cp.rel_entr(q, pi[[i for i, _ in edges]])))
    prob = cp.Problem(obj, constraints)
    try:
        prob.solve()
    except cp.error.SolverError:
        return None
    if prob.status not in ("optimal", "optimal_inaccurate"):
        return None
    qv = np.maximum(np.asarray(q.value), 0.0)
    qv /= qv.sum()
    piv = out_rows @ qv
    p = np.zeros((n, n))
    for e, (i, j) in enumerate(edges):
        if piv[i] > 1e-12:
            p[i, j] = qv[e] / piv[i]
    _fill_stochastic_rows(p, sft)
    p /= p.sum(axis=1, keepdims=True)
    try:
        cert = MarkovMeasure(sft, PositiveMeasure(sft.space, piv / piv.sum()), p, tol=1e-6)
    except ModelError:
        return None
    return markov_entropy(cert), cert


# -- lifted measures and the projection inequality ----------------------


def lift_invariant_measure(f, mu, tol=1e-9):
    """The deterministic Markov lift of an invariant probability measure
    with no mass on the indeterminacy closure."""
    if not isinstance(mu, PositiveMeasure):
        mu = PositiveMeasure(mu.space, mu.weights)
    if abs(mu.mass() - 1.0) > tol:
        raise PreconditionError("lift needs a probability measure")
    i_inf = indeterminacy_closure(f)
    if any(mu.weights[i] > tol for i in i_inf):
        raise PreconditionError(
            "measure has mass on the indeterminacy closure; the lift is undefined"
        )
    succ = deterministic_successor(f)
    transported = np.zeros(len(f.space))
    for i, w in enumerate(mu.weights):
        if w > 0:
            transported[succ[i]] += w
    if np.max(np.abs(transported - mu.weights)) > tol:
        raise PreconditionError("measure is not invariant")
    sft = build_orbit_sft(f)
    p = np.zeros((len(f.space), len(f.space)))
    for i, w in enumerate(mu.weights):
        if w > 0:
            p[i, succ[i]] = 1.0
    _fill_stochastic_rows(p, sft)
    lift = MarkovMeasure(sft, PositiveMeasure(f.space, mu.weights), p, tol=tol)
    assert markov_entropy(lift) == 0.0  # deterministic chains carry no entropy
    return lift


class ProjectionReport(NamedTuple):
    holds: bool
    lhs: np.ndarray
    rhs: np.ndarray
    strict_witnesses: list


def projection_inequality_report(f, muhat, truncation, tol=1e-9):
    """Compare transporting a submeasure on the depth-N word space down
    to the base and then forward, against shifting first and projecting:
    the first route dominates, strictly when mass sits over indeterminate
    first letters."""
    t_space, first, second = truncation
    lhs_sub = f.pushforward_submeasure(first.pushforward_submeasure(muhat))
    rhs_sub = second.pushforward_submeasure(muhat)
    lhs = []
    rhs = []
    witnesses = []
    for phi, point in zip(indicator_basis(f.space), f.space.points):
        a = lhs_sub.evaluate(phi)
        b = rhs_sub.evaluate(phi)
        lhs.append(a)
        rhs.append(b)
        if a > b + tol:
            witnesses.append(point)
    lhs = np.array(lhs)
    rhs = np.array(rhs)
    return ProjectionReport(bool(np.all(lhs >= rhs - tol)), lhs, rhs, witnesses)


def kahler_entropy(models, tol=POWER_TOL):
    """Infimum of topological entropies over bundled compactification
    models of the same map."""
    models = list(models)
    if not models:
        raise PreconditionError("kahler entropy needs at least one model")
    return min(topological_entropy(build_orbit_sft(m), tol=tol) for m in models)
