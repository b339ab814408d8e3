"""Finite-graph correspondences and submeasure transport.

A :class:`Correspondence` is a finite relation with multiplicities between
two finite spaces, modelling the graph of a dominant meromorphic map.
Points with several outgoing edges form the indeterminacy set.  Function
transport follows the graph: pullback takes fiber maxima (the finite-model
upper-semicontinuous envelope at indeterminate points), pushforward takes
multiplicity-weighted fiber sums on the covering locus and declared
limit-fiber maxima elsewhere.  Submeasure transport evaluates through the
transported function and, for positive submeasures, carries an explicit
generator representation obtained by splitting indeterminate mass over
fiber sections.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from .errors import ModelError, ModelIncompleteError, PreconditionError
from .measures import SignedMeasure, StrongSubmeasure
from .space import FunctionVector, check_same_space

#: hard cap on the section family spawned by one transported generator
MAX_SECTIONS = 200_000


class Correspondence:
    """Finite relation Gamma in X x Y with multiplicities.

    Parameters
    ----------
    source, target : FiniteSpace
    edges : iterable of (source_label, target_label, multiplicity);
        multiplicities are positive integers, parallel edges merge.
    indeterminacy : iterable of source labels; must equal the computed
        set of sources with more than one distinct target.
    generic_degree : declared topological degree; validated against
        incoming multiplicity sums on the covering locus.
    limit_fibers : mapping target_label -> [(source_label, weight)],
        the declared limit data for target points where the incoming
        multiplicity count does not realize the generic degree.
    same_dimension : whether function pushforward (and hence submeasure
        pullback) is meaningful for this model.
    """

    def __init__(self, source, target, edges, indeterminacy=(), generic_degree=1,
                 limit_fibers=None, same_dimension=True):
        self.source = source
        self.target = target
        self.generic_degree = int(generic_degree)
        self.same_dimension = bool(same_dimension)
        if self.generic_degree < 1:
            raise ModelError("generic_degree must be a positive integer")

        merged = {}
        for x, y, m in edges:
            if not float(m).is_integer() or m < 1:
                raise ModelError(f"edge ({x!r}, {y!r}) multiplicity must be a positive integer")
            key = (source.index(x), target.index(y))
            merged[key] = merged.get(key, 0) + int(m)
        if not merged:
            raise ModelError("correspondence needs at least one edge")
        self.edges = [(i, j, m) for (i, j), m in sorted(merged.items())]

        self._fibers = defaultdict(list)      # source index -> [(target index, mult)]
        self._cofibers = defaultdict(list)    # target index -> [(source index, mult)]
        for i, j, m in self.edges:
            self._fibers[i].append((j, m))
            self._cofibers[j].append((i, m))

        for i, p in enumerate(source.points):
            if i not in self._fibers:
                raise ModelError(f"source point {p!r} has no outgoing edge")
        for j, q in enumerate(target.points):
            if j not in self._cofibers:
                raise ModelError(f"target projection misses {q!r} (map not dominant)")

        computed = frozenset(i for i, fib in self._fibers.items() if len(fib) > 1)
        declared = frozenset(source.index(x) for x in indeterminacy)
        if computed != declared:
            comp = sorted(source.points[i] for i in computed)
            decl = sorted(source.points[i] for i in declared)
            raise ModelError(f"declared indeterminacy {decl} != computed {comp}")
        self.indeterminacy = computed

        self.limit_fibers = {}
        if limit_fibers:
            for y, pairs in limit_fibers.items():
                j = target.index(y)
                entries = []
                for x, w in pairs:
                    if w <= 0:
                        raise ModelError(f"limit fiber weight for {y!r} must be positive")
                    entries.append((source.index(x), float(w)))
                if not entries:
                    raise ModelError(f"limit fiber for {y!r} is empty")
                self.limit_fibers[j] = entries

        image_of_indeterminacy = set()
        for i in self.indeterminacy:
            image_of_indeterminacy.update(j for j, _ in self._fibers[i])
        self.image_of_indeterminacy = frozenset(image_of_indeterminacy)

        # covering-locus check: targets that neither receive indeterminate
        # mass nor carry limit data must realize the generic degree
        for j, q in enumerate(target.points):
            total = sum(m for _, m in self._cofibers[j])
            if total != self.generic_degree:
                if j not in self.image_of_indeterminacy and j not in self.limit_fibers:
                    raise ModelError(
                        f"target {q!r} has incoming multiplicity {total}, expected "
                        f"generic degree {self.generic_degree}; declare limit fibers "
                        f"or fix the model"
                    )

    # -- structure ------------------------------------------------------

    def fiber(self, label):
        """Target labels reachable from a source point."""
        return [self.target.points[j] for j, _ in self._fibers[self.source.index(label)]]

    def image_point(self, label):
        """The unique image of a non-indeterminate source point."""
        i = self.source.index(label)
        if i in self.indeterminacy:
            raise PreconditionError(f"{label!r} is indeterminate; no single image")
        return self.target.points[self._fibers[i][0][0]]

    def is_single_valued(self):
        return not self.indeterminacy

    def covered(self, j):
        """Whether a target index realizes the generic degree by edge count."""
        return sum(m for _, m in self._cofibers[j]) == self.generic_degree

    def transpose(self, generic_degree=None, limit_fibers=None):
        """The reversed relation.  Limit-fiber data does not transpose
        mechanically, so it must be re-declared when needed."""
        edges = [(self.target.points[j], self.source.points[i], m) for i, j, m in self.edges]
        fan = defaultdict(set)
        for i, j, _ in self.edges:
            fan[j].add(i)
        indeterminacy = [self.target.points[j] for j, srcs in fan.items() if len(srcs) > 1]
        if generic_degree is None:
            ind = set(self.target.index(x) for x in indeterminacy)
            img = set()
            for j in ind:
                img.update(fan[j])
            # transpose in-multiplicity of an original source point is its
            # outgoing multiplicity here
            counts = [
                sum(m for i, _, m in self.edges if i == i2)
                for i2 in range(len(self.source))
                if i2 not in img
            ]
            # most common incoming multiplicity off the exceptional set
            generic_degree = max(set(counts), key=counts.count) if counts else 1
        return Correspondence(self.target, self.source, edges, indeterminacy,
                              generic_degree, limit_fibers, self.same_dimension)

    # -- function transport ----------------------------------------------

    def pullback_function(self, phi):
        """f^*(phi)(x) = max of phi over the fiber of x.

        Composition with the map off indeterminacy; the envelope (fiber
        max) at indeterminate points.
        """
        check_same_space(self.target, phi.space, "pullback argument")
        out = np.empty(len(self.source))
        for i in range(len(self.source)):
            out[i] = max(phi.values[j] for j, _ in self._fibers[i])
        return FunctionVector(self.source, out)

    def pushforward_function(self, phi):
        """f_*(phi)(y): multiplicity-weighted fiber sum on the covering
        locus, declared limit-fiber maximum at exceptional points."""
        if not self.same_dimension:
            raise PreconditionError("function pushforward needs equal-dimension mode")
        check_same_space(self.source, phi.space, "pushforward argument")
        out = np.empty(len(self.target))
        for j, q in enumerate(self.target.points):
            if self.covered(j):
                out[j] = sum(m * phi.values[i] for i, m in self._cofibers[j])
            elif j in self.limit_fibers:
                out[j] = max(w * phi.values[i] for i, w in self.limit_fibers[j])
            else:
                raise ModelIncompleteError(
                    f"target {q!r} is off the covering locus and has no limit fibers; "
                    f"complete the model"
                )
        return FunctionVector(self.target, out)

    # -- submeasure transport ---------------------------------------------

    def pushforward_submeasure(self, mu):
        """Transport a submeasure forward; evaluates phi as the envelope
        of mu at the pulled-back function.

        Positive submeasures get an explicit generator family: each
        generator's off-indeterminacy mass transports along the map and
        its indeterminate mass spawns one generator per fiber section.
        Non-positive submeasures are returned as a lazy evaluator backed
        by the envelope LP.
        """
        check_same_space(self.source, mu.space, "pushforward operand")
        if not mu.positivity_flag:
            return LazyTransport(self, mu, forward=True)
        gens = []
        for g in mu.generators:
            gens.extend(self._transport_measure(g))
        return StrongSubmeasure(self.target, gens).dedup()

    def _transport_measure(self, g):
        base = np.zeros(len(self.target))
        atoms = []
        for i, w in enumerate(g.weights):
            if w == 0:
                continue
            fib = self._fibers[i]
            if len(fib) == 1:
                base[fib[0][0]] += w
            else:
                atoms.append([(j, w) for j, _ in fib])
        vectors = _expand_sections(base, atoms)
        return [SignedMeasure(self.target, v) for v in vectors]

    def pullback_submeasure(self, nu):
        """Transport a submeasure backward; evaluates phi as the envelope
        of nu at the pushed-forward function.  Masses scale by the
        generic degree."""
        if not self.same_dimension:
            raise PreconditionError("submeasure pullback needs equal-dimension mode")
        check_same_space(self.target, nu.space, "pullback operand")
        if not nu.positivity_flag:
            return LazyTransport(self, nu, forward=False)
        gens = []
        for g in nu.generators:
            gens.extend(self._cotransport_measure(g))
        return StrongSubmeasure(self.source, gens).dedup()

    def _cotransport_measure(self, g):
        base = np.zeros(len(self.source))
        atoms = []
        for j, w in enumerate(g.weights):
            if w == 0:
                continue
            if self.covered(j):
                for i, m in self._cofibers[j]:
                    base[i] += w * m
            elif j in self.limit_fibers:
                atoms.append([(i, w * fw) for i, fw in self.limit_fibers[j]])
            else:
                raise ModelIncompleteError(
                    f"target {self.target.points[j]!r} carries mass but is off the "
                    f"covering locus with no limit fibers"
                )
        vectors = _expand_sections(base, atoms)
        return [SignedMeasure(self.source, v) for v in vectors]

    def __repr__(self):
        return (f"Correspondence({len(self.source)} -> {len(self.target)} points, "
                f"{len(self.edges)} edges, deg {self.generic_degree})")


def _expand_sections(base, atoms):
    """All vectors base + one choice per atom, each atom a list of
    (index, added weight) options.  One output vector per section."""
    total = 1
    for options in atoms:
        total *= len(options)
        if total > MAX_SECTIONS:
            raise ModelError("indeterminate support spawns too many fiber sections")
    out = [base]
    for options in atoms:
        rebuilt = []
        for v in out:
            for idx, add in options:
                w = v.copy()
                w[idx] += add
                rebuilt.append(w)
        out = rebuilt
    return out


class EndoCorrespondence(Correspondence):
    """A correspondence from a space to itself."""

    def __init__(self, space, edges, indeterminacy=(), generic_degree=1,
                 limit_fibers=None, same_dimension=True):
        super().__init__(space, space, edges, indeterminacy, generic_degree,
                         limit_fibers, same_dimension)

    @property
    def space(self):
        return self.source


class LazyTransport:
    """Transported non-positive submeasure, evaluated through the envelope
    LP on demand; no generator representation is claimed."""

    def __init__(self, corr, mu, forward):
        self.corr = corr
        self.mu = mu
        self.forward = forward
        self.space = corr.target if forward else corr.source

    def evaluate(self, phi):
        if self.forward:
            g = self.corr.pullback_function(phi)
        else:
            g = self.corr.pushforward_function(phi)
        return self.mu.envelope(g)


def identity_correspondence(space):
    return EndoCorrespondence(space, [(p, p, 1) for p in space.points])


def compose(f, g):
    """Relational composition with multiplicity products.

    The composed transport satisfies g_* f_*(mu) >= (g o f)_*(mu) for
    positive mu, with equality when both maps are single-valued.  When a
    meromorphic composite has a smaller graph than the relational one
    (e.g. an involution composed with itself), model the composite map
    directly; this function composes the graphs.
    """
    check_same_space(f.target, g.source, "composition interface")
    acc = defaultdict(int)
    for x, y, m1 in f.edges:
        for yy, z, m2 in g.edges:
            if y == yy:
                acc[(x, z)] += m1 * m2
    edges = [(f.source.points[x], g.target.points[z], m) for (x, z), m in acc.items()]
    fan = defaultdict(set)
    for (x, z), _ in acc.items():
        fan[x].add(z)
    indeterminacy = [f.source.points[x] for x, zs in fan.items() if len(zs) > 1]
    # limit data composes mechanically only through single-edge preimages;
    # entries that cannot be derived are dropped and must be re-declared
    # before pushing functions through those targets
    limit_fibers = None
    if g.limit_fibers:
        limit_fibers = {}
        for z, entries in g.limit_fibers.items():
            pairs = []
            for y, w in entries:
                coedges = [(i, m) for i, jj, m in f.edges if jj == y]
                if len(coedges) != 1:
                    pairs = None
                    break
                i, m = coedges[0]
                pairs.append((f.source.points[i], w * m))
            if pairs:
                limit_fibers[g.target.points[z]] = pairs
        limit_fibers = limit_fibers or None
    cls = EndoCorrespondence if f.source == g.target else Correspondence
    args = (edges, indeterminacy, f.generic_degree * g.generic_degree,
            limit_fibers, f.same_dimension and g.same_dimension)
    if cls is EndoCorrespondence:
        return EndoCorrespondence(f.source, *args)
    return Correspondence(f.source, g.target, *args)
