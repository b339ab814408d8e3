"""Bundled finite models: blowup projection, Cremona involution, a
transcendental-style map with a dense-image point, and small helper maps
used by the dynamics suites."""

from __future__ import annotations

from dataclasses import dataclass

from .correspondence import Correspondence, EndoCorrespondence
from .errors import ModelError
from .measures import StrongSubmeasure, dirac
from .space import FiniteSpace


@dataclass
class BlowupModel:
    """Blowup of an `n_base`-point space at the distinguished point ``p``:
    the blown-up space replaces ``p`` with `n_fiber` exceptional points and
    ``projection`` collapses them back."""

    base_space: FiniteSpace
    blownup_space: FiniteSpace
    center: str
    exceptional: tuple
    projection: Correspondence  # blown-up space -> base space

    def generating_family(self, weight=1.0):
        """One point mass of the given weight per exceptional point: the
        explicit section family whose supremum realizes the pullback of
        `weight` times the point mass at the center."""
        return [dirac(self.blownup_space, v, weight) for v in self.exceptional]


def build_blowup_model(n_base, n_fiber):
    if n_base < 2 or n_fiber < 1:
        raise ModelError("blowup model needs n_base >= 2 and n_fiber >= 1")
    others = [f"x{i}" for i in range(1, n_base)]
    base = FiniteSpace(["p"] + others)
    exceptional = tuple(f"v{i}" for i in range(1, n_fiber + 1))
    blownup = FiniteSpace(list(exceptional) + others,
                          named_subsets={"exceptional": exceptional})
    edges = [(v, "p", 1) for v in exceptional] + [(x, x, 1) for x in others]
    limit_fibers = None
    if n_fiber > 1:
        limit_fibers = {"p": [(v, 1.0) for v in exceptional]}
    projection = Correspondence(blownup, base, edges, indeterminacy=(),
                                generic_degree=1, limit_fibers=limit_fibers)
    return BlowupModel(base, blownup, "p", exceptional, projection)


@dataclass
class CremonaModel:
    """Finite model of the plane Cremona involution: three fundamental
    points ``e0, e1, e2``, sample points on each of the three coordinate
    lines, and fixed generic points.  Each ``e_i`` blows up to the line
    ``Sigma_i`` (which contains the other two fundamental points) and the
    line off the fundamental points contracts back to ``e_i``."""

    space: FiniteSpace
    map: EndoCorrespondence
    n_line: int

    @property
    def e_points(self):
        return ("e0", "e1", "e2")

    def sigma(self, i):
        """Labels of the line Sigma_i, fundamental points included."""
        return self.space.subset_labels(f"Sigma{i}")

    def samples(self, i):
        return [q for q in self.sigma(i) if not q.startswith("e")]


def build_cremona_model(n_line, n_generic=2):
    if n_line < 2:
        raise ModelError("Cremona model needs n_line >= 2")
    es = ["e0", "e1", "e2"]
    samples = {i: [f"s{i}_{k}" for k in range(1, n_line + 1)] for i in range(3)}
    generic = [f"g{k}" for k in range(1, n_generic + 1)]
    sigma = {i: samples[i] + [e for e in es if e != f"e{i}"] for i in range(3)}
    space = FiniteSpace(
        es + samples[0] + samples[1] + samples[2] + generic,
        named_subsets={f"Sigma{i}": sigma[i] for i in range(3)} | {"generic": generic},
    )
    edges = []
    for i in range(3):
        edges.extend((f"e{i}", q, 1) for q in sigma[i])
        edges.extend((q, f"e{i}", 1) for q in samples[i])
    edges.extend((g, g, 1) for g in generic)
    limit_fibers = {f"e{i}": [(q, 1.0) for q in sigma[i]] for i in range(3)}
    j = EndoCorrespondence(space, edges, indeterminacy=es, generic_degree=1,
                           limit_fibers=limit_fibers)
    return CremonaModel(space, j, n_line)


@dataclass
class TranscendentalModel:
    """Sphere net plus one essential-singularity point whose image is
    dense: its fiber is the whole space, so pushing a point mass there
    yields the supremum of all point masses."""

    space: FiniteSpace
    map: EndoCorrespondence
    infinity: str

    def point_mass_sup(self):
        return StrongSubmeasure.sup_of([dirac(self.space, p) for p in self.space.points])


def build_transcendental_model(n_net, finite_map=None):
    if n_net < 2:
        raise ModelError("transcendental model needs n_net >= 2")
    net = [f"q{i}" for i in range(n_net)]
    space = FiniteSpace(["inf"] + net, named_subsets={"net": net})
    if finite_map is None:
        # contraction along the net with fixed point q0
        finite_map = {f"q{i}": f"q{max(i - 1, 0)}" for i in range(n_net)}
    edges = [(q, finite_map[q], 1) for q in net]
    edges += [("inf", p, 1) for p in space.points]
    f = EndoCorrespondence(space, edges, indeterminacy=["inf"], generic_degree=1,
                           limit_fibers=None, same_dimension=False)
    return TranscendentalModel(space, f, "inf")


def point_mass_sup(space, labels=None):
    """sup of point masses over the given labels (default: all points)."""
    labels = space.points if labels is None else labels
    return StrongSubmeasure.sup_of([dirac(space, p) for p in labels])


def cycle_model(k):
    """Single-valued k-cycle permutation."""
    space = FiniteSpace([f"c{i}" for i in range(k)])
    edges = [(f"c{i}", f"c{(i + 1) % k}", 1) for i in range(k)]
    return EndoCorrespondence(space, edges)


def full_relation_model(k):
    """Every point maps to every point: the full shift on k symbols."""
    space = FiniteSpace([f"a{i}" for i in range(k)])
    edges = [(p, q, 1) for p in space.points for q in space.points]
    return EndoCorrespondence(space, edges, indeterminacy=list(space.points),
                              generic_degree=k)


def golden_mean_model():
    """Two symbols, transitions 0->0, 0->1, 1->0."""
    space = FiniteSpace(["a0", "a1"])
    edges = [("a0", "a0", 1), ("a0", "a1", 1), ("a1", "a0", 1)]
    return EndoCorrespondence(space, edges, indeterminacy=["a0"], generic_degree=2,
                              limit_fibers={"a1": [("a0", 1.0)]})
