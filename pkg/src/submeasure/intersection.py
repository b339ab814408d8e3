"""Least-negative aggregation of signed-measure families.

A :class:`SignedFamily` bundles signed measures of a common total mass
(the intersection number) together with declared weak-limit members.
The aggregate keeps exactly the members whose negative-part mass is
minimal and takes their supremum; families ordered first by that minimal
negative mass, then by pointwise domination of the aggregates.
"""

from __future__ import annotations

import numpy as np

from .errors import ModelError
from .measures import (
    SignedMeasure,
    StrongSubmeasure,
    dirac,
    negative_part_mass,
    uniform,
)
from .space import FiniteSpace, check_same_space

MASS_TOL = 1e-9


class SignedFamily:
    """Finite family of signed measures with a common total mass."""

    def __init__(self, space, members, declared_limits=(), intersection_number=None):
        members = list(members)
        declared_limits = list(declared_limits)
        if not members:
            raise ModelError("family needs at least one member")
        for m in members + declared_limits:
            check_same_space(space, m.space, "family members")
        if intersection_number is None:
            intersection_number = members[0].mass()
        self.space = space
        self.intersection_number = float(intersection_number)
        for k, m in enumerate(members + declared_limits):
            if abs(m.mass() - self.intersection_number) > MASS_TOL:
                raise ModelError(
                    f"member {k} has mass {m.mass():.12g}, expected the "
                    f"intersection number {self.intersection_number:.12g}"
                )
        self.members = _dedup(members)
        self.declared_limits = _dedup(declared_limits)

    def all_members(self):
        return self.members + self.declared_limits

    def __repr__(self):
        return (f"SignedFamily({len(self.members)} members, "
                f"{len(self.declared_limits)} limits, c={self.intersection_number})")


def _dedup(measures):
    seen = {}
    for m in measures:
        seen.setdefault(m.weights.tobytes(), m)
    return list(seen.values())


def minimal_negative_mass(family):
    """The smallest negative-part mass over members and declared limits;
    nonnegative by the decomposition-infimum definition."""
    return min(negative_part_mass(m) for m in family.all_members())


def least_negative(family, tol=MASS_TOL):
    """Supremum of the members whose negative-part mass is minimal.

    Members within `tol` of the minimum are all retained (ties kept).
    Every generator of the result has total mass equal to the
    intersection number, and the aggregate's norm is bounded by
    c + 2 * minimal negative mass.
    """
    kappa = minimal_negative_mass(family)
    kept = [m for m in family.all_members() if negative_part_mass(m) <= kappa + tol]
    aggregate = StrongSubmeasure(family.space, kept)
    bound = family.intersection_number + 2 * (kappa + tol)
    tv = max(m.total_variation() for m in kept)
    if tv > bound + MASS_TOL:
        raise ModelError(
            f"aggregate norm {tv:.12g} exceeds the mass bound {bound:.12g}"
        )
    return aggregate


def precedes(f1, f2, tol=MASS_TOL):
    """Partial order: strictly smaller minimal negative mass wins; on
    ties the aggregates are compared pointwise on the indicator basis."""
    check_same_space(f1.space, f2.space, "families")
    k1, k2 = minimal_negative_mass(f1), minimal_negative_mass(f2)
    if k1 < k2 - tol:
        return True
    if k2 < k1 - tol:
        return False
    v1 = least_negative(f1, tol).basis_values()
    v2 = least_negative(f2, tol).basis_values()
    return bool(np.all(v1 >= v2 - tol))


def family_sum(f1, f2):
    """Pairwise sums of members; sums touching a declared limit stay
    declared limits.  Intersection numbers add."""
    check_same_space(f1.space, f2.space, "families")
    members = [a + b for a in f1.members for b in f2.members]
    limits = []
    for a in f1.members + f1.declared_limits:
        for b in f2.members + f2.declared_limits:
            if a in f1.declared_limits or b in f2.declared_limits:
                limits.append(a + b)
    return SignedFamily(
        f1.space, members, limits,
        intersection_number=f1.intersection_number + f2.intersection_number,
    )


def build_line_family(n, n_ambient=2):
    """Point masses along an n-point net on a curve, mass 1: the family
    of pencil limits through the curve, all positive."""
    if n < 1:
        raise ModelError("line family needs n >= 1")
    net = [f"d{k}" for k in range(1, n + 1)]
    ambient = [f"z{k}" for k in range(1, n_ambient + 1)]
    space = FiniteSpace(net + ambient, named_subsets={"curve": net})
    members = [dirac(space, p) for p in net]
    return SignedFamily(space, members, intersection_number=1.0)


def build_exceptional_family(n, n_ambient=2):
    """Negated point masses along an n-point net on a contractible curve
    of self-intersection -1, plus the averaged weak limit."""
    if n < 1:
        raise ModelError("exceptional family needs n >= 1")
    net = [f"d{k}" for k in range(1, n + 1)]
    ambient = [f"z{k}" for k in range(1, n_ambient + 1)]
    space = FiniteSpace(net + ambient, named_subsets={"curve": net})
    members = [-1.0 * dirac(space, p) for p in net]
    limits = [-1.0 * uniform(space, labels=net, mass=1.0)]
    return SignedFamily(space, members, limits, intersection_number=-1.0)


def build_custom_family(space, member_weights, limit_weights=(), intersection_number=None):
    members = [SignedMeasure(space, w) for w in member_weights]
    limits = [SignedMeasure(space, w) for w in limit_weights]
    return SignedFamily(space, members, limits, intersection_number)
