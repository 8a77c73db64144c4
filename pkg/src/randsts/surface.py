"""Topology and combinatorial geometry of the square-tiled surface S(sigma, tau).

Square ``sigma(i)`` sits to the right of square ``i`` and ``tau(i)`` on top of
it. The bottom-left corner of square ``i`` belongs to the vertex indexed by the
cycle of the commutator [sigma, tau] that contains ``i``; that corner is flat
exactly when ``i`` is a fixed point of the commutator.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .partitions import format_partition
from .permcore import (
    Permutation,
    PermutationError,
    commutator,
    cycles,
    fixed_points,
    format_cycles,
    orbits,
)

__all__ = [
    "Holonomy",
    "SquareTiledSurface",
    "StratumSignature",
    "Cylinder",
    "SurfaceReport",
    "analyze",
    "horizontal_cylinders",
    "classify_holonomy",
    "stratum_of",
]


class Holonomy(str, Enum):
    TORUS = "H"  # holonomy torus
    VISIBILITY = "V"  # certified visibility surface, not a holonomy torus
    UNDETERMINED = "U"  # neither criterion applies


@dataclass(frozen=True)
class SquareTiledSurface:
    sigma: Permutation
    tau: Permutation

    def __post_init__(self):
        if self.sigma.n != self.tau.n:
            raise PermutationError(f"degree mismatch: {self.sigma.n} != {self.tau.n}")

    @property
    def n(self) -> int:
        return self.sigma.n


@dataclass(frozen=True)
class StratumSignature:
    orders: tuple  # cone-angle excesses, weakly decreasing
    marked_points: int

    def __str__(self):
        return format_partition(self.orders)


@dataclass(frozen=True)
class Cylinder:
    bands: tuple  # sigma-cycles, bottom to top where the stacking is linear
    circumference: int

    @property
    def height(self) -> int:
        return len(self.bands)

    @property
    def squares(self) -> tuple:
        return tuple(sorted(x for b in self.bands for x in b))


@dataclass(frozen=True)
class SurfaceReport:
    n: int
    sigma: Permutation
    tau: Permutation
    commutator: Permutation
    vertex_profile: tuple
    vertex_count: int
    components: tuple
    connected: bool
    genus: int
    per_component: tuple  # (n_i, V_i, g_i)
    stratum: StratumSignature
    cylinders: tuple = field(repr=False)
    holonomy: Holonomy

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sigma": format_cycles(self.sigma),
            "tau": format_cycles(self.tau),
            "commutator": format_cycles(self.commutator),
            "vertex_profile": format_partition(self.vertex_profile),
            "vertex_count": self.vertex_count,
            "connected": self.connected,
            "num_components": len(self.components),
            "genus": self.genus,
            "per_component": [
                {"n": ni, "vertices": vi, "genus": gi} for ni, vi, gi in self.per_component
            ],
            "stratum": str(self.stratum),
            "marked_points": self.stratum.marked_points,
            "cylinders": [
                {"squares": list(c.squares), "circumference": c.circumference, "height": c.height}
                for c in self.cylinders
            ],
            "holonomy": self.holonomy.value,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def stratum_of(profile) -> StratumSignature:
    """Stratum from the commutator's cycle type."""
    orders = tuple(l - 1 for l in profile if l >= 2)
    return StratumSignature(orders, sum(1 for l in profile if l == 1))


def horizontal_cylinders(S: SquareTiledSurface, comm: Permutation | None = None) -> tuple:
    """Maximal horizontal cylinders.

    Each sigma-cycle is a band. A band merges with the band above it when every
    corner on the circle between them is flat, i.e. ``tau(i)`` is fixed by the
    commutator for every square ``i`` of the lower band. Flatness forces
    ``sigma(tau(i)) == tau(sigma(i))``, so the band above is a single sigma-cycle
    of the same length.
    """
    sigma, tau = S.sigma, S.tau
    if comm is None:
        comm = commutator(sigma, tau)
    flat = fixed_points(comm)
    bands = sorted(cycles(sigma), key=lambda c: c[0])
    band_of = {}
    for b, cyc in enumerate(bands):
        for x in cyc:
            band_of[x] = b

    parent = list(range(len(bands)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    up = {}
    for b, cyc in enumerate(bands):
        if all(tau(i) in flat for i in cyc):
            above = band_of[tau(cyc[0])]
            up[b] = above
            ra, rb = find(b), find(above)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: dict = {}
    for b in range(len(bands)):
        groups.setdefault(find(b), []).append(b)

    out = []
    for members in groups.values():
        members = set(members)
        # order bottom to top: start from a band nothing in the group merges into
        targets = {up[b] for b in members if b in up}
        starts = [b for b in sorted(members) if b not in targets]
        order = []
        b = starts[0] if starts else min(members)
        while b not in order and b in members:
            order.append(b)
            if b not in up:
                break
            b = up[b]
        for b in sorted(members):
            if b not in order:
                order.append(b)
        out.append(Cylinder(tuple(bands[b] for b in order), len(bands[order[0]])))
    out.sort(key=lambda c: c.squares[0])
    return tuple(out)


def classify_holonomy(S: SquareTiledSurface, comm: Permutation | None = None) -> Holonomy:
    """Three-valued classification from the commutator's fixed points.

    Holonomy torus iff the commutator is a derangement, or its (non-empty) fixed
    points are all fixed by both sigma and tau. Otherwise the surface is
    certified visibility when n > 2f; the converse is not known, hence U.
    """
    if comm is None:
        comm = commutator(S.sigma, S.tau)
    fix_c = fixed_points(comm)
    if not fix_c or fix_c <= (fixed_points(S.sigma) & fixed_points(S.tau)):
        return Holonomy.TORUS
    if S.n > 2 * len(fix_c):
        return Holonomy.VISIBILITY
    return Holonomy.UNDETERMINED


def analyze(sigma: Permutation, tau: Permutation) -> SurfaceReport:
    S = SquareTiledSurface(sigma, tau)
    n = S.n
    comm = commutator(sigma, tau)
    comm_cycles = cycles(comm)
    profile = tuple(len(c) for c in comm_cycles)
    V = len(comm_cycles)
    comps = tuple(orbits([sigma, tau]))

    comp_of = {}
    for k, comp in enumerate(comps):
        for x in comp:
            comp_of[x] = k
    verts = [0] * len(comps)
    for c in comm_cycles:
        verts[comp_of[c[0]]] += 1
    per_component = tuple(
        (len(comp), verts[k], (len(comp) - verts[k]) // 2 + 1) for k, comp in enumerate(comps)
    )

    return SurfaceReport(
        n=n,
        sigma=sigma,
        tau=tau,
        commutator=comm,
        vertex_profile=profile,
        vertex_count=V,
        components=comps,
        connected=len(comps) == 1,
        genus=(n - V) // 2 + 1,
        per_component=per_component,
        stratum=stratum_of(profile),
        cylinders=horizontal_cylinders(S, comm),
        holonomy=classify_holonomy(S, comm),
    )
