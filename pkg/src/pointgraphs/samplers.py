"""Coupled projective samplers for three random-graph families.

All randomness is drawn through keyed coins (see coins module) indexed by
absolute structural coordinates:

* graphon: one latent coin per vertex id, one edge coin per id pair;
* graphex: a unit-rate Poisson process on [0, n) x [0, y_max] built from
  independent unit lattice cells, each cell's count and point positions
  keyed by the cell coordinates, with edge coins keyed by point identities
  (cell, index); zero-degree vertices are removed from the output;
* rotation-invariant: a radially stratified Poisson process in the ball,
  one unit-volume shell at a time, with shell-keyed counts, radius coins,
  and spherical directions from normalized Gaussian coordinates.

Because every key is independent of the window size, sampling at a larger
window and restricting to a smaller one reproduces the smaller sample
exactly, label for label and edge for edge.  That is the executable form
of the projective-consistency contract, and it is what extend_sample
relies on.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .coins import CoinPRF, coin, coin_position, poisson_from_uniform
from .kernels import (
    GeoKernel,
    GraphexKernel,
    GraphonKernel,
    geo_prob_matrix,
    graphex_prob,
    graphex_support_bound,
    graphon_prob,
    kernel_from_dict,
    kernel_to_dict,
)
from .pairs import Graph, make_graph
from .windows import Window, WindowKind, contains, make_window, unit_ball_volume

FAMILIES = ("graphon", "graphex", "rotinv")


class SpecMismatchError(ValueError):
    """A graph was offered to a family spec it was not sampled from."""


@dataclass(frozen=True)
class PoissonRate:
    rate: float

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("Poisson rate must be positive")


@dataclass(frozen=True)
class RadialTable:
    """Expected point count per unit-volume radial shell; zero beyond the table."""

    rates: tuple

    def __post_init__(self):
        rates = tuple(float(r) for r in self.rates)
        object.__setattr__(self, "rates", rates)
        if not rates or any(r < 0 for r in rates):
            raise ValueError("shell rates must be nonnegative and nonempty")

    def rate(self, shell: int) -> float:
        return self.rates[shell - 1] if shell <= len(self.rates) else 0.0


@dataclass(frozen=True)
class FamilySpec:
    family: str
    kernel: object
    seed: int
    y_max: float | None = None
    dim: int | None = None
    point: object | None = None


def graphon_spec(kernel, seed: int) -> FamilySpec:
    if not isinstance(kernel, GraphonKernel):
        raise ValueError(f"{kernel!r} is not a graphon kernel")
    return FamilySpec("graphon", kernel, seed)


def graphex_spec(kernel, y_max: float, seed: int) -> FamilySpec:
    if not isinstance(kernel, GraphexKernel):
        raise ValueError(f"{kernel!r} is not a graphex kernel")
    if y_max <= 0:
        raise ValueError("y_max must be positive")
    if graphex_support_bound(kernel) > y_max:
        raise ValueError("kernel support exceeds the mark truncation y_max")
    return FamilySpec("graphex", kernel, seed, y_max=float(y_max))


def rotinv_spec(kernel, dim: int, point, seed: int) -> FamilySpec:
    if not isinstance(kernel, GeoKernel):
        raise ValueError(f"{kernel!r} is not a geometric kernel")
    if dim < 2:
        raise ValueError("dim must be >= 2")
    if not isinstance(point, (PoissonRate, RadialTable)):
        raise ValueError("rotinv specs need a PoissonRate or RadialTable point spec")
    return FamilySpec("rotinv", kernel, seed, dim=int(dim), point=point)


def window_for(spec: FamilySpec, n: float) -> Window:
    if spec.family == "graphon":
        return make_window(WindowKind.INTEGER_PREFIX, n)
    if spec.family == "graphex":
        return make_window(WindowKind.REAL_INTERVAL, n)
    return make_window(WindowKind.EUCLIDEAN_BALL, n, spec.dim)


# ---------------------------------------------------------------------------
# Spec (de)serialization and fingerprinting


def spec_to_dict(spec: FamilySpec) -> dict:
    out = {"family": spec.family, "kernel": kernel_to_dict(spec.kernel), "seed": spec.seed}
    if spec.y_max is not None:
        out["y_max"] = spec.y_max
    if spec.dim is not None:
        out["dim"] = spec.dim
    if isinstance(spec.point, PoissonRate):
        out["point"] = {"type": "poisson", "rate": spec.point.rate}
    elif isinstance(spec.point, RadialTable):
        out["point"] = {"type": "radial_table", "rates": list(spec.point.rates)}
    return out


def spec_from_dict(data: dict) -> FamilySpec:
    family = data.get("family")
    kernel = kernel_from_dict(data["kernel"])
    seed = int(data["seed"])
    if family == "graphon":
        return graphon_spec(kernel, seed)
    if family == "graphex":
        return graphex_spec(kernel, float(data["y_max"]), seed)
    if family == "rotinv":
        pdata = data["point"]
        if pdata["type"] == "poisson":
            point = PoissonRate(float(pdata["rate"]))
        elif pdata["type"] == "radial_table":
            point = RadialTable(tuple(pdata["rates"]))
        else:
            raise ValueError(f"unknown point spec {pdata['type']!r}")
        return rotinv_spec(kernel, int(data["dim"]), point, seed)
    raise ValueError(f"unknown family {family!r}")


def fingerprint(spec: FamilySpec) -> str:
    """Hash of the canonicalized spec (kernel, sizes, seed); embedded in outputs."""
    blob = json.dumps(spec_to_dict(spec), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def reseeded(spec: FamilySpec, seed: int) -> FamilySpec:
    return replace(spec, seed=seed)


# ---------------------------------------------------------------------------
# Samplers


def _edge_set(prf: CoinPRF, keys, prob) -> set:
    """Bernoulli edges over all index pairs; prob(i, j) -> probability.

    Certain edges (p >= 1) and impossible ones (p <= 0) consume no coin;
    since coins are keyed rather than sequential, skipping them cannot
    perturb any other decision.
    """
    edges = set()
    k = len(keys)
    for i in range(k):
        for j in range(i + 1, k):
            p = prob(i, j)
            if p <= 0.0:
                continue
            if p < 1.0 and coin(prf, "edge", keys[i], keys[j]) >= p:
                continue
            edges.add((i, j))
    return edges


def _edge_set_from_matrix(prf: CoinPRF, keys, pmat: np.ndarray) -> set:
    """Same contract as _edge_set, driven by a precomputed probability matrix.

    Indicator kernels resolve without touching the coin stream at all, so
    the certain edges can be read off in bulk.
    """
    k = len(keys)
    if k < 2:
        return set()
    iu, ju = np.triu_indices(k, 1)
    vals = pmat[iu, ju]
    edges = {
        (int(i), int(j)) for i, j in zip(iu[vals >= 1.0], ju[vals >= 1.0])
    }
    for t in np.flatnonzero((vals > 0.0) & (vals < 1.0)):
        i, j = int(iu[t]), int(ju[t])
        if coin(prf, "edge", keys[i], keys[j]) < float(vals[t]):
            edges.add((i, j))
    return edges


def sample_graphon(spec: FamilySpec, n: int) -> Graph:
    """Latent-variable graph on vertices 1..n.

    Vertex i's latent and every pair's edge coin are keyed by the absolute
    vertex ids, so the sample at n is the induced subgraph of the sample
    at any m >= n.
    """
    if spec.family != "graphon":
        raise ValueError("spec is not a graphon family")
    if n != int(n) or n < 1:
        raise ValueError("graphon windows need a positive integer size")
    n = int(n)
    prf = CoinPRF(spec.seed)
    latents = [coin(prf, "lat", i) for i in range(1, n + 1)]

    def prob(i: int, j: int) -> float:
        return graphon_prob(spec.kernel, latents[i], latents[j], n)

    edges = _edge_set(prf, tuple(range(1, n + 1)), prob)
    return make_graph(
        window_for(spec, n),
        tuple(range(1, n + 1)),
        edges,
        latents,
        "graphon",
        fingerprint(spec),
    )


def sample_graphex(spec: FamilySpec, n: float) -> Graph:
    """Graphex-style graph on [0, n): Poisson points with marks, kernel edges.

    The point process is assembled from independent unit cells of
    [0, n) x [0, y_max], each cell keyed by its absolute lattice
    coordinates.  Marks above the kernel support could never carry an
    edge, which is why truncating them at y_max leaves the pruned output
    distribution untouched.
    """
    if spec.family != "graphex":
        raise ValueError("spec is not a graphex family")
    if n <= 0:
        raise ValueError("window size must be positive")
    prf = CoinPRF(spec.seed)
    window = window_for(spec, n)
    xs, ys, keys = [], [], []
    for a in range(math.ceil(n)):
        for b in range(math.ceil(spec.y_max)):
            cnt = poisson_from_uniform(coin(prf, "cnt", a, b), 1.0)
            for idx in range(1, cnt + 1):
                x = a + coin_position(prf, "posx", a, b, idx)
                y = b + coin_position(prf, "posy", a, b, idx)
                if contains(window, x) and y < spec.y_max:
                    xs.append(x)
                    ys.append(y)
                    keys.append((a, b, idx))
    order = sorted(range(len(xs)), key=lambda t: xs[t])
    xs = [xs[t] for t in order]
    ys = [ys[t] for t in order]
    keys = [keys[t] for t in order]
    if len(set(xs)) != len(xs):
        raise RuntimeError("bit-equal label collision in graphex sample")

    def prob(i: int, j: int) -> float:
        return graphex_prob(spec.kernel, ys[i], ys[j])

    edges = _edge_set(prf, keys, prob)
    touched = {i for e in edges for i in e}
    keep = [i for i in range(len(xs)) if i in touched]
    remap = {old: new for new, old in enumerate(keep)}
    return make_graph(
        window,
        tuple(xs[i] for i in keep),
        {(remap[i], remap[j]) for i, j in edges},
        tuple(ys[i] for i in keep),
        "graphex",
        fingerprint(spec),
    )


def _gaussian_direction(prf: CoinPRF, shell: int, idx: int, dim: int):
    """Unit vector from Box-Muller pairs over the point's coin stream."""
    gs = []
    for m in range((dim + 1) // 2):
        u1 = coin(prf, "ang", shell, idx, 2 * m)
        u2 = coin(prf, "ang", shell, idx, 2 * m + 1)
        mag = math.sqrt(-2.0 * math.log(1.0 - u1))
        gs.append(mag * math.cos(2.0 * math.pi * u2))
        gs.append(mag * math.sin(2.0 * math.pi * u2))
    gs = gs[:dim]
    norm = math.sqrt(math.fsum(g * g for g in gs))
    if norm == 0.0:  # probability ~0; deterministic fallback
        return tuple([1.0] + [0.0] * (dim - 1))
    return tuple(g / norm for g in gs)


def sample_rotinv(spec: FamilySpec, n: float) -> Graph:
    """Rotation-invariant geometric graph in the ball of volume n.

    Radial coordinates are sampled shell by shell (unit-volume annuli, so
    the volume coordinate within a shell is uniform) and directions
    uniformly on the sphere, which is exactly the factorization available
    to any rotation-invariant point process.
    """
    if spec.family != "rotinv":
        raise ValueError("spec is not a rotinv family")
    if n <= 0:
        raise ValueError("window volume must be positive")
    dim = spec.dim
    prf = CoinPRF(spec.seed)
    window = window_for(spec, n)
    vd = unit_ball_volume(dim)
    points, radii, keys = [], [], []
    # One shell past ceil(n) so boundary rounding can never differ between
    # a direct sample and a restriction from a larger window.
    for shell in range(1, math.ceil(n) + 2):
        if isinstance(spec.point, PoissonRate):
            rate = spec.point.rate
        else:
            rate = spec.point.rate(shell)
        cnt = poisson_from_uniform(coin(prf, "cnt", shell), rate)
        for idx in range(1, cnt + 1):
            vol = (shell - 1) + coin(prf, "rad", shell, idx)
            r = (vol / vd) ** (1.0 / dim)
            direction = _gaussian_direction(prf, shell, idx, dim)
            p = tuple(r * c for c in direction)
            if contains(window, p):
                points.append(p)
                radii.append(r)
                keys.append((shell, idx))
    if len(set(points)) != len(points):
        raise RuntimeError("bit-equal label collision in rotinv sample")
    pmat = geo_prob_matrix(
        spec.kernel, np.asarray(points, dtype=float).reshape(len(points), dim), np.asarray(radii)
    )
    edges = _edge_set_from_matrix(prf, keys, pmat)
    return make_graph(window, points, edges, radii, "rotinv", fingerprint(spec))


def sample(spec: FamilySpec, n: float) -> Graph:
    if spec.family == "graphon":
        return sample_graphon(spec, n)
    if spec.family == "graphex":
        return sample_graphex(spec, n)
    if spec.family == "rotinv":
        return sample_rotinv(spec, n)
    raise ValueError(f"unknown family {spec.family!r}")


def extend_sample(spec: FamilySpec, graph: Graph, n: float, m: float) -> Graph:
    """Grow a sample from window n to window m without disturbing it.

    The window-n randomness is re-derived from the same keyed coins, so
    restricting the result back to window n reproduces ``graph`` exactly
    (for graphex families: its edge configuration; vertices isolated at n
    may gain edges at m).
    """
    if m < n:
        raise ValueError("target window must not shrink")
    if graph.fingerprint != fingerprint(spec):
        raise SpecMismatchError("graph was not sampled from this spec (fingerprint differs)")
    if graph.window != window_for(spec, n):
        raise SpecMismatchError(f"graph window does not match size {n}")
    return sample(spec, m)
