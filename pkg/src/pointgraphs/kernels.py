"""Connection kernels for the three graph families.

Graphon kernels take latent coordinates in [0,1], graphex kernels take
latent marks in R_+ (with bounded support so the mark space can be
truncated), and geometric kernels take point positions in R^d, via their
radii and angular separation where applicable.

Two deliberately broken kernels ship as negative controls for the test
harness: one whose edge probability depends on the window size (destroys
projectivity) and one tied to a fixed external direction (destroys
rotation invariance).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _check_prob(p: float, what: str) -> None:
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"{what} must lie in [0, 1], got {p!r}")


# ---------------------------------------------------------------------------
# Graphon kernels (latents in [0, 1])


@dataclass(frozen=True)
class Constant:
    p: float

    def __post_init__(self):
        _check_prob(self.p, "constant kernel value")


@dataclass(frozen=True)
class GraphonGrid:
    """Symmetric step function on a uniform grid over [0,1]^2.

    Latents are mapped to the nearest grid cell; no interpolation, so the
    kernel stays simple and exactly reproducible.
    """

    values: tuple

    def __post_init__(self):
        g = len(self.values)
        vals = tuple(tuple(float(v) for v in row) for row in self.values)
        object.__setattr__(self, "values", vals)
        for row in vals:
            if len(row) != g:
                raise ValueError("grid must be square")
            for v in row:
                _check_prob(v, "grid entry")
        for a in range(g):
            for b in range(g):
                if vals[a][b] != vals[b][a]:
                    raise ValueError("grid must be symmetric")

    def cell(self, x: float) -> int:
        g = len(self.values)
        return min(int(x * g), g - 1)


@dataclass(frozen=True)
class WindowScaledConstant:
    """Broken fixture: edge probability p divided by the window size.

    Samples at different window sizes then disagree in distribution, so
    projectivity tests must reject this family.
    """

    p: float

    def __post_init__(self):
        _check_prob(self.p, "base probability")


GraphonKernel = Constant | GraphonGrid | WindowScaledConstant


def graphon_prob(kernel: GraphonKernel, x_i: float, x_j: float, window_size: int) -> float:
    if isinstance(kernel, Constant):
        return kernel.p
    if isinstance(kernel, GraphonGrid):
        return kernel.values[kernel.cell(x_i)][kernel.cell(x_j)]
    if isinstance(kernel, WindowScaledConstant):
        return min(1.0, kernel.p / window_size)
    raise TypeError(f"not a graphon kernel: {kernel!r}")


# ---------------------------------------------------------------------------
# Graphex kernels (marks in R_+, bounded support)


@dataclass(frozen=True)
class GraphexIndicator:
    """W(y, y') = 1 when both marks are at most c."""

    c: float

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("indicator cutoff must be nonnegative")


@dataclass(frozen=True)
class GraphexProduct:
    """W(y, y') = (1 - y/a)_+ (1 - y'/a)_+, a product of linear ramps."""

    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("ramp width must be positive")


GraphexKernel = GraphexIndicator | GraphexProduct


def graphex_prob(kernel: GraphexKernel, y_i: float, y_j: float) -> float:
    if isinstance(kernel, GraphexIndicator):
        return 1.0 if (y_i <= kernel.c and y_j <= kernel.c) else 0.0
    if isinstance(kernel, GraphexProduct):
        return max(0.0, 1.0 - y_i / kernel.a) * max(0.0, 1.0 - y_j / kernel.a)
    raise TypeError(f"not a graphex kernel: {kernel!r}")


def graphex_support_bound(kernel: GraphexKernel) -> float:
    """Smallest b with W vanishing outside [0, b]^2."""
    if isinstance(kernel, GraphexIndicator):
        return kernel.c
    if isinstance(kernel, GraphexProduct):
        return kernel.a
    raise TypeError(f"not a graphex kernel: {kernel!r}")


# ---------------------------------------------------------------------------
# Geometric kernels (points in R^d)


@dataclass(frozen=True)
class HardDistance:
    r0: float

    def __post_init__(self):
        if self.r0 < 0:
            raise ValueError("connection radius must be nonnegative")


@dataclass(frozen=True)
class SoftDistance:
    """exp(-(dist / scale)^shape)."""

    scale: float
    shape: float

    def __post_init__(self):
        if self.scale <= 0 or self.shape <= 0:
            raise ValueError("scale and shape must be positive")


@dataclass(frozen=True)
class RadialSum:
    """1 when r_i + r_j <= threshold; an inhomogeneous model driven only by radii."""

    threshold: float


@dataclass(frozen=True)
class HyperbolicSoft:
    """Fermi-Dirac function of the hyperbolic distance.

    cosh d_H = cosh r_i cosh r_j - sinh r_i sinh r_j cos(angle); the edge
    probability is 1 / (1 + exp((d_H - R) / (2 T))).
    """

    R: float
    T: float

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("temperature must be positive")


@dataclass(frozen=True)
class FixedDirectionIndicator:
    """Broken fixture: edges only between points with positive first coordinate.

    Ties the kernel to an external axis, so rotation-invariance tests must
    reject it.
    """


GeoKernel = (
    Constant | HardDistance | SoftDistance | RadialSum | HyperbolicSoft | FixedDirectionIndicator
)

# Reductions below stay elementwise/broadcasted on purpose: the value
# computed for a pair of points must not depend on how many other points
# share the matrix, or coupled samples at different window sizes would
# disagree at the last bit.


def _pair_dist(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


def _pair_cos(points: np.ndarray, radii: np.ndarray) -> np.ndarray:
    safe = np.where(radii > 0, radii, 1.0)
    units = points / safe[:, None]
    cos = (units[:, None, :] * units[None, :, :]).sum(axis=-1)
    return np.clip(cos, -1.0, 1.0)


def geo_prob_matrix(kernel: GeoKernel, points: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Pairwise connection probabilities for a set of points (diagonal unused)."""
    k = len(points)
    if k == 0:
        return np.zeros((0, 0))
    if isinstance(kernel, Constant):
        return np.full((k, k), kernel.p)
    if isinstance(kernel, HardDistance):
        return (_pair_dist(points) <= kernel.r0).astype(float)
    if isinstance(kernel, SoftDistance):
        d = _pair_dist(points)
        return np.exp(-((d / kernel.scale) ** kernel.shape))
    if isinstance(kernel, RadialSum):
        s = radii[:, None] + radii[None, :]
        return (s <= kernel.threshold).astype(float)
    if isinstance(kernel, HyperbolicSoft):
        ch = np.cosh(radii)[:, None] * np.cosh(radii)[None, :] - np.sinh(radii)[
            :, None
        ] * np.sinh(radii)[None, :] * _pair_cos(points, radii)
        dh = np.arccosh(np.maximum(ch, 1.0))
        return 1.0 / (1.0 + np.exp((dh - kernel.R) / (2.0 * kernel.T)))
    if isinstance(kernel, FixedDirectionIndicator):
        right = points[:, 0] > 0
        return (right[:, None] & right[None, :]).astype(float)
    raise TypeError(f"not a geometric kernel: {kernel!r}")


# ---------------------------------------------------------------------------
# Config (de)serialization

_KERNEL_TYPES = {
    "constant": Constant,
    "graphon_grid": GraphonGrid,
    "window_scaled_constant": WindowScaledConstant,
    "graphex_indicator": GraphexIndicator,
    "graphex_product": GraphexProduct,
    "hard_distance": HardDistance,
    "soft_distance": SoftDistance,
    "radial_sum": RadialSum,
    "hyperbolic_soft": HyperbolicSoft,
    "fixed_direction_indicator": FixedDirectionIndicator,
}
_TYPE_NAMES = {cls: name for name, cls in _KERNEL_TYPES.items()}


def kernel_to_dict(kernel) -> dict:
    name = _TYPE_NAMES.get(type(kernel))
    if name is None:
        raise TypeError(f"unknown kernel {kernel!r}")
    out = {"type": name}
    if isinstance(kernel, (Constant, WindowScaledConstant)):
        out["p"] = kernel.p
    elif isinstance(kernel, GraphonGrid):
        out["values"] = [list(row) for row in kernel.values]
    elif isinstance(kernel, GraphexIndicator):
        out["c"] = kernel.c
    elif isinstance(kernel, GraphexProduct):
        out["a"] = kernel.a
    elif isinstance(kernel, HardDistance):
        out["r0"] = kernel.r0
    elif isinstance(kernel, SoftDistance):
        out["scale"], out["shape"] = kernel.scale, kernel.shape
    elif isinstance(kernel, RadialSum):
        out["threshold"] = kernel.threshold
    elif isinstance(kernel, HyperbolicSoft):
        out["R"], out["T"] = kernel.R, kernel.T
    return out


def kernel_from_dict(data: dict):
    try:
        cls = _KERNEL_TYPES[data["type"]]
    except KeyError as exc:
        raise ValueError(f"unknown kernel type {data.get('type')!r}") from exc
    kwargs = {k: v for k, v in data.items() if k != "type"}
    if cls is GraphonGrid:
        kwargs["values"] = tuple(tuple(row) for row in kwargs["values"])
    return cls(**kwargs)
