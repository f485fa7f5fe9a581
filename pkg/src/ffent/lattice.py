"""Finite lattice boxes, regions, boundaries and halfspace cuts.

Sites of the box ``[-M, M]^d`` are numbered in row-major order over the
coordinates: the first coordinate varies slowest, exactly as
``numpy.ravel_multi_index`` with the default C order applied to ``x + M``.
The ordering is part of the result-file format and must not change.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, GeometryError

MAX_DIMENSION = 3


@dataclass(frozen=True)
class LatticeSpec:
    """The box ``[-M, M]^d`` of side ``L = 2M + 1``."""

    dimension: int
    half_width: int

    def __post_init__(self):
        if not 1 <= int(self.dimension) <= MAX_DIMENSION:
            raise GeometryError(
                f"dimension must be in [1, {MAX_DIMENSION}], got {self.dimension}"
            )
        if int(self.half_width) < 1:
            raise GeometryError(f"half_width must be >= 1, got {self.half_width}")

    @property
    def side(self) -> int:
        return 2 * self.half_width + 1

    @property
    def site_count(self) -> int:
        return self.side**self.dimension

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.side,) * self.dimension

    @cached_property
    def coords(self) -> np.ndarray:
        """Integer coordinates of all sites, shape ``(site_count, d)``."""
        grid = np.indices(self.shape).reshape(self.dimension, -1).T
        out = grid - self.half_width
        out.setflags(write=False)
        return out

    @property
    def center(self) -> int:
        """Flat index of the origin."""
        return self.flatten((0,) * self.dimension)

    def contains(self, x: Sequence[int]) -> bool:
        x = np.asarray(x)
        return x.shape == (self.dimension,) and bool(np.all(np.abs(x) <= self.half_width))

    def flatten(self, x) -> int | np.ndarray:
        """Flat index of coordinate ``x`` (or of each row of an ``(n, d)`` array)."""
        x = np.asarray(x, dtype=np.int64)
        single = x.ndim == 1
        x = np.atleast_2d(x)
        if x.shape[1] != self.dimension:
            raise GeometryError(f"expected {self.dimension} coordinates, got {x.shape[1]}")
        if np.any(np.abs(x) > self.half_width):
            raise GeometryError("coordinate outside the box")
        idx = np.ravel_multi_index(tuple((x + self.half_width).T), self.shape)
        return int(idx[0]) if single else idx

    def unflatten(self, i) -> tuple[int, ...]:
        i = int(i)
        if not 0 <= i < self.site_count:
            raise GeometryError(f"flat index {i} outside [0, {self.site_count})")
        return tuple(int(c) for c in self.coords[i])

    @cached_property
    def shell_order(self) -> np.ndarray:
        """Flat indices sorted by ``|x|_inf``, then lexicographically within a shell.

        The order of the sites with ``|x|_inf <= m`` is the same in every box
        with ``M >= m``, so a sequence of draws laid out in this order gives
        nested boxes the same values on their common sites.
        """
        x = self.coords
        keys = [x[:, k] for k in range(self.dimension - 1, -1, -1)] + [np.max(np.abs(x), axis=1)]
        out = np.lexsort(keys)
        out.setflags(write=False)
        return out

    def full(self) -> "Region":
        return Region(self, np.arange(self.site_count))


class Region:
    """A set of sites of a box, stored as sorted unique flat indices."""

    __slots__ = ("parent", "sites")

    def __init__(self, parent: LatticeSpec, sites: Iterable[int]):
        arr = np.unique(np.asarray(list(sites) if not isinstance(sites, np.ndarray) else sites,
                                   dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= parent.site_count):
            raise GeometryError("region contains sites outside its parent box")
        arr.setflags(write=False)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "sites", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Region is immutable")

    @classmethod
    def from_coords(cls, parent: LatticeSpec, coords) -> "Region":
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, parent.dimension)
        if coords.size == 0:
            return cls(parent, [])
        return cls(parent, np.atleast_1d(parent.flatten(coords)))

    @classmethod
    def from_mask(cls, parent: LatticeSpec, mask) -> "Region":
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (parent.site_count,):
            raise GeometryError("mask length must equal the site count")
        return cls(parent, np.flatnonzero(mask))

    def __len__(self) -> int:
        return int(self.sites.size)

    def __iter__(self):
        return iter(int(s) for s in self.sites)

    def __contains__(self, i) -> bool:
        pos = np.searchsorted(self.sites, i)
        return bool(pos < self.sites.size and self.sites[pos] == i)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return self.parent == other.parent and np.array_equal(self.sites, other.sites)

    def __hash__(self):
        return hash((self.parent, self.sites.tobytes()))

    def __repr__(self) -> str:
        return f"Region(d={self.parent.dimension}, M={self.parent.half_width}, |R|={len(self)})"

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.site_count, dtype=bool)
        m[self.sites] = True
        return m

    @property
    def coords(self) -> np.ndarray:
        return self.parent.coords[self.sites]

    def complement(self) -> "Region":
        return Region(self.parent, np.flatnonzero(~self.mask))

    def _check_parent(self, other: "Region"):
        if self.parent != other.parent:
            raise GeometryError("regions belong to different boxes")

    def union(self, other: "Region") -> "Region":
        self._check_parent(other)
        return Region(self.parent, np.union1d(self.sites, other.sites))

    def intersection(self, other: "Region") -> "Region":
        self._check_parent(other)
        return Region(self.parent, np.intersect1d(self.sites, other.sites))

    def difference(self, other: "Region") -> "Region":
        self._check_parent(other)
        return Region(self.parent, np.setdiff1d(self.sites, other.sites))

    def issubset(self, other: "Region") -> bool:
        self._check_parent(other)
        return bool(np.all(np.isin(self.sites, other.sites)))

    def to_json(self) -> dict:
        return {
            "dimension": self.parent.dimension,
            "half_width": self.parent.half_width,
            "sites": [int(s) for s in self.sites],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Region":
        spec = LatticeSpec(int(data["dimension"]), int(data["half_width"]))
        return cls(spec, [int(s) for s in data["sites"]])


def cube_region(spec: LatticeSpec, m: int) -> Region:
    """The max-norm ball ``{x : |x|_inf <= m}`` inside ``spec``."""
    if not 0 <= m <= spec.half_width:
        raise GeometryError(f"inner half-width {m} not in [0, {spec.half_width}]")
    inside = np.all(np.abs(spec.coords) <= m, axis=1)
    return Region.from_mask(spec, inside)


def _unit_steps(d: int) -> np.ndarray:
    steps = np.indices((3,) * d).reshape(d, -1).T - 1
    return steps[np.any(steps != 0, axis=1)]


def boundary(region: Region) -> Region:
    """Sites of ``region`` at max-norm distance 1 from its complement.

    The complement includes everything outside the parent box, so the
    faces of the box count as boundary whenever the region touches them.
    """
    if len(region) == 0:
        return region
    spec = region.parent
    coords = region.coords
    mask = region.mask
    on_boundary = np.zeros(len(region), dtype=bool)
    for step in _unit_steps(spec.dimension):
        nb = coords + step
        outside_box = np.any(np.abs(nb) > spec.half_width, axis=1)
        inside = ~outside_box
        leaves = outside_box.copy()
        idx = np.ravel_multi_index(tuple((nb[inside] + spec.half_width).T), spec.shape)
        leaves[inside] = ~mask[idx]
        on_boundary |= leaves
    return Region(spec, region.sites[on_boundary])


def set_distance(a: Region, b: Region) -> int:
    """``min ||x - y||_inf`` over ``x`` in ``a`` and ``y`` in ``b``."""
    if len(a) == 0 or len(b) == 0:
        raise DomainError("distance to an empty set is undefined")
    a._check_parent(b)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    dist, _ = cKDTree(large.coords).query(small.coords, k=1, p=np.inf)
    return int(round(float(np.min(dist))))


def distances_to(region: Region, target: Region) -> np.ndarray:
    """``dist({x}, target)`` for every site ``x`` of ``region`` (in site order)."""
    if len(target) == 0:
        raise DomainError("distance to an empty set is undefined")
    region._check_parent(target)
    dist, _ = cKDTree(target.coords).query(region.coords, k=1, p=np.inf)
    return np.rint(dist).astype(np.int64)


def half_cut(spec: LatticeSpec, axis: int, offset: int, sign: int = +1) -> Region:
    """Finite-box halfspace ``{x : sign * (x_axis - offset) >= 0}``.

    ``axis`` is 1-based. Both signs include the hyperplane ``x_axis = offset``,
    so ``half_cut(+1, k)`` and ``half_cut(-1, k - 1)`` partition the box.
    """
    if not 1 <= axis <= spec.dimension:
        raise GeometryError(f"axis {axis} not in [1, {spec.dimension}]")
    if not -spec.half_width <= offset <= spec.half_width:
        raise GeometryError(f"offset {offset} outside [-{spec.half_width}, {spec.half_width}]")
    if sign not in (1, -1):
        raise GeometryError(f"sign must be +1 or -1, got {sign}")
    x = spec.coords[:, axis - 1]
    return Region.from_mask(spec, sign * (x - offset) >= 0)
