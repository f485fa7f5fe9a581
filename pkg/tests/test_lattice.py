import itertools
import json

import numpy as np
import pytest

from ffent.errors import DomainError, GeometryError
from ffent.lattice import LatticeSpec, Region, boundary, cube_region, distances_to, half_cut, set_distance


def test_spec_derived_sizes():
    s = LatticeSpec(2, 3)
    assert (s.side, s.site_count, s.shape) == (7, 49, (7, 7))
    assert s.unflatten(s.center) == (0, 0)


@pytest.mark.parametrize("d,M", [(0, 1), (4, 1), (1, 0)])
def test_spec_bounds(d, M):
    with pytest.raises(GeometryError):
        LatticeSpec(d, M)


@pytest.mark.parametrize("d,M", [(1, 4), (2, 2), (3, 1)])
def test_flat_index_bijection(d, M):
    s = LatticeSpec(d, M)
    for i in range(s.site_count):
        assert s.flatten(s.unflatten(i)) == i
    for x in itertools.product(range(-M, M + 1), repeat=d):
        assert s.unflatten(s.flatten(x)) == x


def test_row_major_order():
    s = LatticeSpec(2, 1)
    assert s.unflatten(0) == (-1, -1)
    assert s.unflatten(1) == (-1, 0)
    assert s.unflatten(3) == (0, -1)


def test_flatten_outside_box():
    with pytest.raises(GeometryError):
        LatticeSpec(1, 2).flatten((3,))


def test_cube_examples():
    r = cube_region(LatticeSpec(1, 3), 1)
    assert sorted(x[0] for x in r.coords) == [-1, 0, 1]
    assert len(cube_region(LatticeSpec(2, 2), 2)) == 25
    assert len(cube_region(LatticeSpec(3, 2), 1)) == 27
    with pytest.raises(GeometryError):
        cube_region(LatticeSpec(1, 2), 3)


def test_region_set_algebra():
    s = LatticeSpec(2, 2)
    a = cube_region(s, 1)
    assert a.complement().complement() == a
    assert len(a) + len(a.complement()) == s.site_count
    b = half_cut(s, 1, 0, +1)
    assert a.intersection(b).issubset(a)
    assert a.union(b) == b.union(a)
    assert len(a.difference(b)) == len(a) - len(a.intersection(b))


def test_region_rejects_foreign_sites():
    with pytest.raises(GeometryError):
        Region(LatticeSpec(1, 1), [5])


def test_region_json_round_trip():
    r = cube_region(LatticeSpec(2, 3), 1)
    data = json.loads(json.dumps(r.to_json()))
    assert set(data) == {"dimension", "half_width", "sites"}
    assert Region.from_json(data) == r


def test_boundary_examples():
    s1 = LatticeSpec(1, 3)
    b = boundary(cube_region(s1, 1))
    assert sorted(x[0] for x in b.coords) == [-1, 1]
    full = LatticeSpec(2, 2).full()
    assert len(boundary(full)) == 16
    single = Region.from_coords(s1, [(0,)])
    assert boundary(single) == single
    assert len(boundary(Region(s1, []))) == 0


@pytest.mark.parametrize("d,M", [(1, 3), (2, 3), (3, 2)])
def test_boundary_of_full_box(d, M):
    s = LatticeSpec(d, M)
    assert len(boundary(s.full())) == s.side**d - (s.side - 2) ** d


def test_boundary_sites_touch_complement():
    s = LatticeSpec(2, 4)
    rng = np.random.default_rng(1)
    r = Region.from_mask(s, rng.random(s.site_count) < 0.5)
    b = boundary(r)
    assert b.issubset(r)
    comp = r.complement().coords
    for x in b.coords:
        outside_box = np.any(np.abs(x) == s.half_width)
        near = len(comp) and np.min(np.max(np.abs(comp - x), axis=1)) == 1
        assert outside_box or near


def test_set_distance_examples():
    s1 = LatticeSpec(1, 4)
    assert set_distance(Region.from_coords(s1, [(0,)]), Region.from_coords(s1, [(3,)])) == 3
    s2 = LatticeSpec(2, 3)
    a, b = Region.from_coords(s2, [(0, 0)]), Region.from_coords(s2, [(2, 1)])
    assert set_distance(a, b) == set_distance(b, a) == 2
    assert set_distance(a, a) == 0
    with pytest.raises(DomainError):
        set_distance(a, Region(s2, []))


def test_set_distance_triangle_inequality():
    s = LatticeSpec(2, 3)
    rng = np.random.default_rng(2)
    for _ in range(50):
        x, y, z = (Region(s, [i]) for i in rng.integers(0, s.site_count, 3))
        assert set_distance(x, z) <= set_distance(x, y) + set_distance(y, z)


def test_distances_to_boundary():
    s = LatticeSpec(1, 5)
    block = cube_region(s, 3)
    d = distances_to(block, boundary(block))
    assert d.tolist() == [0, 1, 2, 3, 2, 1, 0]


def test_half_cut_examples():
    r = half_cut(LatticeSpec(1, 2), 1, 0, +1)
    assert sorted(x[0] for x in r.coords) == [0, 1, 2]
    r2 = half_cut(LatticeSpec(2, 1), 1, 0, +1)
    assert len(r2) == 6 and set(r2.coords[:, 0]) == {0, 1}
    with pytest.raises(GeometryError):
        half_cut(LatticeSpec(2, 1), 3, 0)


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_half_cut_partition(k):
    s = LatticeSpec(2, 2)
    plus = half_cut(s, 2, k, +1)
    minus = half_cut(s, 2, k - 1, -1)
    assert len(plus.intersection(minus)) == 0
    assert plus.union(minus) == s.full()
