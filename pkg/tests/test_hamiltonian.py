import math

import numpy as np
import pytest

from ffent.errors import DomainError, GeometryError, ModelError, ParameterError
from ffent.hamiltonian import (
    GOLDEN_FREQUENCY,
    AlmostMathieu,
    IidGaussian,
    IidUniform,
    Zero,
    assemble,
    hopping_pairs,
    mix64,
    model_from_dict,
    restrict,
    sample_potential,
)
from ffent.lattice import LatticeSpec, Region, cube_region
from ffent.spectral import diagonalize


def _zero_h(spec):
    return assemble(spec, sample_potential(Zero(), spec, 0, 0))


def test_mix64_is_fixed():
    # SplitMix64 reference output for seed 0 (first draw)
    assert mix64(0, 0) == 0xE220A8397B1DCDAF
    assert mix64(0, 1) != mix64(1, 0)
    assert 0 <= mix64(2**64 - 1, 123) < 2**64


def test_zero_model():
    r = sample_potential(Zero(), LatticeSpec(2, 2), 5, 3)
    assert np.all(r.values == 0)


def test_almost_mathieu_at_phase_zero():
    spec = LatticeSpec(1, 3)
    v = sample_potential(AlmostMathieu(1.0, GOLDEN_FREQUENCY, 0.0), spec, 0, 0).values
    assert v[spec.center] == 2.0
    x = spec.coords[:, 0]
    np.testing.assert_array_equal(v, 2 * np.cos(2 * np.pi * (GOLDEN_FREQUENCY * x)))


def test_almost_mathieu_is_seed_independent_unless_random_phase():
    spec = LatticeSpec(1, 5)
    m = AlmostMathieu(1.5, phase=0.3)
    a = sample_potential(m, spec, 1, 0).values
    assert np.array_equal(a, sample_potential(m, spec, 99, 7).values)
    rm = AlmostMathieu(1.5, random_phase=True)
    assert not np.array_equal(sample_potential(rm, spec, 1, 0).values, sample_potential(rm, spec, 1, 1).values)


def test_almost_mathieu_rejects_d2():
    with pytest.raises(ModelError):
        sample_potential(AlmostMathieu(1.0), LatticeSpec(2, 1), 0, 0)


@pytest.mark.parametrize("bad", [lambda: IidUniform(0.0), lambda: IidGaussian(-1.0), lambda: AlmostMathieu(1.0, 1.5)])
def test_parameter_errors(bad):
    with pytest.raises(ParameterError):
        bad()


def test_uniform_moments():
    spec = LatticeSpec(1, 50_000)
    v = sample_potential(IidUniform(2.0), spec, 11, 0).values
    assert abs(v.mean()) < 0.02
    assert abs(v.var() - 4.0 / 3.0) < 0.05 * 4.0 / 3.0
    assert np.abs(v).max() <= 2.0


def test_sampling_is_deterministic():
    spec = LatticeSpec(2, 4)
    a = sample_potential(IidGaussian(1.0), spec, 42, 9).values
    b = sample_potential(IidGaussian(1.0), spec, 42, 9).values
    assert np.array_equal(a, b)
    assert a.tobytes() == b.tobytes()


def test_model_round_trip_and_strictness():
    for m in (Zero(), IidUniform(3.0), IidGaussian(0.5), AlmostMathieu(2.0, 0.3, 0.1, True)):
        assert model_from_dict(m.to_dict()) == m
    with pytest.raises(ParameterError):
        model_from_dict({"kind": "iid_uniform", "amplitud": 1.0})
    with pytest.raises(ParameterError):
        model_from_dict({"kind": "poisson"})


def test_two_site_chain_matrix():
    # a two-site box does not exist with odd sides; restrict the L=3 chain instead
    spec = LatticeSpec(1, 1)
    h = restrict(_zero_h(spec), Region(spec, [0, 1]))
    np.testing.assert_array_equal(h.matrix, [[0, -1], [-1, 0]])


def test_three_site_spectrum():
    w = diagonalize(_zero_h(LatticeSpec(1, 1))).eigenvalues
    np.testing.assert_allclose(w, [-math.sqrt(2), 0, math.sqrt(2)], atol=1e-14)


def test_center_row_in_d2():
    spec = LatticeSpec(2, 1)
    h = _zero_h(spec).matrix
    c = spec.center
    assert np.sum(np.abs(h[c])) - abs(h[c, c]) == 4


@pytest.mark.parametrize("d,M", [(1, 4), (2, 2), (3, 1)])
def test_matrix_structure(d, M):
    spec = LatticeSpec(d, M)
    real = sample_potential(IidUniform(1.0), spec, 3, 0)
    h = assemble(spec, real).matrix
    assert np.array_equal(h, h.T)
    np.testing.assert_array_equal(np.diag(h), real.values)
    x = spec.coords
    l1 = np.abs(x[:, None, :] - x[None, :, :]).sum(axis=2)
    off = h - np.diag(np.diag(h))
    assert np.array_equal(off == -1, l1 == 1)
    assert np.all(off[l1 != 1] == 0)
    assert len(hopping_pairs(spec)) == d * spec.side ** (d - 1) * (spec.side - 1)


def test_gershgorin_interval():
    spec = LatticeSpec(2, 3)
    h = assemble(spec, sample_potential(IidUniform(4.0), spec, 1, 0))
    lo, hi = h.gershgorin_interval()
    w = diagonalize(h).eigenvalues
    assert lo <= w[0] and w[-1] <= hi


@pytest.mark.parametrize("n_half", [1, 5, 20])
def test_free_chain_closed_form(n_half):
    spec = LatticeSpec(1, n_half)
    n = spec.site_count
    w = diagonalize(_zero_h(spec)).eigenvalues
    exact = np.sort(-2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1)))
    np.testing.assert_allclose(w, exact, atol=1e-10)


def test_assemble_rejects_other_box():
    r = sample_potential(Zero(), LatticeSpec(1, 2), 0, 0)
    with pytest.raises(GeometryError):
        assemble(LatticeSpec(1, 3), r)


def test_matrix_is_read_only():
    h = _zero_h(LatticeSpec(1, 2))
    with pytest.raises(ValueError):
        h.matrix[0, 0] = 1.0


def test_restrict_examples():
    spec = LatticeSpec(1, 2)
    h = assemble(spec, sample_potential(IidUniform(1.0), spec, 0, 0))
    assert np.array_equal(restrict(h, spec.full()).matrix, h.matrix)
    mid = restrict(_zero_h(spec), cube_region(spec, 1)).matrix
    assert np.array_equal(mid, _zero_h(LatticeSpec(1, 1)).matrix)
    one = restrict(h, Region(spec, [3]))
    assert one.matrix.shape == (1, 1) and one.matrix[0, 0] == h.matrix[3, 3]
    with pytest.raises(DomainError):
        restrict(h, Region(spec, []))


def test_potential_csv(tmp_path):
    spec = LatticeSpec(1, 2)
    r = sample_potential(IidUniform(1.0), spec, 0, 0)
    path = tmp_path / "v.csv"
    r.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "flat_index,V"
    assert float(lines[3].split(",")[1]) == r.values[2]


@pytest.mark.parametrize("model", [IidUniform(1.0), IidGaussian(2.0), AlmostMathieu(1.0, random_phase=True)])
def test_nested_boxes_share_values(model):
    d = 1 if isinstance(model, AlmostMathieu) else 2
    small, big = LatticeSpec(d, 2), LatticeSpec(d, 5)
    a = sample_potential(model, small, 8, 3).values
    b = sample_potential(model, big, 8, 3).values
    np.testing.assert_array_equal(b[big.flatten(small.coords)], a)


def test_shell_order_is_permutation():
    s = LatticeSpec(3, 2)
    order = s.shell_order
    assert sorted(order.tolist()) == list(range(s.site_count))
    r = np.max(np.abs(s.coords[order]), axis=1)
    assert np.all(np.diff(r) >= 0)
