import pytest

from k3fat.core import (
    DimensionReport,
    FatPointGroup,
    K3System,
    PlanarSystem,
    Status,
    edim,
    planar_dim_nonspecial,
    planar_vdim_formula,
    point_conditions,
    vdim_k3,
    vdim_planar,
)


def test_vdim_k3_single_point_wall():
    # vdim of L^4(d, 2d) is 1 - d; at d = 2 that is -1
    sys = K3System.homogeneous(4, 2, 4, 1)
    assert vdim_k3(sys) == -1


def test_vdim_k3_unconditioned():
    assert vdim_k3(K3System(4, 3)) == 19


def test_vdim_k3_nine_double_points():
    assert vdim_k3(K3System.homogeneous(4, 3, 2, 9)) == -8


def test_vdim_k3_mixed_groups():
    sys = K3System(4, 3, ((2, 3), (1, 5)))
    assert vdim_k3(sys) == 19 - 3 * 3 - 5 * 1


@pytest.mark.parametrize("v,expected", [(5, 5), (-1, -1), (-8, -1), (0, 0)])
def test_edim(v, expected):
    assert edim(v) == expected


def test_edim_idempotent_and_monotone():
    values = list(range(-20, 21))
    for v in values:
        assert edim(edim(v)) == edim(v)
    images = [edim(v) for v in values]
    assert images == sorted(images)


@pytest.mark.parametrize(
    "delta,mu,nu,expected",
    [(2, 1, 4, 1), (4, 2, 4, 2), (3, 2, 4, -3)],
)
def test_vdim_planar(delta, mu, nu, expected):
    assert vdim_planar(PlanarSystem.homogeneous(delta, mu, nu)) == expected


def test_vdim_planar_negative_degree_convention():
    assert vdim_planar(PlanarSystem.homogeneous(-1, 3, 4)) == -1
    assert vdim_planar(PlanarSystem.homogeneous(-5, 1, 9)) == -1
    # the raw formula used in bookkeeping identities is unclamped
    assert planar_vdim_formula(-1, 1, 4) == -1 - 4
    assert planar_dim_nonspecial(-1, 3, 4) == -1


def test_append_point_decreases_vdim_by_conditions():
    sys = K3System.homogeneous(4, 5, 2, 9)
    for m in (1, 2, 3, 7):
        extended = K3System(4, 5, sys.points + (FatPointGroup(m, 1),))
        assert vdim_k3(extended) == vdim_k3(sys) - point_conditions(m)


def test_gamma_validation():
    with pytest.raises(ValueError):
        K3System(3, 2)
    with pytest.raises(ValueError):
        K3System(0, 2)
    with pytest.raises(ValueError):
        K3System(4, 0)


def test_fat_point_group_validation():
    with pytest.raises(ValueError):
        FatPointGroup(0, 1)
    with pytest.raises(ValueError):
        FatPointGroup(2, 0)


def test_homogeneous_constructor_normalizes_empty():
    assert K3System.homogeneous(4, 2, 0, 5).points == ()
    assert K3System.homogeneous(4, 2, 3, 0).points == ()
    sys = K3System.homogeneous(4, 2, 3, 5)
    assert sys.multiplicity == 3 and sys.total_points == 5


def test_dimension_report_invariants():
    rep = DimensionReport(3, 3, 3, Status.NONSPECIAL)
    assert rep.is_definite
    rep = DimensionReport(-1, -1, 0, Status.SPECIAL)
    assert rep.dim > rep.edim
    rep = DimensionReport(-18, -1, None, Status.UNKNOWN)
    assert not rep.is_definite

    with pytest.raises(ValueError):
        DimensionReport(3, -1, 3, Status.NONSPECIAL)  # edim mismatch
    with pytest.raises(ValueError):
        DimensionReport(3, 3, 4, Status.NONSPECIAL)  # dim != edim
    with pytest.raises(ValueError):
        DimensionReport(3, 3, 3, Status.SPECIAL)  # not above edim
    with pytest.raises(ValueError):
        DimensionReport(3, 3, None, Status.NONSPECIAL)  # missing dim
    with pytest.raises(ValueError):
        DimensionReport(3, 3, 2, Status.NONSPECIAL)  # dim below edim


def test_report_oracle_dim_is_advisory_only():
    rep = DimensionReport(-18, -1, None, Status.UNKNOWN)
    annotated = rep.with_oracle_dim(-1)
    assert annotated.status is Status.UNKNOWN
    assert annotated.oracle_dim == -1
    assert annotated.dim is None
