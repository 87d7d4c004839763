"""Backward-orbit growth search and the equidistribution diagnostic."""

import pytest

from cocyclekit import (
    ProjectivePoint,
    equidistribution_report,
    iterate_map,
    kappa_backward_analytic,
    local_multiplicity,
    preimages,
)
from cocyclekit.errors import InputError

from conftest import MAP_CORPUS, map_z2, map_z2_minus_2, map_z3


def pt(value) -> ProjectivePoint:
    return ProjectivePoint.exact(value)


class TestKappaBackwardAnalytic:
    def test_totally_ramified_fixed_point(self):
        est = kappa_backward_analytic(map_z2(), pt(0), 6)
        assert est.value == 64 and est.complete
        assert len(est.witness) == 7
        assert all(y.same_point(pt(0)) for y in est.witness)

    def test_generic_point(self):
        est = kappa_backward_analytic(map_z2(), pt(4), 3)
        assert est.value == 1 and est.complete

    def test_critical_backward_path(self):
        est = kappa_backward_analytic(map_z2_minus_2(), pt(2), 2)
        assert est.value == 2 and est.complete
        got = [str(y) for y in est.witness]
        assert got == ["0", "-2", "2"]

    def test_deep_ramified_search_stays_cheap(self):
        # pruning collapses the tree to the critical spine
        est = kappa_backward_analytic(map_z2(), pt(0), 40, budget=1000)
        assert est.value == 2**40 and est.complete

    def test_budget_truncation_flags_lower_bound(self):
        est = kappa_backward_analytic(map_z2(), pt(4), 3, budget=2)
        assert not est.complete
        assert est.value >= 1
        assert len(est.witness) == 4
        # the witness path really is a backward orbit segment
        f = map_z2()
        for i in range(3):
            assert iterate_map(f, est.witness[i], 1).same_point(est.witness[i + 1], tol=1e-7)

    def test_witness_is_backward_orbit(self):
        f = map_z2_minus_2()
        est = kappa_backward_analytic(f, pt(2), 4)
        assert est.complete
        for i in range(4):
            assert iterate_map(f, est.witness[i], 1).same_point(est.witness[i + 1], tol=1e-6)

    def test_value_matches_multiplicity_product(self):
        f = map_z2_minus_2()
        est = kappa_backward_analytic(f, pt(2), 3)
        prod = 1
        for y in est.witness[:-1]:
            prod *= local_multiplicity(f, y)
        assert prod == est.value

    def test_depth_below_one_rejected(self):
        with pytest.raises(InputError):
            kappa_backward_analytic(map_z2(), pt(0), 0)

    def test_budget_below_one_rejected(self):
        with pytest.raises(InputError):
            kappa_backward_analytic(map_z2(), pt(0), 3, budget=0)

    def test_mass_of_backward_trees(self):
        # total multiplicity of the depth-n tree is d^n for every corpus map
        for name, build in MAP_CORPUS.items():
            f = build()
            layer = [(pt(3), 1)]
            for n in range(1, 6):
                nxt = []
                for x, m in layer:
                    for y, mult in preimages(f, x).points:
                        nxt.append((y, m * mult))
                layer = nxt
                assert sum(m for _, m in layer) == f.degree**n, name


class TestEquidistribution:
    def test_radial_concentration(self):
        rep = equidistribution_report(map_z2(), [pt(3)], 14, 24)
        assert rep.depth == 14 and rep.cells == 24
        assert rep.masses == (2**14,)
        assert rep.radial_concentration[0] >= 0.99
        assert rep.radial_concentration[0] == 1.0  # moduli are 3^(1/2^14)

    def test_two_generic_seeds_agree(self):
        rep = equidistribution_report(map_z2(), [pt(3), pt(5)], 12, 24)
        (i, j, tv), = rep.pairwise_tv
        assert (i, j) == (0, 1)
        assert tv < 0.05
        assert tv == 0.000244140625  # regression: exact cell-count ratio

    def test_exceptional_seed_is_dirac(self):
        rep = equidistribution_report(map_z2(), [pt(0), pt(3)], 10, 24)
        assert rep.masses == (2**10, 2**10)
        (_, _, tv), = rep.pairwise_tv
        assert tv >= 0.95
        assert tv == 1.0  # supports are disjoint cells

    def test_consecutive_depths_converge(self):
        rep = equidistribution_report(map_z2(), [pt(3)], 8, 12)
        entries = [t for t in rep.consecutive_tv if t[0] == 0]
        assert len(entries) == 7
        # distances shrink as the tree deepens
        assert entries[-1][2] <= entries[0][2]

    def test_depth_cap(self):
        with pytest.raises(InputError):
            equidistribution_report(map_z2(), [pt(3)], 25, 8)
        with pytest.raises(InputError):
            equidistribution_report(map_z3(), [pt(3)], 16, 8)

    def test_exact_and_approx_agree_bitwise(self):
        a = equidistribution_report(map_z2(), [pt(3), pt(5)], 10, 16)
        b = equidistribution_report(map_z2().approx, [pt(3).to_approx(), pt(5).to_approx()], 10, 16)
        assert a == b

    def test_repeat_runs_identical(self):
        a = equidistribution_report(map_z2_minus_2(), [pt(3), pt(7)], 9, 20)
        b = equidistribution_report(map_z2_minus_2(), [pt(3), pt(7)], 9, 20)
        assert a == b

    def test_invalid_grid(self):
        with pytest.raises(InputError):
            equidistribution_report(map_z2(), [pt(3)], 4, 0)
        with pytest.raises(InputError):
            equidistribution_report(map_z2(), [pt(3)], 0, 8)
