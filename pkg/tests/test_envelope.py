"""Tangent-potential upper bounds: optimality, variational inequalities, guards.

The two parameterizations of the bound (by contact radius t, and by the
Coulomb coupling u of the tangent) must agree at the optimum, the u-form
must dominate the t-form pointwise, every tangent bound must sit above
the true eigenvalue, and the construction must refuse channels outside
its validity class (only nodeless tau = -1, n = 1 states are bounded).
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracbound.channels import Channel, DEFAULT_CONSTANTS
from diracbound.coulomb import coulomb_eigenvalue, coulomb_eigenvalue_derivative
from diracbound.envelope import (
    bound_at_t,
    bound_objective,
    minimize_bound,
    screened_state_bracket,
)
from diracbound.errors import HypothesisViolationError
from diracbound.potentials import ScreenedCoulomb


# frozen values from converged runs of this code (regression anchors);
# the physical cross-check against solved eigenvalues happens below and
# in the acceptance suite
FROZEN_BOUNDS = [
    # (Z, two_j, E_upper binding in keV, t_star)
    (20, 1, -4.2571162, 6.870753),
    (80, 3, -14.7216228, 6.770277),
]


class TestMinimizeBound:
    def test_result_fields(self, z20_optimal_pair, ch_s):
        _, tangent, bound = z20_optimal_pair
        assert bound.ch == ch_s
        assert bound.u_star > 0.0
        assert bound.t_star > 0.0
        assert -1.0 < bound.E_upper < 1.0
        assert bound.at_domain_edge is False
        assert bound.local_minima >= 1
        us, fs = bound.curve
        assert len(us) == len(fs) == 128
        # the refined optimum can only improve on the coarse scan
        assert bound.E_upper <= np.min(fs) + 1e-15
        assert tangent.contact_radius == pytest.approx(bound.t_star)

    def test_curve_can_be_dropped(self, screened_z20, ch_s):
        bound = minimize_bound(screened_z20, ch_s, keep_curve=False)
        assert bound.curve is None

    @pytest.mark.parametrize("Z,two_j,kev,t_star", FROZEN_BOUNDS)
    def test_frozen_values(self, Z, two_j, kev, t_star):
        pot = ScreenedCoulomb.from_charge(Z)
        bound = minimize_bound(pot, Channel(tau=-1, two_j=two_j))
        assert DEFAULT_CONSTANTS.binding_kev(bound.E_upper) == pytest.approx(
            kev, abs=1e-6
        )
        assert bound.t_star == pytest.approx(t_star, abs=1e-5)

    def test_parameterizations_agree_at_optimum(self, z20_optimal_pair, ch_s):
        screened, _, bound = z20_optimal_pair
        # u-form and t-form evaluated at the shared optimum
        assert bound_at_t(screened, ch_s, bound.t_star) == pytest.approx(
            bound.E_upper, abs=1e-10
        )
        assert bound_objective(screened, ch_s, bound.u_star) == pytest.approx(
            bound.E_upper, abs=1e-12
        )
        # the optimum satisfies both change-of-variable constraints
        t_from_u = -1.0 / coulomb_eigenvalue_derivative(bound.u_star, ch_s)
        assert t_from_u == pytest.approx(bound.t_star, rel=1e-9)

    def test_dense_scan_confirms_global_minimum(self, z20_optimal_pair, ch_s):
        screened, _, bound = z20_optimal_pair
        ts = np.linspace(0.5 * bound.t_star, 2.0 * bound.t_star, 20001)
        vals = np.array([bound_at_t(screened, ch_s, t) for t in ts])
        assert float(np.min(vals)) >= bound.E_upper - 1e-12
        assert float(np.min(vals)) == pytest.approx(bound.E_upper, abs=1e-10)

    def test_point_charge_collapses_to_exact_coulomb(self, ch_s):
        # Z = 1 has nothing to screen: V is exactly Coulombic, the optimal
        # tangent is the potential itself, and the "bound" is the exact level
        pot = ScreenedCoulomb.from_charge(1)
        alpha = DEFAULT_CONSTANTS.alpha
        bound = minimize_bound(pot, ch_s)
        assert bound.u_star == pytest.approx(alpha, rel=1e-6)
        assert bound.E_upper == pytest.approx(coulomb_eigenvalue(alpha, ch_s), abs=1e-14)

    @pytest.mark.parametrize("two_j", [1, 3])
    def test_monotone_in_charge(self, two_j):
        ch = Channel(tau=-1, two_j=two_j)
        uppers = [
            minimize_bound(ScreenedCoulomb.from_charge(z), ch, keep_curve=False).E_upper
            for z in (20, 35, 50, 65, 80)
        ]
        assert all(b < a for a, b in zip(uppers, uppers[1:]))


class TestVariationalInequalities:
    def test_bound_dominates_solved_eigenvalue(self, z20_optimal_pair, z20_ground):
        _, _, bound = z20_optimal_pair
        assert bound.E_upper > z20_ground.E

    @given(log10_t=st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=60)
    def test_every_tangent_bounds_from_above(self, log10_t, z20_optimal_pair, z20_ground):
        # not only the optimal tangent: any contact radius gives a bound
        screened, _, _ = z20_optimal_pair
        t = 10.0**log10_t
        assert bound_at_t(screened, z20_ground.ch, t) >= z20_ground.E

    @given(log10_t=st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=60)
    def test_optimum_is_global(self, log10_t, z20_optimal_pair, ch_s):
        screened, _, bound = z20_optimal_pair
        assert bound_at_t(screened, ch_s, 10.0**log10_t) >= bound.E_upper - 1e-12

    @given(u=st.floats(min_value=1e-4, max_value=0.99))
    @settings(max_examples=60)
    def test_u_form_dominates_t_form(self, u, z20_optimal_pair, ch_s):
        # F(u) >= bound_at_t(-1/D'(u)) everywhere (concavity of D); they
        # touch exactly at the optimum, which is tested above
        screened, _, _ = z20_optimal_pair
        t = -1.0 / coulomb_eigenvalue_derivative(u, ch_s)
        f_u = bound_objective(screened, ch_s, u)
        f_t = bound_at_t(screened, ch_s, t)
        assert f_t <= f_u + 1e-12


class TestChannelGuards:
    @pytest.mark.parametrize(
        "ch",
        [
            Channel(tau=+1, two_j=1, n=1),  # 2p_1/2: tau = +1
            Channel(tau=-1, two_j=1, n=2),  # 2s_1/2: excited
            Channel(tau=+1, two_j=3, n=2),
        ],
        ids=str,
    )
    def test_non_nodeless_channels_rejected(self, ch, screened_z20):
        with pytest.raises(HypothesisViolationError, match="nodeless"):
            minimize_bound(screened_z20, ch)
        with pytest.raises(HypothesisViolationError):
            bound_at_t(screened_z20, ch, 1.0)
        with pytest.raises(HypothesisViolationError):
            bound_objective(screened_z20, ch, 0.1)
        with pytest.raises(HypothesisViolationError):
            screened_state_bracket(screened_z20, ch)

    def test_nonpositive_contact_radius_rejected(self, screened_z20, ch_s):
        with pytest.raises(ValueError, match="contact radius"):
            bound_at_t(screened_z20, ch_s, 0.0)


class TestStateBracket:
    def test_brackets_the_solved_eigenvalue(self, screened_z20, z20_ground, ch_s):
        lo, hi = screened_state_bracket(screened_z20, ch_s)
        assert lo < z20_ground.E < hi
        # the bracket is tight: width is the screening correction, not O(1)
        assert hi - lo < 0.01

    def test_lower_edge_is_pure_coulomb(self, screened_z20, ch_s):
        lo, _ = screened_state_bracket(screened_z20, ch_s)
        assert lo == pytest.approx(
            coulomb_eigenvalue(screened_z20.coupling, ch_s), abs=2e-9
        )

    @pytest.mark.parametrize("two_j", [1, 3])
    def test_brackets_are_ordered(self, two_j):
        ch = Channel(tau=-1, two_j=two_j)
        for z in (20, 50, 80):
            lo, hi = screened_state_bracket(ScreenedCoulomb.from_charge(z), ch)
            assert lo < hi
