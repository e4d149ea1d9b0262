from fractions import Fraction

import numpy as np
import pytest

from crntoric.core import TranslationScheme
from crntoric.dsl import load_bundled_system, parse_network
from crntoric.graph import conservation_laws
from crntoric.numeric import (
    ConvergenceError,
    MassActionSystem,
    SteadyStateSolver,
    Trial,
    check_basis,
    find_steady_state,
    mass_action_rhs,
    sample_steady_states,
    verify_basis,
)
from crntoric.toric import steady_state_basis
from crntoric.translation import apply_scheme

AB = parse_network("A <-> B ; k1, k2")


def test_rhs_hand_computed():
    assert mass_action_rhs(AB, {"k1": 2, "k2": 3}, [1, 1]).tolist() == [1.0, -1.0]


@pytest.mark.parametrize("which", [1, 2, 3])
def test_rhs_vanishes_at_origin(which):
    net, _ = load_bundled_system(which)
    k = {lab: 1.0 for lab in net.rate_labels}
    assert not np.any(mass_action_rhs(net, k, np.zeros(net.m)))


def test_rates_and_zero_power_convention():
    net = parse_network("0 -> A ; k1\nA -> 0 ; k2")
    assert mass_action_rhs(net, {"k1": 2.0, "k2": 1.0}, [0.0]).tolist() == [2.0]


def test_missing_or_bad_rates():
    with pytest.raises(ValueError, match="k2"):
        mass_action_rhs(AB, {"k1": 1.0}, [1, 1])
    with pytest.raises(ValueError):
        mass_action_rhs(AB, {"k1": 1.0, "k2": -1.0}, [1, 1])


def test_ab_steady_state():
    st = find_steady_state(AB, {"k1": 1.0, "k2": 1.0}, [2.0, 0.5])
    assert np.allclose(st.x, [1.25, 1.25], rtol=0, atol=1e-12)
    assert st.residual < 1e-10
    assert st.conservation_drift <= 1e-9


def test_invalid_initial_state():
    with pytest.raises(ValueError):
        find_steady_state(AB, {"k1": 1.0, "k2": 1.0}, [1.0, 0.0])


def test_jacobian_matches_finite_differences():
    net, _ = load_bundled_system(3)
    rng = np.random.default_rng(0)
    k = {lab: float(v) for lab, v in zip(net.rate_labels, rng.uniform(0.1, 10, net.r))}
    sys_ = MassActionSystem(net, k)
    x = rng.uniform(0.5, 2, net.m)
    jac = sys_.jacobian(x)
    h = 1e-6
    for j in range(net.m):
        e = np.zeros(net.m)
        e[j] = h
        fd = (sys_.rhs(x + e) - sys_.rhs(x - e)) / (2 * h)
        assert np.allclose(jac[:, j], fd, rtol=1e-6, atol=1e-7)


@pytest.mark.parametrize("which", [1, 2, 3])
def test_rhs_orthogonal_to_conservation_laws(which):
    net, _ = load_bundled_system(which)
    laws = np.array([[float(v) for v in w] for w in conservation_laws(net)])
    rng = np.random.default_rng(which)
    for _ in range(20):
        k = {lab: float(v) for lab, v in zip(net.rate_labels, np.exp(rng.uniform(-2.3, 2.3, net.r)))}
        x = np.exp(rng.uniform(-2.3, 2.3, net.m))
        f = mass_action_rhs(net, k, x)
        scale = np.abs(laws) @ np.abs(f) + 1e-300
        assert np.max(np.abs(laws @ f) / scale) < 1e-12


@pytest.mark.parametrize("which", [1, 2, 3])
def test_generalized_rhs_equals_original(which):
    # A proper translation leaves the mass-action dynamics unchanged.
    net, scheme = load_bundled_system(which)
    g = apply_scheme(net, scheme)
    rng = np.random.default_rng(10 + which)
    for _ in range(10):
        k = {lab: float(v) for lab, v in zip(net.rate_labels, np.exp(rng.uniform(-2.3, 2.3, net.r)))}
        x = np.exp(rng.uniform(-2.3, 2.3, net.m))
        a, b = mass_action_rhs(net, k, x), mass_action_rhs(g, k, x)
        assert np.allclose(a, b, rtol=1e-13, atol=1e-13)


def test_net1_unit_rates_all_ones(systems):
    s = systems[1]
    k = {lab: 1.0 for lab in s.net.rate_labels}
    st = find_steady_state(s.net, k, np.ones(s.net.m))
    assert st.residual < 1e-10
    assert max(b.residual(k, st.x) for b in s.basis) < 1e-6


def test_net3_random(systems):
    s = systems[3]
    rng = np.random.default_rng(123)
    k = dict(zip(s.net.rate_labels, np.exp(rng.uniform(np.log(0.1), np.log(10), s.net.r)).tolist()))
    st = find_steady_state(s.net, k, np.exp(rng.uniform(np.log(0.1), np.log(10), s.net.m)))
    assert len(s.basis) == 18
    assert max(b.residual(k, st.x) for b in s.basis) < 1e-6


def test_same_class_different_start(systems):
    # Two starts in the same compatibility class both satisfy the basis.
    s = systems[1]
    rng = np.random.default_rng(8)
    k = dict(zip(s.net.rate_labels, np.exp(rng.uniform(-2.3, 2.3, s.net.r)).tolist()))
    x0 = np.exp(rng.uniform(-1, 1, s.net.m))
    sys_ = MassActionSystem(s.net, k)
    x1 = x0 + 0.05 * sys_.rhs(x0) / max(1.0, np.max(np.abs(sys_.rhs(x0))))
    assert np.all(x1 > 0)
    a = find_steady_state(s.net, k, x0)
    b = find_steady_state(s.net, k, x1)
    for st in (a, b):
        assert max(bb.residual(k, st.x) for bb in s.basis) < 1e-6
    assert np.allclose(a.x, b.x, rtol=1e-6)


def test_exact_binomial_evaluation_over_rationals(systems):
    s = systems[1]
    k = {lab: Fraction(i + 1, 3) for i, lab in enumerate(s.net.rate_labels)}
    x = [Fraction(2 * i + 1, 5) for i in range(s.net.m)]
    for b in s.basis:
        lhs, rhs = b.sides(k, x)
        assert isinstance(lhs, Fraction) and isinstance(rhs, Fraction)


def test_zero_trials_is_vacuous_pass(systems):
    s = systems[1]
    rep = verify_basis(s.net, s.g, s.basis, trials=0)
    assert rep.passed and rep.no_evidence
    assert rep.to_dict()["per_trial"] == []


def test_verify_rejects_foreign_translation(systems):
    with pytest.raises(ValueError):
        verify_basis(systems[1].net, systems[2].g, systems[2].basis, trials=1)


def test_sampling_is_seeded(systems):
    net = systems[1].net
    a = sample_steady_states(net, 2, 5)
    b = sample_steady_states(net, 2, 5)
    assert [t.rates for t in a] == [t.rates for t in b]
    assert all(np.array_equal(x.state.x, y.state.x) for x, y in zip(a, b))


@pytest.mark.parametrize("which", [1, 2, 3])
def test_seeded_samples_pass(systems, samples, which):
    rep = check_basis(systems[which].basis, samples[which], 1e-6, 7)
    assert rep.converged >= 18
    assert rep.passed, rep.failing_binomials
    assert all(t.residual_ode < 1e-10 for t in rep.per_trial if t.converged)


def test_mutated_binomial_identified(systems, samples):
    s = systems[1]
    bad = list(s.basis)
    bad[4] = bad[4].substitute("k16", "k17")
    rep = check_basis(bad, samples[1], 1e-6, 7)
    assert not rep.passed
    assert rep.failing_binomials == [4]


def test_unconverged_trials_count_against(systems, samples):
    s = systems[1]
    trials = [Trial(t.rates, t.x0, None, "forced") for t in samples[1][:3]] + list(samples[1][3:])
    rep = check_basis(s.basis, trials, 1e-6, 7)
    assert rep.converged == 17
    assert not rep.passed
    assert not rep.no_evidence


def test_corrected_printed_binomials_hold(systems, samples):
    from conftest import to_sympy
    from reference_tables import BASIS, CORRECTED_BASIS

    import sympy

    for which in (1, 2, 3):
        names = systems[which].net.species_names
        for pos, (i, j, printed) in enumerate(BASIS[which]):
            fixed = CORRECTED_BASIS.get((which, pos), (printed,))[0]
            for text, should_hold in ((fixed, True), (printed, fixed == printed)):
                expr = to_sympy(text)
                syms = sorted(expr.free_symbols, key=str)
                f = sympy.lambdify(syms, expr, "math")
                terms = sympy.Add.make_args(sympy.expand(expr))
                worst = 0.0
                for t in samples[which]:
                    if t.state is None:
                        continue
                    vals = dict(t.rates)
                    vals.update({f"x{n[1:]}": v for n, v in zip(names, t.state.x)})
                    args = [vals[str(s)] for s in syms]
                    scale = max(abs(float(sympy.lambdify(syms, term, "math")(*args))) for term in terms)
                    worst = max(worst, abs(f(*args)) / max(scale, 1e-30))
                assert (worst < 1e-6) == should_hold, (which, pos, text, worst)


def test_convergence_error_carries_diagnostic():
    solver = SteadyStateSolver(AB, max_rhs_evaluations=0, handoff=0.0, stall_rounds=99)
    with pytest.raises(ConvergenceError) as info:
        solver.solve({"k1": 1.0, "k2": 3.0}, [2.0, 0.5])
    assert "residual" in info.value.diagnostic


def test_report_json_shape(systems, samples):
    rep = check_basis(systems[2].basis, samples[2], 1e-6, 7)
    d = rep.to_dict()
    assert set(d) >= {"trials", "seed", "tolerances", "per_trial", "pass"}
    assert set(d["per_trial"][0]) >= {"residual_ode", "residual_basis_max", "converged"}


def test_identity_translation_numeric_equivalence():
    net = parse_network("A + B <-> C ; k1, k2\nC <-> A + D ; k3, k4")
    g = apply_scheme(net, TranslationScheme.identity(net))
    k = {"k1": 1.5, "k2": 0.3, "k3": 2.0, "k4": 0.7}
    x = [0.4, 1.1, 0.9, 2.0]
    assert np.array_equal(mass_action_rhs(net, k, x), mass_action_rhs(g, k, x))
    st = find_steady_state(net, k, x)
    (b1, b2) = steady_state_basis(g)
    assert b1.residual(k, st.x) < 1e-9 and b2.residual(k, st.x) < 1e-9
