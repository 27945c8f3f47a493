from fractions import Fraction

import pytest

from freeconv import (BOOLEANS, NONNEG_RATIONALS, CumulantSeq, Dirac,
                      FormalDistribution, FreePoisson, LK, MomentSeq,
                      Semicircle, boxdot, boxplus, check_omega_e_axioms,
                      decalage, family_to_free_cumulants, fold_as_nested_plus_q,
                      frobenius, giry_algebra_fold, giry_join, giry_map,
                      giry_unit, mix_moments, moments,
                      moments_from_free_cumulants, free_cumulants_from_moments,
                      plus_alpha_beta, plus_q, scale_action, shift_action,
                      teichmueller)

from conftest import random_id_cumulants

F = Fraction


def cum(fam, order):
    return family_to_free_cumulants(fam, order)


def test_teichmueller_section():
    assert teichmueller(1, 6).values == (1,) * 6
    assert boxdot(teichmueller(2, 6), teichmueller(3, 6)) == teichmueller(6, 6)
    assert teichmueller(0, 4).values == (0, 0, 0, 0)
    # group inverse on the nonzero reals
    t = teichmueller(F(2, 3), 8)
    tinv = teichmueller(F(3, 2), 8)
    assert boxdot(t, tinv) == teichmueller(1, 8)


def test_teichmueller_matches_free_poisson():
    assert teichmueller(F(5, 4), 7).values == cum(FreePoisson(1, F(5, 4)), 7).values


def test_decalage_fixes_units():
    unit = teichmueller(1, 9)
    assert decalage(unit) == teichmueller(1, 7)
    zero = cum(Dirac(0), 9)
    assert decalage(zero).values == (0,) * 7


def test_decalage_on_free_poisson_family():
    mu = cum(FreePoisson(F(5, 2), F(-1, 3)), 11)
    out = decalage(mu)
    assert out.values == cum(FreePoisson(F(5, 18), F(-1, 3)), 9).values


def test_frobenius_power_law():
    assert frobenius(1, teichmueller(3, 5)) == teichmueller(3, 5)
    assert frobenius(2, cum(FreePoisson(1, F(1, 2)), 6)).values == \
        cum(FreePoisson(1, F(1, 4)), 6).values
    semi = cum(Semicircle(0, 2), 6)
    assert frobenius(2, semi) == semi
    assert frobenius(0, semi) == teichmueller(1, 6)


def test_frobenius_is_iterated_hadamard_power(rng):
    for n in (1, 2, 3, 4):
        mu = random_id_cumulants(rng, 8)
        power = mu
        for _ in range(n - 1):
            power = boxdot(power, mu)
        assert frobenius(n, mu) == power


def test_actions():
    assert scale_action(F(9, 4), cum(Semicircle(2, 2), 6)).values == \
        cum(Semicircle(F(9, 2), 3), 6).values
    assert scale_action(3, cum(FreePoisson(2, F(1, 2)), 6)).values == \
        cum(FreePoisson(6, F(1, 2)), 6).values
    mu = cum(FreePoisson(1, F(1, 3)), 6)
    assert shift_action(0, mu) == mu
    shifted = shift_action(F(5, 2), mu)
    assert shifted.values[0] == mu.values[0] + F(5, 2)
    assert shifted.values[1:] == mu.values[1:]
    with pytest.raises(ValueError):
        scale_action(-1, mu)


def test_shift_preserves_pair_projection(rng):
    from freeconv import cumulants_to_levy_pair
    mu = random_id_cumulants(rng, 9)
    base = cumulants_to_levy_pair(mu)
    moved = cumulants_to_levy_pair(shift_action(F(7, 3), mu))
    assert moved.atoms == base.atoms
    assert moved.gamma == base.gamma + F(7, 3)


def test_plus_q_basics(rng):
    mu = random_id_cumulants(rng, 8)
    nu = random_id_cumulants(rng, 8)
    assert plus_q(F(1, 3), mu, mu) == mu
    assert plus_q(0, mu, nu) == nu
    assert plus_q(1, mu, nu) == mu
    with pytest.raises(ValueError):
        plus_q(F(3, 2), mu, nu)
    with pytest.raises(ValueError):
        plus_alpha_beta(-1, 2, mu, nu)


def test_products_distribute_over_barycentric(rng):
    q = F(2, 7)
    mu, nu, xi = (random_id_cumulants(rng, 8) for _ in range(3))
    assert boxplus(plus_q(q, mu, nu), xi) == plus_q(q, boxplus(mu, xi), boxplus(nu, xi))
    assert boxdot(plus_q(q, mu, nu), xi) == plus_q(q, boxdot(mu, xi), boxdot(nu, xi))


def test_mix_moments_examples():
    left = moments(Dirac(-1), 6)
    right = moments(Dirac(1), 6)
    mixed = mix_moments(F(1, 2), left, right)
    assert mixed.values == (0, 1, 0, 1, 0, 1)
    assert mix_moments(1, left, right) == left


def test_moment_mixture_does_not_commute_with_boxplus():
    # the two coordinate systems cannot be mixed: convex combination of
    # moments followed by additive convolution differs from convolving first
    order = 4
    left = moments(Dirac(-1), order)
    right = moments(Dirac(1), order)
    mu = mix_moments(F(1, 2), left, right)
    kappa_mu = free_cumulants_from_moments(mu)
    lhs = moments_from_free_cumulants(boxplus(kappa_mu, kappa_mu))
    shifted_left = free_cumulants_from_moments(left)
    shifted_right = free_cumulants_from_moments(right)
    rhs = mix_moments(F(1, 2),
                      moments_from_free_cumulants(boxplus(shifted_left, kappa_mu)),
                      moments_from_free_cumulants(boxplus(shifted_right, kappa_mu)))
    assert lhs.values != rhs.values
    assert lhs.values[3] == 6 and rhs.values[3] == 8


def test_giry_unit_and_join():
    x = giry_unit("x")
    assert x.items == (("x", 1),)
    inner = FormalDistribution(NONNEG_RATIONALS, [("x", F(1, 2)), ("y", F(1, 2))])
    assert giry_join(giry_unit(inner)).items == inner.items
    outer = FormalDistribution(NONNEG_RATIONALS, [(x, F(1, 2)), (inner, F(1, 2))])
    assert dict(giry_join(outer).items) == {"x": F(3, 4), "y": F(1, 4)}


def _random_dist(rng, values, semiring):
    if semiring is NONNEG_RATIONALS:
        cuts = sorted(rng.randint(0, 6) for _ in range(len(values) - 1))
        weights = []
        prev = 0
        for c in cuts + [6]:
            weights.append(F(c - prev, 6))
            prev = c
        return FormalDistribution(semiring, list(zip(values, weights)))
    flags = [rng.random() < 0.5 for _ in values]
    if not any(flags):
        flags[0] = True
    return FormalDistribution(semiring, list(zip(values, flags)))


@pytest.mark.parametrize("semiring", [NONNEG_RATIONALS, BOOLEANS],
                         ids=lambda s: s.name)
def test_giry_monad_laws(semiring, rng):
    unit = lambda x: giry_unit(x, semiring)
    for _ in range(20):
        values = ["a", "b", "c", "d"]
        dist = _random_dist(rng, values, semiring)
        # unit laws
        assert giry_join(giry_map(unit, dist)) == dist
        assert giry_join(unit(dist)) == dist
        # associativity: two-level flattening
        inner1 = _random_dist(rng, values, semiring)
        inner2 = _random_dist(rng, values, semiring)
        mid1 = _random_dist(rng, [inner1, inner2], semiring)
        mid2 = _random_dist(rng, [inner2, inner1], semiring)
        top = _random_dist(rng, [mid1, mid2], semiring)
        assert giry_join(giry_join(top)) == giry_join(giry_map(giry_join, top))


def test_giry_weight_validation():
    with pytest.raises(ValueError):
        FormalDistribution(NONNEG_RATIONALS, [("x", F(1, 2))])
    with pytest.raises(ValueError):
        FormalDistribution(NONNEG_RATIONALS, [("x", F(-1, 2)), ("y", F(3, 2))])
    with pytest.raises(ValueError):
        FormalDistribution(BOOLEANS, [("x", False)])


def test_algebra_fold_examples(rng):
    mu = random_id_cumulants(rng, 5)
    assert giry_algebra_fold(giry_unit(mu)) == mu
    both = FormalDistribution(NONNEG_RATIONALS, [(mu, F(1, 2)), (mu, F(1, 2))])
    assert giry_algebra_fold(both) == mu
    thirds = FormalDistribution(NONNEG_RATIONALS, [
        (cum(Dirac(0), 5), F(1, 3)),
        (cum(Dirac(3), 5), F(1, 3)),
        (cum(Semicircle(0, 2), 5), F(1, 3))])
    assert giry_algebra_fold(thirds).values == (1, F(1, 3), 0, 0, 0)


def test_algebra_fold_matches_nested_binary(rng):
    for _ in range(20):
        k = rng.randint(1, 4)
        mus = [random_id_cumulants(rng, 6) for _ in range(k)]
        dist = _random_dist(rng, mus, NONNEG_RATIONALS)
        assert giry_algebra_fold(dist) == fold_as_nested_plus_q(dist)


def test_algebra_laws(rng):
    # structure map respects unit and flattening
    for _ in range(10):
        mus = [random_id_cumulants(rng, 6) for _ in range(3)]
        inner1 = _random_dist(rng, mus, NONNEG_RATIONALS)
        inner2 = _random_dist(rng, mus, NONNEG_RATIONALS)
        outer = _random_dist(rng, [inner1, inner2], NONNEG_RATIONALS)
        via_join = giry_algebra_fold(giry_join(outer))
        via_map = giry_algebra_fold(giry_map(giry_algebra_fold, outer))
        assert via_join == via_map
        assert giry_algebra_fold(giry_unit(mus[0])) == mus[0]


def test_free_poisson_set_invariance(rng):
    for _ in range(10):
        lam = F(rng.randint(1, 5), rng.randint(1, 3))
        alpha = F(rng.randint(-3, 3), 4)
        mu = cum(FreePoisson(lam, alpha), 10)
        out = decalage(mu)
        assert out.values == cum(FreePoisson(lam * alpha ** 2, alpha), 8).values
        n = rng.randint(1, 3)
        powered = frobenius(n, mu)
        assert powered.values == cum(FreePoisson(lam ** n, alpha ** n), 10).values


def test_axiom_harness_report():
    report = check_omega_e_axioms(order=10, cases=0, seed=3)
    assert report.passed
    assert all(r.cases == 0 for r in report.results)
    report = check_omega_e_axioms(order=10, cases=30, seed=3)
    assert report.passed
    data = report.to_json_dict()
    assert data["passed"] is True
    assert {a["axiom_id"] for a in data["axioms"]} >= {
        "semiring.distributive", "convex.composition", "endo.shift_mul",
        "endo.power_mul"}
    # determinism in (order, cases, seed)
    again = check_omega_e_axioms(order=10, cases=30, seed=3)
    assert again.to_json_dict() == data
