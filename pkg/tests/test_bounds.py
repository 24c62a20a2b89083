"""Tests for the approximation-bound formulas and regime classification.

Reference values for zeta and the derived ratios were computed once with
a 50-digit series evaluation and are frozen here; formula tests recompute
the arithmetic independently from those anchors.
"""

import math

import pytest

from plgds.bounds import (
    RegimeKind,
    beta_threshold,
    bound_report,
    case_i_crossover,
    case_i_ratio,
    case_ii_bound,
    classify_regime,
    hardness_factor,
    hardness_prefactor,
    lemma1_b,
    lemma3_bound,
    shen_ratio,
    zeta,
)
from plgds.degree_model import (
    BetaFunction,
    GrowthClass,
    PlgParams,
    exact_interval_sums,
)
from plgds.errors import (
    AmbiguousGrowth,
    DivergentSeries,
    DomainError,
    RegimeViolation,
)

ZETA_2 = math.pi**2 / 6.0
ZETA_3 = 1.2020569031595943
ZETA_4 = math.pi**4 / 90.0
CROSSOVER = 2.728668212890625
CASE_I_AT_3 = 2.1381373671420114
SHEN_AT_3 = 3.4745504468366484
LEMMA3_AT_3_K2 = 2.1061707094787785
THRESHOLDS = {2: 2.493737217716217, 3: 2.4359064129524235, 4: 2.4031763136863713}
THRESHOLD_2_BASE_2 = 2.5748376734733585
PREFACTOR_AT_02 = 0.06828588441176046
T1_FACTOR_ORACLE = 0.09307136157688967  # beta=1.5, n=1e6, eps=0.2, d=8, b=21/22


def _omega_fn():
    return BetaFunction(
        f=lambda n: max(1, math.ceil(math.log(max(n, 2)) ** 2)),
        growth_class=GrowthClass.OMEGA_LOG_N,
        label="ceil(ln(n)^2)",
    )


def _small_o_fn():
    return BetaFunction(
        f=lambda n: max(1, math.ceil(math.log(max(n, 16)) / math.log(math.log(max(n, 16))))),
        growth_class=GrowthClass.LITTLE_O_LOG_N,
        label="ceil(ln(n)/ln(ln(n)))",
    )


# -- zeta -------------------------------------------------------------------


@pytest.mark.parametrize(
    "beta, expected",
    [(2.0, ZETA_2), (3.0, ZETA_3), (4.0, ZETA_4)],
)
def test_zeta_known_values(beta, expected):
    assert zeta(beta) == pytest.approx(expected, rel=1e-11)


def test_zeta_monotone_decreasing():
    grid = [1.1 + 0.05 * i for i in range(179)]
    values = [zeta(b) for b in grid]
    for left, right in zip(values, values[1:]):
        assert left > right


def test_zeta_tends_to_one():
    assert zeta(20.0) - 1.0 < 1e-5


@pytest.mark.parametrize("beta", [1.0, 0.5, 0.0, -2.0])
def test_zeta_divergent(beta):
    with pytest.raises(DivergentSeries):
        zeta(beta)


def test_zeta_respects_tolerance():
    assert zeta(2.0, tol=1e-6) == pytest.approx(ZETA_2, abs=1e-5)


# -- the two ratio curves ----------------------------------------------------


def test_case_i_ratio_oracle():
    assert case_i_ratio(3.0) == pytest.approx(CASE_I_AT_3, rel=1e-12)


def test_case_i_ratio_formula_reconstruction():
    beta = 3.25
    expected = (zeta(beta) - zeta(beta - 1.0) / 2.0) / (1.0 - zeta(beta - 1.0) / 2.0)
    assert case_i_ratio(beta) == pytest.approx(expected, rel=1e-12)


def test_case_i_ratio_limit_is_one():
    assert case_i_ratio(50.0) == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("beta", [2.5, 2.7, 2.72])
def test_case_i_ratio_below_crossover(beta):
    with pytest.raises(RegimeViolation):
        case_i_ratio(beta)


def test_shen_ratio_oracle():
    assert shen_ratio(3.0) == pytest.approx(SHEN_AT_3, rel=1e-12)


def test_shen_ratio_formula_reconstruction():
    beta = 2.2
    expected = (zeta(beta) - 0.5) / (zeta(beta) - 1.0)
    assert shen_ratio(beta) == pytest.approx(expected, rel=1e-12)


def test_shen_ratio_increases_for_large_beta():
    # zeta(beta) - 1 in the denominator vanishes as beta grows, so the
    # comparison ratio diverges; the new curve instead tends to 1.
    values = [shen_ratio(3.0 + i) for i in range(6)]
    for left, right in zip(values, values[1:]):
        assert right > left


@pytest.mark.parametrize("beta", [2.0, 1.5])
def test_shen_ratio_domain(beta):
    with pytest.raises(RegimeViolation):
        shen_ratio(beta)


def test_ratio_curves_cross_near_2_87():
    # The comparison curve is only an improvement beyond the crossing: the
    # new ratio diverges at the zeta(beta-1)=2 crossover, so it exceeds
    # the comparison value just above 2.75 and dips below it before 2.88.
    assert case_i_ratio(2.86) > shen_ratio(2.86)
    assert case_i_ratio(2.88) < shen_ratio(2.88)


def test_ratio_dominance_beyond_crossing():
    for i in range(714):
        beta = 2.87 + 0.01 * i
        assert case_i_ratio(beta) < shen_ratio(beta), f"dominance fails at beta={beta}"


def test_case_i_monotone_decreasing():
    values = [case_i_ratio(2.75 + 0.01 * i) for i in range(726)]
    for left, right in zip(values, values[1:]):
        assert left > right


def test_ratios_at_least_one():
    for i in range(30):
        beta = 2.75 + 0.25 * i
        assert case_i_ratio(beta) >= 1.0
        assert shen_ratio(beta) >= 1.0


# -- crossover and thresholds -------------------------------------------------


def test_crossover_oracle():
    assert case_i_crossover() == pytest.approx(CROSSOVER, abs=1e-3)


def test_crossover_in_paper_band():
    assert case_i_crossover() == pytest.approx(2.729, abs=5e-3)


def test_crossover_defining_equation():
    c = case_i_crossover()
    assert zeta(c - 1.0) == pytest.approx(2.0, abs=1e-3)
    assert zeta(c + 0.01 - 1.0) < 2.0


@pytest.mark.parametrize("k, expected", sorted(THRESHOLDS.items()))
def test_beta_threshold_oracles(k, expected):
    assert beta_threshold(k) == pytest.approx(expected, abs=1e-3)


@pytest.mark.parametrize(
    "k, paper_value", [(2, 2.48), (3, 2.44), (4, 2.40)]
)
def test_beta_threshold_paper_band(k, paper_value):
    assert beta_threshold(k) == pytest.approx(paper_value, abs=0.02)


def test_beta_threshold_ordering():
    assert beta_threshold(2) > beta_threshold(3) > beta_threshold(4)


def test_beta_threshold_base_variant():
    assert beta_threshold(2, base=2) == pytest.approx(THRESHOLD_2_BASE_2, abs=1e-3)


def test_beta_threshold_domain():
    with pytest.raises(DomainError):
        beta_threshold(1)


# -- lemma 3 and case II -------------------------------------------------------


def test_lemma3_oracle():
    assert lemma3_bound(3.0, 2) == pytest.approx(LEMMA3_AT_3_K2, rel=1e-12)


def test_lemma3_formula_reconstruction():
    beta, k = 2.9, 3
    expected = (zeta(beta) - 0.5) * (beta - 2.0) * (k + 1) ** (beta - 2.0)
    assert lemma3_bound(beta, k) == pytest.approx(expected, rel=1e-12)


def test_lemma3_defined_at_threshold():
    value = lemma3_bound(beta_threshold(2), 2)
    assert math.isfinite(value) and value > 0.0


def test_lemma3_below_threshold():
    with pytest.raises(RegimeViolation):
        lemma3_bound(2.3, 2)


def test_lemma3_positive_on_grid():
    for k in (2, 3, 4):
        for i in range(20):
            beta = beta_threshold(k) + 0.1 * i
            assert lemma3_bound(beta, k) > 0.0


def test_lemma3_increasing_in_k():
    values = [lemma3_bound(3.0, k) for k in (2, 3, 4)]
    assert values[0] < values[1] < values[2]


def test_case_ii_oracle():
    d, ratio = case_ii_bound(2.6, math.log(1e6))
    assert d == 2
    assert ratio == pytest.approx(1.0, rel=1e-12)


def test_case_ii_domain_straddles_crossover():
    c = case_i_crossover()
    d, ratio = case_ii_bound(c - 0.05, math.log(1e6))
    assert d >= 2 and ratio >= 1.0
    with pytest.raises(RegimeViolation):
        case_ii_bound(c + 0.01, math.log(1e6))


def test_case_ii_witness_maximality():
    beta, alpha = 2.6, math.log(1e6)
    d, _ = case_ii_bound(beta, alpha)
    p = PlgParams(alpha=alpha, beta=beta)
    delta = p.delta_for(None)
    _, vol_d = exact_interval_sums(p, d, delta)
    assert vol_d > math.floor(math.exp(alpha))
    if d < delta:
        _, vol_next = exact_interval_sums(p, d + 1, delta)
        assert vol_next <= math.floor(math.exp(alpha))


# -- hardness factors ----------------------------------------------------------


def test_lemma1_b_values():
    assert lemma1_b(0.1) == pytest.approx(4.1 / 4.2, rel=1e-12)
    assert lemma1_b(0.2) == pytest.approx(21.0 / 22.0, rel=1e-12)


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.5, 2.0])
def test_lemma1_b_domain(eps):
    with pytest.raises(DomainError):
        lemma1_b(eps)


def test_hardness_prefactor_oracle():
    assert hardness_prefactor(0.2) == pytest.approx(PREFACTOR_AT_02, rel=1e-12)


def test_hardness_prefactor_formula():
    eps = 0.35
    expected = ((1.0 - eps) * eps / (2.0 + eps)) * 0.5 ** (eps / (2.0 + eps))
    assert hardness_prefactor(eps) == pytest.approx(expected, rel=1e-12)


def test_hardness_factor_t1_oracle():
    regime = classify_regime(1.5)
    value = hardness_factor(regime, 10**6, 0.2, 8, 21.0 / 22.0)
    assert value == pytest.approx(T1_FACTOR_ORACLE, rel=1e-12)


def test_hardness_factor_grows_with_n():
    regime = classify_regime(1.5)
    small = hardness_factor(regime, 10**6, 0.2, 8, 21.0 / 22.0)
    large = hardness_factor(regime, 10**9, 0.2, 8, 21.0 / 22.0)
    assert large > small > 0.0


@pytest.mark.parametrize(
    "beta, d_scale",
    [(0.5, 2), (1.0, 1), (1.5, 8), (2.0, 5)],
)
def test_hardness_factor_positive_each_regime(beta, d_scale):
    regime = classify_regime(beta)
    value = hardness_factor(regime, 10**8, 0.2, d_scale, 21.0 / 22.0)
    assert value > 0.0


def test_hardness_factor_t2_formula():
    beta, n, eps, d, b = 0.5, 10**8, 0.2, 2, 21.0 / 22.0
    pref = hardness_prefactor(eps)
    expected = pref * (beta / (d + b * beta)) * (math.log(n) - math.log(1.0 / (1.0 - beta)))
    value = hardness_factor(classify_regime(beta), n, eps, d, b)
    assert value == pytest.approx(expected, rel=1e-12)


def test_hardness_factor_t3_formula():
    n, eps, b = 10**8, 0.2, 21.0 / 22.0
    expected = hardness_prefactor(eps) * math.log(n) / (1.0 + b)
    value = hardness_factor(classify_regime(1.0), n, eps, 1, b)
    assert value == pytest.approx(expected, rel=1e-12)


def test_hardness_factor_upper_regimes_raise():
    with pytest.raises(RegimeViolation):
        hardness_factor(classify_regime(2.5), 10**6, 0.2, 1, 0.9)
    with pytest.raises(RegimeViolation):
        hardness_factor(classify_regime(_small_o_fn(), 10**6), 10**6, 0.2, 1, 0.9)


# -- classification ------------------------------------------------------------


@pytest.mark.parametrize(
    "beta, kind",
    [
        (0.5, RegimeKind.SUB_ONE),
        (1.0, RegimeKind.ONE),
        (1.5, RegimeKind.ONE_TO_TWO),
        (2.0, RegimeKind.TWO),
        (2.5, RegimeKind.ABOVE_TWO),
        (3.0, RegimeKind.CASE_I),
    ],
)
def test_classify_regime_fixed(beta, kind):
    assert classify_regime(beta).kind is kind


def test_classify_regime_case_i_refines_above_two():
    regime = classify_regime(3.0)
    assert regime.kind is RegimeKind.CASE_I
    assert regime.is_above_two


@pytest.mark.parametrize("beta", [0.0, -1.0])
def test_classify_regime_rejects_nonpositive(beta):
    with pytest.raises(DomainError):
        classify_regime(beta)


def test_classify_regime_functional():
    assert classify_regime(_omega_fn(), 100).kind is RegimeKind.FUNCTIONAL_HARD
    assert classify_regime(_small_o_fn(), 100).kind is RegimeKind.FUNCTIONAL_APX


def test_classify_regime_undeclared_growth():
    undeclared = BetaFunction(f=lambda n: n, label="n")
    with pytest.raises(AmbiguousGrowth):
        classify_regime(undeclared, 100)


# -- bound_report ---------------------------------------------------------------


def test_bound_report_lower_side():
    report = bound_report(1.5, 10**6, eps=0.2, d_scale=8, b_exp=21.0 / 22.0)
    assert report.hardness_factor == pytest.approx(T1_FACTOR_ORACLE, rel=1e-12)
    assert report.upper_ratio is None
    assert report.min_n_above_one > report.n


def test_bound_report_upper_side():
    report = bound_report(3.0, 10**6)
    assert report.upper_ratio == pytest.approx(CASE_I_AT_3, rel=1e-12)
    assert report.hardness_factor is None


def test_bound_report_functional_apx_certificate():
    report = bound_report(_small_o_fn(), 10**5)
    assert report.regime.kind is RegimeKind.FUNCTIONAL_APX
    assert report.upper_ratio > 1.0
    assert any("c=" in note for note in report.notes)


def test_bound_report_rejects_tiny_n():
    with pytest.raises(DomainError):
        bound_report(3.0, 1)
