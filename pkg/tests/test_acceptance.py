"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Every tolerance is pinned here, not configured elsewhere.
"""

import time

import numpy as np
import pytest

import _oracles
from _profiles import random_eta_profile
from conftest import spec_of
from equichar import (
    ActivationFamily,
    FamilyKind,
    PermAction,
    UnboundedGroupError,
    build_affine_layer,
    build_eta_activation,
    classify_group,
    equivariant_basis,
    invariant_basis,
    maximal_family,
    maximal_group_label,
    relu,
    signed_normalize,
    subset_sum_generators,
    tanh,
    tensor_action,
    validate_network,
    verify_pointwise_equivariance,
)
from test_cli import GOLDEN, run_cli

P = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
S = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, -1.0, 0.0]])
M = np.array([[0.0, -0.5, 0.0], [0.0, 0.0, 2.0], [2.0, 0.0, 0.0]])
Z2 = np.array([[0.0, 2.0], [0.5, 0.0]])

S3_GENS = ((1, 0, 2), (1, 2, 0))
S4_GENS = ((1, 0, 2, 3), (1, 2, 3, 0))
S5_GENS = ((1, 0, 2, 3, 4), (1, 2, 3, 4, 0))


def report_line(number: int, description: str, ok: bool) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {description}")
    assert ok, f"criterion {number} failed: {description}"


def best_time(fn, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def test_criterion_1_scaled_swap_classification_and_rescaling():
    spec = spec_of("z2", Z2)

    def work():
        family = maximal_family(classify_group(spec))
        scaling = signed_normalize(spec)
        return family, scaling

    work()  # warm up caches before timing
    elapsed = best_time(work)
    family, scaling = work()

    ok = (
        family.kind is FamilyKind.B_MULTIPLICATIVE
        and abs(family.b - 2.0) <= 1e-9
        and np.abs(scaling.normalized_generators[0] - np.array([[0.0, 1.0], [1.0, 0.0]])).max()
        <= 1e-9
        and elapsed < 0.010
    )
    report_line(
        1,
        f"[[0,2],[1/2,0]] -> BMultiplicative(2), rescales to the swap ({elapsed * 1e3:.2f} ms)",
        ok,
    )


def test_criterion_2_example_matrix_classifications():
    def work():
        return (
            maximal_family(classify_group(spec_of("p", P))),
            maximal_family(classify_group(spec_of("s", S))),
            maximal_family(classify_group(spec_of("m", M))),
            subset_sum_generators([M]),
        )

    work()
    elapsed = best_time(work)
    fam_p, fam_s, fam_m, tgens = work()
    ok = (
        fam_p == ActivationFamily(FamilyKind.CONTINUOUS)
        and fam_s == ActivationFamily(FamilyKind.ODD_CONTINUOUS)
        and fam_m.kind is FamilyKind.PM_B_MULTIPLICATIVE
        and abs(fam_m.b - 2.0) <= 1e-9
        and tgens.values == (-0.5, 2.0)
        and elapsed < 0.010
    )
    report_line(
        2,
        "P -> Continuous, S -> OddContinuous, M -> PMBMultiplicative(2) "
        f"with scalar generators (-1/2, 2) ({elapsed * 1e3:.2f} ms)",
        ok,
    )


def test_criterion_3_duality_table_pass_fail_outcomes():
    rng = np.random.default_rng(101)
    nonneg_monomial = [Z2, 3.0 * np.eye(2)]
    eta2_pair = build_eta_activation(
        2.0, random_eta_profile(2.0, rng), random_eta_profile(2.0, rng)
    )
    eta2_signed = build_eta_activation(2.0, random_eta_profile(2.0, rng), signed=True)
    eta4_pair = build_eta_activation(
        4.0, random_eta_profile(4.0, rng), random_eta_profile(4.0, rng)
    )

    # (pair number, description, activation, generator witness, must pass)
    table = [
        (1, "continuous(tanh) vs permutation P", tanh(), [P], True),
        (1, "continuous(tanh) vs 2-monomial group", tanh(), [Z2], False),
        (2, "odd(tanh) vs signed permutation S", tanh(), [S], True),
        (2, "non-odd relu vs signed permutation S", relu(), [S], False),
        (3, "semilinear(relu) vs non-negative monomial", relu(), nonneg_monomial, True),
        (3, "continuous(tanh) vs non-negative monomial", tanh(), nonneg_monomial, False),
        (4, "2-multiplicative vs 2-monomial", eta2_pair, [Z2], True),
        (4, "4-multiplicative vs 2-monomial", eta4_pair, [Z2], False),
        (5, "signed 2-multiplicative vs +-2-monomial M", eta2_signed, [M], True),
        (5, "non-odd relu vs +-2-monomial M", relu(), [M], False),
    ]
    outcomes = []
    for item, description, activation, mats, expected in table:
        result = verify_pointwise_equivariance(activation, mats, trials=1000, tol=1e-8, seed=item)
        outcomes.append((description, result.passed == expected))
    matched = sum(1 for _, good in outcomes if good)
    for description, good in outcomes:
        if not good:
            print(f"  mismatch: {description}")
    report_line(3, f"duality table outcomes matched {matched}/10", matched == 10)


def test_criterion_4_stabilization_is_identity_on_all_labels():
    labels = [
        ActivationFamily(FamilyKind.CONTINUOUS),
        ActivationFamily(FamilyKind.ODD_CONTINUOUS),
        ActivationFamily(FamilyKind.SEMILINEAR),
        ActivationFamily(FamilyKind.B_MULTIPLICATIVE, 2.0),
        ActivationFamily(FamilyKind.PM_B_MULTIPLICATIVE, 2.0),
        ActivationFamily(FamilyKind.AFFINE_ONLY),
        ActivationFamily(FamilyKind.LINEAR_ONLY),
    ]
    fixed = [maximal_family(maximal_group_label(label, 4)) == label for label in labels]
    report_line(4, f"family -> group -> family fixed on {sum(fixed)}/7 labels", all(fixed))


def test_criterion_5_unbounded_obstructions():
    failures = []
    for name, spec in [
        ("diag(2,1/2)", spec_of("diag", np.diag([2.0, 0.5]))),
        ("scaled 3-cycle M", spec_of("m", M)),
        ("1x1 doubling [[2]]", spec_of("z", np.array([[2.0]]))),
    ]:
        try:
            signed_normalize(spec)
            failures.append(name)
        except UnboundedGroupError:
            pass
    report_line(
        5,
        "diag(2,1/2), M, and the 1x1 doubling generator all refuse a bounded rescaling",
        not failures,
    )


def test_criterion_6_basis_counts_match_burnside_oracle():
    s3 = PermAction(3, S3_GENS)
    s4 = PermAction(4, S4_GENS)
    s5 = PermAction(5, S5_GENS)
    c6 = PermAction(6, ((1, 2, 3, 4, 5, 0),))
    swap4 = PermAction(4, ((1, 0, 2, 3),))
    trivial2 = PermAction(2, ())
    t2_3 = tensor_action(3, 2, S3_GENS)
    t2_4 = tensor_action(4, 2, S4_GENS)

    cases = [
        (s3, s3, 2),
        (t2_3, s3, 5),
        (t2_4, t2_4, 15),
        (s5, s5, None),
        (c6, c6, None),
        (swap4, swap4, None),
        (trivial2, trivial2, None),
        (t2_3, t2_3, None),
    ]
    start = time.perf_counter()
    all_match = True
    pinned = {}
    for a_in, a_out, expected in cases:
        count = len(equivariant_basis(a_in, a_out))
        oracle = _oracles.burnside_hom_dim(
            a_out.generators, a_in.generators, a_out.size, a_in.size
        )
        all_match = all_match and count == oracle
        if expected is not None:
            pinned[expected] = count == expected
    elapsed = time.perf_counter() - start
    ok = all_match and all(pinned.values()) and set(pinned) == {2, 5, 15} and elapsed < 5.0
    report_line(
        6,
        f"basis counts equal Burnside fixed-space dims on 8 action pairs, "
        f"pinned counts 2/5/15 ({elapsed:.2f} s)",
        ok,
    )


def test_criterion_7_constructed_activation_analysis():
    rng = np.random.default_rng(2024)
    b = 2.0
    eps = 1e-6
    worst_mult = 0.0
    worst_jump = 0.0
    worst_zero_ratio = 0.0
    for index in range(20):
        plus = random_eta_profile(b, rng)
        if index % 2 == 0:
            f = build_eta_activation(b, plus, signed=True)
            max_eta = plus.max_abs()
        else:
            minus = random_eta_profile(b, rng)
            f = build_eta_activation(b, plus, minus)
            max_eta = max(plus.max_abs(), minus.max_abs())

        x = rng.uniform(-100.0, 100.0, size=1000)
        x = np.where(x == 0.0, 1.0, x)
        worst_mult = max(worst_mult, float(np.abs(f(b * x) - b * f(x)).max()))

        for n in range(-8, 9):
            boundary = b ** float(n)
            jump = abs(f(boundary + eps) - f(boundary - eps))
            worst_jump = max(worst_jump, jump)

        zero_mag = max(abs(f(1e-12)), abs(f(-1e-12)))
        worst_zero_ratio = max(worst_zero_ratio, zero_mag / max_eta)

    ok = worst_mult <= 1e-9 and worst_jump <= 1e-6 and worst_zero_ratio <= 1e-10
    report_line(
        7,
        "20 random profiles: multiplicative residual "
        f"{worst_mult:.2e} <= 1e-9, boundary jump {worst_jump:.2e} <= 1e-6, "
        f"|f(+-1e-12)|/max|eta| {worst_zero_ratio:.2e} <= 1e-10",
        ok,
    )


def test_criterion_8_finite_rotation_demo_with_golden_reports():
    c4 = np.array([[0.0, -1.0], [1.0, 0.0]])
    angle = np.pi / 3
    c6 = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    fam_c4 = maximal_family(classify_group(spec_of("c4", c4)))
    fam_c6 = maximal_family(classify_group(spec_of("c6", c6)))
    golden_ok = True
    for stem in ("c4_rotation", "c6_rotation"):
        result = run_cli("classify", str(GOLDEN / f"{stem}.json"))
        expected = (GOLDEN / f"{stem}_report.json").read_text()
        golden_ok = golden_ok and result.returncode == 0 and result.stdout == expected
    ok = (
        fam_c4 == ActivationFamily(FamilyKind.ODD_CONTINUOUS)
        and fam_c6 == ActivationFamily(FamilyKind.LINEAR_ONLY)
        and golden_ok
    )
    report_line(
        8,
        "C4 rotation -> OddContinuous, C6 rotation -> LinearOnly, "
        "reports byte-identical to goldens",
        ok,
    )


def test_criterion_9_deepsets_network_end_to_end():
    action = PermAction(5, S5_GENS)
    basis = equivariant_basis(action, action)
    bias_basis = invariant_basis(action)
    weights = [(1.0, 0.5), (0.7, -0.2), (0.3, 0.1)]
    layers = [build_affine_layer(basis, w, bias_basis, (0.1,)) for w in weights]
    actions = [action] * 4

    clean = validate_network(
        layers, [relu(), relu()], actions, trials=500, tol=1e-8, seed=99
    )

    corrupted = [build_affine_layer(basis, w, bias_basis, (0.1,)) for w in weights]
    corrupted[0].matrix[0, 1] += 0.25
    broken = validate_network(
        corrupted, [relu(), relu()], actions, trials=500, tol=1e-8, seed=99
    )

    ok = (
        clean.passed
        and not broken.passed
        and broken.failure is not None
        and broken.failure.stage == 1
        and broken.failure.residual > 1e-8
        and broken.failure.x.shape == (5,)
    )
    report_line(
        9,
        "3-layer DeepSets stack on S5 passes 500 trials; one corrupted weight "
        "fails at stage 1 with a recorded counterexample",
        ok,
    )
