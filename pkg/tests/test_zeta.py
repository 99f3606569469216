import math
import warnings

import numpy as np
import pytest

from twistedzeta.errors import EmptySpectrumWarning, OutsideConvergence
from twistedzeta.fuchsian import EnumerationOptions, enumerate_spectrum
from twistedzeta.zeta import (dynamical_determinant, factoring_holonomy,
                              ruelle_zeta, selberg_zeta, sl2_lift_tensor_holonomy,
                              verify_identities)


@pytest.fixture(scope="module")
def holonomies(triv_rep, ad_rep, tau_rep):
    return {
        "trivial": factoring_holonomy(triv_rep),
        "adjoint": factoring_holonomy(ad_rep),
        "tau": sl2_lift_tensor_holonomy(tau_rep),
    }


def test_empty_spectrum_value(bolza, holonomies):
    sp = enumerate_spectrum(bolza, 2.0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        zv = ruelle_zeta(sp, holonomies["trivial"], 3.0)
    assert zv.value == 1.0 and zv.log_value == 0
    assert any(issubclass(w.category, EmptySpectrumWarning) for w in caught)


def test_outside_convergence(spectrum_l5, holonomies):
    with pytest.raises(OutsideConvergence):
        ruelle_zeta(spectrum_l5, holonomies["trivial"], 0.5)
    with pytest.raises(OutsideConvergence):
        ruelle_zeta(spectrum_l5, holonomies["adjoint"], 2.0)
    # the lift twist grows like e^{l/2}: still fine at s = 2
    zv = ruelle_zeta(spectrum_l5, holonomies["tau"], 2.0)
    assert zv.abscissa == pytest.approx(1.5, abs=1e-9)


def test_selberg_tends_to_one(spectrum_l5, holonomies):
    zv = selberg_zeta(spectrum_l5, holonomies["trivial"], 30.0)
    assert abs(zv.value - 1.0) <= 1e-10


def test_real_on_real(spectrum_l5, holonomies):
    for h in holonomies.values():
        zv = ruelle_zeta(spectrum_l5, h, 3.0)
        assert abs(zv.log_value.imag) <= 1e-10


def test_trivial_matches_direct_product(spectrum_l5, holonomies):
    s = 3.0
    zv = ruelle_zeta(spectrum_l5, holonomies["trivial"], s, j_max=256)
    prod = 1.0
    for c in spectrum_l5.primitives():
        prod *= 1.0 - math.exp(-s * c.length)
    assert zv.value.real == pytest.approx(prod, rel=1e-13)
    assert abs(zv.value.imag) <= 1e-14


def test_tail_invariant_finite_only_in_convergence(spectrum_l5, holonomies):
    zv = ruelle_zeta(spectrum_l5, holonomies["trivial"], 2.1)
    assert math.isfinite(zv.tail_estimate) and zv.convergence_margin > 0


def test_truncation_monotonicity_j(spectrum_l5, holonomies):
    for name in ("trivial", "adjoint"):
        h = holonomies[name]
        for s in (2.5, 3.0):
            if name == "adjoint" and s == 2.5:
                continue
            a = ruelle_zeta(spectrum_l5, h, s, j_max=24)
            b = ruelle_zeta(spectrum_l5, h, s, j_max=48)
            assert abs(b.log_value - a.log_value) <= a.tail_components["j"]


def test_truncation_monotonicity_k(spectrum_l5, holonomies):
    h = holonomies["trivial"]
    a = selberg_zeta(spectrum_l5, h, 3.0, k_max=6)
    b = selberg_zeta(spectrum_l5, h, 3.0, k_max=12)
    assert abs(b.log_value - a.log_value) <= a.tail_components["k"]


def test_truncation_monotonicity_spectrum(bolza, spectrum_l5, holonomies):
    smaller = enumerate_spectrum(bolza, 4.0, EnumerationOptions(max_word_length=8))
    h = holonomies["trivial"]
    a = ruelle_zeta(smaller, h, 3.0)
    b = ruelle_zeta(spectrum_l5, h, 3.0)
    assert abs(b.log_value - a.log_value) <= a.tail_components["spectrum"]


def test_holonomy_trace_conjugation_invariance(bolza, spectrum_l5, holonomies):
    # traces agree across conjugate representative words: all cyclic
    # rotations, and one-letter conjugations of the stored representative
    from twistedzeta.fuchsian import GeodesicClass
    from twistedzeta.words import Word

    for name, h in holonomies.items():
        for c in spectrum_l5.classes[:4]:
            base = np.trace(h.matrix(c))
            letters = list(c.word.letters())
            variants = [letters[i:] + letters[:i] for i in range(len(letters))]
            for i, sym in enumerate(bolza.generator_symbols):
                variants.append([(sym, 1)] + letters + [(sym, -1)])
            for lv in variants:
                w = Word.from_letters(lv)
                iso = bolza.word_isometry(w)
                cls2 = GeodesicClass(word=w, matrix=iso, trace=iso.trace(),
                                     length=c.length)
                M2 = h.matrix(cls2)
                scale = max(1.0, float(np.abs(M2).max()), abs(base))
                assert abs(np.trace(M2) - base) <= 1e-10 * scale, (name, lv)


def test_holonomy_power_multiplicativity(spectrum_l5, holonomies):
    for name, h in holonomies.items():
        for c in spectrum_l5.classes[:3]:
            M = h.matrix(c)
            for j in (2, 3):
                assert h.trace_power(c, j) == pytest.approx(
                    complex(np.trace(np.linalg.matrix_power(M, j))), rel=1e-9)


def test_identity_suite(spectrum_l5, holonomies):
    for name, pts in (("trivial", [2.0, 2.5, 3.0]),
                      ("adjoint", [2.5, 3.0]),
                      ("tau", [2.0, 2.5, 3.0])):
        report = verify_identities(spectrum_l5, holonomies[name], pts)
        assert report.passed
        idents = {c.identity for c in report.checks}
        assert "ruelle_selberg_quotient" in idents
        assert "det0_selberg_product" in idents
        assert "dynamical_determinant_factorization" in idents
        if name == "adjoint":
            assert "selberg_adjoint_split" in idents


def test_identity_budgets_small_at_3(spectrum_l5, holonomies):
    for name in ("trivial", "adjoint", "tau"):
        report = verify_identities(spectrum_l5, holonomies[name], [3.0])
        for c in report.checks:
            assert c.budget < 1e-3


def test_det_weights_identity(spectrum_l5):
    # |det(Id - P)| equals the alternating sum of the exterior-power traces
    for c in spectrum_l5.classes[:10]:
        for j in (1, 2, 3):
            x = j * c.length
            det = (math.exp(x) - 1.0) * (1.0 - math.exp(-x))
            alt = -1.0 + (math.exp(x) + math.exp(-x)) - 1.0
            assert det == pytest.approx(alt, rel=1e-14)


def test_adjoint_identity_skipped_outside(spectrum_l5, holonomies):
    report = verify_identities(spectrum_l5, holonomies["adjoint"], [2.0])
    assert report.checks == () or all(c.s.real != 2.0 for c in report.checks
                                      if c.identity == "ruelle_selberg_quotient")
    assert any(name == "ruelle_selberg_quotient" for name, _, _ in report.skipped)
