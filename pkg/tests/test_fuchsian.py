import math

import numpy as np
import pytest

from twistedzeta.errors import BudgetExceeded, NotHyperbolic
from twistedzeta.exactfield import ExactReal
from twistedzeta.fuchsian import (EnumerationOptions, Isometry, bolza_group,
                                  enumerate_spectrum, surface_group_regular_polygon,
                                  translation_length)
from twistedzeta.fuchsian import _ConjugationSearch, _letter_tables

BOLZA_SYSTOLE = 2.0 * math.acosh(1.0 + math.sqrt(2.0))


def test_polygon_relator_and_hyperbolicity():
    for genus in (2, 3):
        g = surface_group_regular_polygon(genus)
        prod = None
        for i in range(0, 2 * genus, 2):
            a, b = g.generators[i], g.generators[i + 1]
            c = a @ b @ a.inverse() @ b.inverse()
            prod = c if prod is None else prod @ c
        assert np.abs(prod.as_float() - np.eye(2)).max() < 1e-10
        assert all(abs(x.trace_float()) > 2 for x in g.generators)


def test_polygon_rejects_genus_one():
    with pytest.raises(ValueError):
        surface_group_regular_polygon(1)


def test_bolza_exact_relator(bolza):
    # the commutator product of the exact generators is the identity, exactly
    prod = None
    for i in (0, 2):
        a, b = bolza.generators[i], bolza.generators[i + 1]
        c = a @ b @ a.inverse() @ b.inverse()
        prod = c if prod is None else prod @ c
    assert np.abs(prod.as_float() - np.eye(2)).max() == 0
    assert prod.entries[0][0] == ExactReal(1) and prod.entries[0][1] == ExactReal(0)


def test_bolza_generator_traces_in_sqrt2_field(bolza):
    for g in bolza.generators:
        tr = g.trace()
        assert tr.in_sqrt2_subfield()
        assert tr.sqrt2_coords() == (2, 2)


def test_bolza_systole_brute_force(bolza):
    # oracle: minimum translation length over all reduced words of length <= 8
    from bruteforce import brute_force_classes

    classes = brute_force_classes(bolza, 4.0, max_len=8, radius=2)
    shortest = min(c["length"] for c in classes)
    assert shortest == pytest.approx(BOLZA_SYSTOLE, abs=1e-12)


def test_translation_length_examples():
    t = math.cosh(0.5)
    m = Isometry(np.array([[t, math.sinh(0.5)], [math.sinh(0.5), t]]))
    assert translation_length(m) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NotHyperbolic):
        translation_length(Isometry(np.array([[1.0, 1.0], [0.0, 1.0]])))
    with pytest.raises(NotHyperbolic):
        translation_length(Isometry(np.eye(2)))


def test_bolza_shortest_word_translation_length(bolza):
    assert translation_length(bolza.generators[0]) == pytest.approx(
        BOLZA_SYSTOLE, abs=1e-12)


def test_spectrum_below_systole_empty(bolza):
    sp = enumerate_spectrum(bolza, 2.0)
    assert len(sp) == 0


def test_spectrum_systole_band(bolza):
    sp = enumerate_spectrum(bolza, 3.1)
    assert len(sp) == 24
    assert all(c.length == pytest.approx(BOLZA_SYSTOLE, abs=1e-12) for c in sp.classes)
    assert all(c.primitive and c.power_index == 1 for c in sp.classes)
    assert all(c.multiplicity == 24 for c in sp.classes)


def test_spectrum_monotonicity(bolza, spectrum_l4):
    small = enumerate_spectrum(bolza, 3.1)
    big_words = {c.word for c in spectrum_l4.classes}
    assert {c.word for c in small.classes} <= big_words


def test_length_trace_consistency(spectrum_l4):
    for c in spectrum_l4.classes:
        tr = abs(float(c.trace)) if isinstance(c.trace, ExactReal) else abs(c.trace)
        assert c.length == pytest.approx(2 * math.acosh(tr / 2), rel=1e-12)
        assert c.length <= 4.0 + 1e-12


def test_inverse_closure(spectrum_l4, bolza):
    # the class of the inverse word is present for every class
    search = _make_search(bolza)
    mats = {c.word: c.matrix for c in spectrum_l4.classes}
    for c in spectrum_l4.classes:
        inv = c.matrix.inverse()
        assert any(
            search.are_conjugate(inv.as_float(), other.as_float(),
                                 inv.entries, other.entries)
            for other in mats.values()
        )


def _make_search(group):
    mats, inv_of, _ = _letter_tables(group)
    return _ConjugationSearch(group, mats, inv_of, 3)


def test_conjugation_invariance(spectrum_l4, bolza):
    # conjugating a representative by any generator lands in the same class
    search = _make_search(bolza)
    syms = bolza.generator_symbols
    for c in spectrum_l4.classes[:6]:
        M = c.matrix
        for i, s in enumerate(syms):
            g = bolza.generators[i]
            conj = g @ M @ g.inverse()
            assert search.are_conjugate(conj.as_float(), M.as_float(),
                                        conj.entries, M.entries)


def test_no_primitive_is_a_power(spectrum_l4):
    prims = [c for c in spectrum_l4.classes if c.primitive]
    for gamma in prims:
        for delta in spectrum_l4.classes:
            for k in (2, 3):
                approx = delta.length * k
                assert abs(gamma.length - approx) > 1e-6 or not np.allclose(
                    np.linalg.matrix_power(delta.matrix.as_float(), k),
                    gamma.matrix.as_float(), atol=1e-8)


def test_power_detection_float(bolza_float):
    sp = enumerate_spectrum(bolza_float, 6.2, EnumerationOptions(max_word_length=10))
    doubles = [c for c in sp.classes if not c.primitive]
    assert doubles and all(c.power_index == 2 for c in doubles)
    assert all(c.length == pytest.approx(2 * BOLZA_SYSTOLE, abs=1e-9) for c in doubles)


def test_exact_float_agreement(spectrum_l4, spectrum_l4_float):
    assert len(spectrum_l4) == len(spectrum_l4_float)
    for a, b in zip(spectrum_l4.classes, spectrum_l4_float.classes):
        assert abs(a.length - b.length) <= 1e-9


def test_budget_exceeded(bolza_float):
    with pytest.raises(BudgetExceeded):
        enumerate_spectrum(bolza_float, 6.0,
                           EnumerationOptions(max_word_length=10, node_budget=500))


def test_threads_deterministic(bolza_float):
    opts1 = EnumerationOptions(max_word_length=8, threads=1)
    opts8 = EnumerationOptions(max_word_length=8, threads=8)
    a = enumerate_spectrum(bolza_float, 4.5, opts1)
    b = enumerate_spectrum(bolza_float, 4.5, opts8)
    assert [(c.word, c.length, c.power_index) for c in a.classes] == \
           [(c.word, c.length, c.power_index) for c in b.classes]


def test_isometry_normalization():
    m = Isometry(-np.array([[math.cosh(1.0), math.sinh(1.0)],
                            [math.sinh(1.0), math.cosh(1.0)]]))
    assert m.trace_float() > 0
    with pytest.raises(ValueError):
        Isometry(np.array([[2.0, 0.0], [0.0, -0.5]]))  # negative determinant


def test_attestation_recorded(spectrum_l4):
    assert spectrum_l4.attestation in ("exhaustive", "heuristic")
    assert spectrum_l4.params["max_word_length"] == 8
    assert spectrum_l4.params["mode"] == "exact"


def test_classes_pairwise_distinct(spectrum_l4, bolza):
    # no two emitted entries share a conjugacy class
    words = [c.word for c in spectrum_l4.classes]
    assert len(set(words)) == len(words)
    assert all(c.word.cyclically_reduced() for c in spectrum_l4.classes)
    search = _make_search(bolza)
    sample = spectrum_l4.classes[:10]
    for i, a in enumerate(sample):
        for b in sample[i + 1:]:
            assert not search.are_conjugate(a.matrix.as_float(), b.matrix.as_float(),
                                            a.matrix.entries, b.matrix.entries)


def test_polygon_higher_genus():
    g = surface_group_regular_polygon(4)
    assert g.genus == 4 and len(g.generators) == 8
    assert all(x.is_hyperbolic() for x in g.generators)
