import cmath
import itertools
import math

import numpy as np
import pytest

from twistedzeta.errors import IllConditioned
from twistedzeta.fuchsian import enumerate_spectrum
from twistedzeta.representation import (Representation, adjoint_rep,
                                        centralizer_dimension, classify,
                                        clock_shift_pair, dual_rep, evaluate,
                                        geodesic_lift_holonomy, is_regular,
                                        sl2_lift_rep, trivial_rep,
                                        unitary_generic_rep)
from twistedzeta.words import Word, unit_tangent_presentation, word_from_string


def test_evaluate_basics(triv_rep):
    assert np.abs(evaluate(triv_rep, Word.identity()) - np.eye(1)).max() == 0
    u = unitary_generic_rep(2, 2, 1)
    w = word_from_string("a1b1cA1")
    ww = w * w.inverse()
    assert np.abs(evaluate(u, ww) - np.eye(2)).max() <= 2 * 1e-12
    for rel in u.target.relators:
        assert np.abs(evaluate(u, rel) - np.eye(2)).max() <= 1e-12


def test_clock_shift_pair():
    for r in (1, 2, 3, 4, 6):
        A, B = clock_shift_pair(r)
        omega = cmath.exp(2j * cmath.pi / r)
        comm = A @ B @ np.linalg.inv(A) @ np.linalg.inv(B)
        assert np.abs(comm - omega * np.eye(r)).max() <= 1e-14
        assert np.abs(A @ A.conj().T - np.eye(r)).max() <= 1e-14
        assert np.abs(B @ B.conj().T - np.eye(r)).max() <= 1e-14
    A, B = clock_shift_pair(2)
    assert np.array_equal(A, np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.abs(B - np.diag([1, -1])).max() <= 1e-15


def test_unitary_generic_rep_examples():
    rep = unitary_generic_rep(2, 2, 1)
    assert rep.relator_residual <= 1e-12
    cls = classify(rep)
    assert not cls.factoring and cls.irreducible and cls.generic_member
    assert cls.c_scalar == pytest.approx(1j, abs=1e-12)
    rep4 = unitary_generic_rep(2, 2, 4)
    assert classify(rep4).factoring
    rep3 = unitary_generic_rep(2, 3, 1)
    for g, m in rep3.images.items():
        assert np.abs(m @ m.conj().T - np.eye(3)).max() <= 1e-14
    with pytest.raises(ValueError):
        unitary_generic_rep(2, 2, 0)
    with pytest.raises(ValueError):
        unitary_generic_rep(2, 2, 5)


def test_generic_membership_sweep():
    for genus, r in itertools.product((2, 3), (2, 3)):
        for j in range(1, r * (2 * genus - 2) + 1):
            cls = classify(unitary_generic_rep(genus, r, j))
            assert cls.generic_member and cls.witness == 1


def test_classification_flags(triv_rep, ut2):
    cls = classify(triv_rep)
    assert cls.factoring and cls.invariant_dim == 1 and cls.c_scalar == 1.0
    d2 = Representation(ut2, {g: np.eye(2, dtype=complex) for g in ut2.generators})
    cls2 = classify(d2)
    assert not cls2.irreducible and cls2.invariant_dim == 2


def test_factoring_iff_unit_scalar():
    for genus, r in ((2, 2), (2, 3)):
        for j in range(1, r * (2 * genus - 2) + 1):
            cls = classify(unitary_generic_rep(genus, r, j))
            if cls.c_scalar is not None:
                assert cls.factoring == (abs(cls.c_scalar - 1.0) <= 1e-9)


def test_is_regular_and_centralizer():
    assert not is_regular(np.eye(2))
    assert is_regular(np.diag([1.0, 2.0]))
    assert centralizer_dimension([np.eye(2)]) == 4
    assert centralizer_dimension([np.diag([1.0, 2.0])]) == 2
    A, B = clock_shift_pair(3)
    assert centralizer_dimension([A, B]) == 1
    with pytest.raises(IllConditioned):
        is_regular(np.diag([1.0, 1.0 + 3e-8]))


def test_classification_stable_under_conjugation():
    rng = np.random.default_rng(42)
    rep = unitary_generic_rep(2, 2, 1)
    base = classify(rep)
    for _ in range(5):
        while True:
            S = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            if np.linalg.cond(S) <= 1e3:
                break
        images = {g: S @ m @ np.linalg.inv(S) for g, m in rep.images.items()}
        conj = Representation(rep.target, images, tolerance=1e-8)
        cls = classify(conj)
        assert (cls.factoring, cls.irreducible, cls.invariant_dim,
                cls.generic_member) == (base.factoring, base.irreducible,
                                        base.invariant_dim, base.generic_member)


def _invariant_subspace_exists(images, r):
    """Brute-force oracle: a proper invariant subspace spanned by eigenvectors
    of one regular image."""
    reg = None
    for m in images:
        eig = np.linalg.eigvals(m)
        if len(set(np.round(eig, 8))) == r:
            reg = m
            break
    assert reg is not None
    _, vecs = np.linalg.eig(reg)
    for k in range(1, r):
        for subset in itertools.combinations(range(r), k):
            V = vecs[:, list(subset)]
            ok = True
            for m in images:
                MV = m @ V
                # MV must lie in span(V)
                resid = MV - V @ np.linalg.lstsq(V, MV, rcond=None)[0]
                if np.abs(resid).max() > 1e-8:
                    ok = False
                    break
            if ok:
                return True
    return False


def test_burnside_vs_subspace_oracle():
    # the oracle needs one regular image to span the eigenvector lattice
    cases = [
        (unitary_generic_rep(2, 2, 1), True),
        (unitary_generic_rep(2, 3, 1), True),
        (unitary_generic_rep(2, 2, 4), True),
    ]
    p = unit_tangent_presentation(2)
    diag = {g: np.diag([1.0, -1.0]).astype(complex) for g in p.generators}
    diag["c"] = np.eye(2, dtype=complex)
    cases.append((Representation(p, diag), False))
    for rep, expect_irreducible in cases:
        cls = classify(rep)
        assert cls.irreducible == expect_irreducible
        images = [rep.images[g] for g in rep.target.generators]
        assert cls.irreducible == (not _invariant_subspace_exists(images, rep.r))
    # no regular image at all: the span-closure check still settles it
    red = Representation(p, {g: np.eye(2, dtype=complex) for g in p.generators})
    assert not classify(red).irreducible


def test_adjoint_rep(bolza, ad_rep):
    assert ad_rep.exactly_validated
    assert np.abs(evaluate(ad_rep, Word.identity()) - np.eye(3)).max() == 0
    for sym in ("a1", "b1", "a2", "b2"):
        assert abs(np.linalg.det(ad_rep.images[sym]) - 1) < 1e-10
    g0 = bolza.generators[0]
    ell = 2 * math.acosh(abs(g0.trace_float()) / 2)
    ev = np.sort(np.linalg.eigvals(ad_rep.images["a1"]).real)
    expect = np.sort([math.exp(-ell), 1.0, math.exp(ell)])
    assert np.abs(ev - expect).max() <= 1e-9 * math.exp(ell)
    cls = classify(ad_rep)
    assert cls.factoring and cls.irreducible and cls.invariant_dim == 0


def test_sl2_lift_rep(bolza, tau_rep):
    assert np.array_equal(tau_rep.images["c"], -np.eye(2))
    assert tau_rep.relator_residual <= 1e-10
    assert tau_rep.exactly_validated
    cls = classify(tau_rep)
    assert not cls.factoring and cls.irreducible
    flipped = sl2_lift_rep(bolza, signs=(-1, 1, -1, 1))
    assert classify(flipped).irreducible
    with pytest.raises(ValueError):
        sl2_lift_rep(bolza, signs=(1, 1))


def test_geodesic_lift_holonomy(bolza, tau_rep):
    sp = enumerate_spectrum(bolza, 3.1)
    for c in sp.classes[:8]:
        H = geodesic_lift_holonomy(tau_rep, c)
        tr = (H[0, 0] + H[1, 1]).real
        assert tr == pytest.approx(2 * math.cosh(c.length / 2), abs=1e-10)
        assert abs(np.linalg.det(H) - 1) <= 1e-12
        ev = np.sort(np.abs(np.linalg.eigvals(H)))
        assert ev[1] == pytest.approx(math.exp(c.length / 2), rel=1e-10)


def test_dual_rep():
    rep = unitary_generic_rep(2, 2, 1)
    dd = dual_rep(dual_rep(rep))
    for g in rep.images:
        assert np.abs(dd.images[g] - rep.images[g]).max() <= 1e-12
    du = dual_rep(rep)
    for g in rep.images:
        assert np.abs(du.images[g] - rep.images[g].conj()).max() <= 1e-12
    triv = trivial_rep(2)
    assert classify(dual_rep(triv)).invariant_dim == classify(triv).invariant_dim


def test_shipped_construction_residuals(bolza, tau_rep, ad_rep, triv_rep):
    # every shipped construction validates; the adjoint on the octagon group
    # carries an exact-arithmetic proof where double precision cannot reach
    # 1e-10 through the relator product
    assert triv_rep.relator_residual == 0
    assert tau_rep.relator_residual <= 1e-10
    assert unitary_generic_rep(3, 3, 5).relator_residual <= 1e-12
    assert ad_rep.exactly_validated


def test_validation_failure():
    p = unit_tangent_presentation(2)
    images = {g: np.eye(2, dtype=complex) for g in p.generators}
    # a1 and b1 with a nontrivial commutator break the long relator
    images["a1"] = np.array([[0, 1], [1, 0]], dtype=complex)
    images["b1"] = np.array([[1, 1], [0, 1]], dtype=complex)
    with pytest.raises(ValueError):
        Representation(p, images)
