import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from twistedzeta.fuchsian import EnumerationOptions, bolza_group, enumerate_spectrum
from twistedzeta.representation import adjoint_rep, sl2_lift_rep, trivial_rep
from twistedzeta.words import unit_tangent_presentation


@pytest.fixture(scope="session")
def bolza():
    return bolza_group()


@pytest.fixture(scope="session")
def bolza_float():
    return bolza_group(exact=False)


@pytest.fixture(scope="session")
def ut2():
    return unit_tangent_presentation(2)


@pytest.fixture(scope="session")
def spectrum_l4(bolza):
    return enumerate_spectrum(bolza, 4.0, EnumerationOptions(max_word_length=8))


@pytest.fixture(scope="session")
def spectrum_l4_float(bolza_float):
    return enumerate_spectrum(bolza_float, 4.0, EnumerationOptions(max_word_length=8))


@pytest.fixture(scope="session")
def spectrum_l5(bolza):
    return enumerate_spectrum(bolza, 5.0, EnumerationOptions(max_word_length=8))


@pytest.fixture(scope="session")
def tau_rep(bolza):
    return sl2_lift_rep(bolza)


@pytest.fixture(scope="session")
def ad_rep(bolza):
    return adjoint_rep(bolza)


@pytest.fixture(scope="session")
def triv_rep():
    return trivial_rep(2)
