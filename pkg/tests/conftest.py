import pytest

from dahalab.macdonald import MacdonaldEngine
from dahalab.polyrep import PolynomialRep
from dahalab.rootdata import build_root_datum, make_lattice
from dahalab.scalars import QtContext, Specialization


@pytest.fixture(scope="session")
def a1_datum():
    return build_root_datum("A", 1)


@pytest.fixture(scope="session")
def a1_engine(a1_datum):
    rep = PolynomialRep(a1_datum, make_lattice(a1_datum, "P"), QtContext(level=4))
    return MacdonaldEngine(rep)


@pytest.fixture(scope="session")
def a2_engine():
    datum = build_root_datum("A", 2)
    rep = PolynomialRep(datum, make_lattice(datum, "P"), QtContext(level=12))
    return MacdonaldEngine(rep)


@pytest.fixture(scope="session")
def b2_engine():
    datum = build_root_datum("B", 2)
    rep = PolynomialRep(datum, make_lattice(datum, "P"), QtContext(level=4))
    return MacdonaldEngine(rep)


@pytest.fixture(scope="session")
def a1_root3_engine(a1_datum):
    sp = Specialization(level=4, q_order=3, k_sht=-1)
    rep = PolynomialRep(a1_datum, make_lattice(a1_datum, "P"), sp)
    return MacdonaldEngine(rep)
