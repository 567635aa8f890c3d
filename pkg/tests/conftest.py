import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from repdim.embed import reduce_chain  # noqa: E402
from repdim.endo import build_endo  # noqa: E402
from repdim.gencog import build_M  # noqa: E402
from repdim.presentation import Quiver, build_algebra, relation  # noqa: E402

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

ALGEBRAS = Path(__file__).parent.parent / "algebras"

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def dihedral_algebra():
    q = Quiver(["x"], [("a", "x", "x"), ("b", "x", "x")])
    rels = [relation(q.path("a", "a")), relation(q.path("b", "b")),
            relation(q.path(*"abab")), relation(q.path(*"baba"))]
    return build_algebra(q, rels, 4, name="dihedral_socle")


@pytest.fixture(scope="session")
def A():
    return dihedral_algebra()


@pytest.fixture(scope="session")
def chain(A):
    return reduce_chain(A)


@pytest.fixture(scope="session")
def catalog(chain):
    return build_M(chain)


@pytest.fixture(scope="session")
def gamma(catalog):
    return build_endo(catalog)


@pytest.fixture(scope="session")
def algebras_dir():
    return ALGEBRAS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
