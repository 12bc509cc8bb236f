# conftest.py - shared fixtures and the --runslow switch
import pytest

import config as snarklab_config
import constructions as C


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow reproductions")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def default_settings(tmp_path):
    """Every test starts from default settings with its own report stream."""
    snarklab_config.set_settings(snarklab_config.Settings(report_path=str(tmp_path / "reports.jsonl")))
    yield
    snarklab_config.set_settings(snarklab_config.Settings())


@pytest.fixture
def petersen():
    return C.petersen()


@pytest.fixture
def j5():
    return C.flower_snark(5)


@pytest.fixture
def small_corpus():
    """Closed cubic graphs with at most 16 vertices."""
    return [
        C.complete_k4(), C.complete_k33(), C.petersen(), C.flower_snark(3),
        C.prism(3), C.prism(4), C.prism(5), C.mobius_kantor(), C.theta(),
        C.generalized_petersen(7, 2),
    ]
