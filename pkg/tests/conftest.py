import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="run the slow exhaustive suites (Q_5 enumeration, negative example)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="slow suite; enable with --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def rd_family():
    from omcube import corpus

    return corpus.named("RD")


@pytest.fixture(scope="session")
def c6():
    from omcube import corpus

    return corpus.even_cycle(3)


@pytest.fixture(scope="session")
def c8p3():
    from omcube import corpus

    return corpus.product(corpus.even_cycle(4), corpus.path(3))


@pytest.fixture(scope="session")
def q5_catalog():
    """The full Q_5 enumeration, shared by the slow acceptance tests."""
    from omcube import corpus

    return list(corpus.enumerate_partial_cubes(5))
