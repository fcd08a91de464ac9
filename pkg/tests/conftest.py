import pytest

from homassoc import dual_numbers, example_2d, split_pair, twisted_dual_numbers


@pytest.fixture(scope="session")
def A2():
    return example_2d()


@pytest.fixture(scope="session")
def TD():
    return twisted_dual_numbers()


@pytest.fixture(scope="session")
def DN():
    return dual_numbers()


@pytest.fixture(scope="session")
def KK():
    return split_pair()


@pytest.fixture(scope="session", params=["hom-assoc-2d", "dual-numbers-twist"])
def twisted(request, A2, TD):
    return {"hom-assoc-2d": A2, "dual-numbers-twist": TD}[request.param]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
