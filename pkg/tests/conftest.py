import pytest

from cogkg.language import Lexicon

# Filled by the acceptance tests; echoed after the run so the per-criterion
# lines are visible regardless of output capturing.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return Lexicon.default()
