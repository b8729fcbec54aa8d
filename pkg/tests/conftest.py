import pytest

_LINES: list[str] = []


class Criteria:
    """Collects one verdict line per acceptance criterion."""

    def record(self, key: str, verdict: str, detail: str) -> None:
        line = f"{verdict:6s} {key}: {detail}"
        _LINES.append(line)
        print(line)

    def check(self, key: str, ok: bool, detail: str) -> bool:
        self.record(key, "PASS" if ok else "FAIL", detail)
        return ok


@pytest.fixture(scope="session")
def criteria() -> Criteria:
    return Criteria()


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
