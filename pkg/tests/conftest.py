import pytest

_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome; the summary prints them all."""

    def record(number: int, checks: list[tuple[str, bool]]) -> None:
        failed = [name for name, ok in checks if not ok]
        detail = "; ".join(failed) if failed else f"{len(checks)} checks"
        _RESULTS[number] = (not failed, detail)
        line = f"acceptance {number}: {'PASS' if not failed else 'FAIL'} ({detail})"
        print(line)
        assert not failed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, detail = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
