import pytest

_VERDICTS: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion():
    """Record ``criterion(n, ok, detail)`` for the end-of-run acceptance table."""

    def record(n: int, ok: bool, detail: str) -> bool:
        _VERDICTS[n] = ("PASS" if ok else "FAIL", detail)
        print(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        verdict, detail = _VERDICTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {detail}")
