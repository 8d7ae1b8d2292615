import pathlib

import pytest

CORPUS = pathlib.Path(__file__).resolve().parents[1] / "src" / "extriples" / "corpus"

_LINES: list[str] = []


class Reporter:
    def __call__(self, number: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        _LINES.append(line)


@pytest.fixture(scope="session")
def report():
    return Reporter()


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
