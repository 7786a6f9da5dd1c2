import time

import pytest

ACCEPTANCE: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, elapsed = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:7.2f}s) {title}")
    passed = sum(1 for _, ok, _ in ACCEPTANCE.values() if ok)
    terminalreporter.write_line(f"{passed}/{len(ACCEPTANCE)} criteria pass")


class _Timer:
    def __init__(self):
        self.num = None
        self.title = ""
        self.start = time.perf_counter()

    def __call__(self, num: int, title: str):
        self.num, self.title = num, title
        self.start = time.perf_counter()
        return self

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


@pytest.fixture
def criterion(request):
    """Time a criterion body and record its outcome for the summary."""
    t = _Timer()
    yield t
    elapsed = t.elapsed
    if t.num is not None:
        rep = getattr(request.node, "rep_call", None)
        ok = bool(rep and rep.passed)
        ACCEPTANCE[t.num] = (t.title, ok, elapsed)
        print(f"\ncriterion {t.num}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {t.title}")
