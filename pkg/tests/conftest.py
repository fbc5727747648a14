"""One PASS/FAIL line per acceptance criterion at the end of the run."""

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, label = marker.args
    ok = _results.get(number, (label, True))[1]
    if call.excinfo is not None and not call.excinfo.errisinstance(KeyboardInterrupt):
        ok = False
    _results[number] = (label, ok)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        label, ok = _results[number]
        terminalreporter.write_line(f"criterion {number:>2}  {'PASS' if ok else 'FAIL'}  {label}")
