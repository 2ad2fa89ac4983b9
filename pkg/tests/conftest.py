"""Per-criterion PASS/FAIL/SKIP summary for tests marked ``criterion(n)``."""

from collections import defaultdict

_outcomes: dict[int, list[str]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_itemcollected(item):
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    # One entry per test: the call outcome, or a setup/teardown failure or skip.
    if report.when == "call" or report.outcome != "passed":
        _outcomes[number].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        if "failed" in results:
            verdict = "FAIL"
        elif all(r == "skipped" for r in results):
            verdict = "SKIP"
        else:
            verdict = "PASS"
        terminalreporter.write_line(
            f"criterion {number}: {verdict} ({results.count('passed')}/{len(results)} checks passed)")
