import pytest

_criteria: dict[str, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    entry = _criteria.setdefault(label, {"title": marker.args[1], "ok": True, "notes": []})
    if report.failed:
        entry["ok"] = False
    if report.when == "call":
        entry["notes"].extend(v for k, v in item.user_properties if k == "note")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[-1])):
        entry = _criteria[label]
        tr.write_line(f"{'PASS' if entry['ok'] else 'FAIL'}  {label}: {entry['title']}")
        for note in entry["notes"]:
            tr.write_line(f"        {note}")
