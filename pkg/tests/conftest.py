import sys


def pytest_terminal_summary(terminalreporter):
    verdicts = {}
    for name, mod in list(sys.modules.items()):
        if name.rsplit(".", 1)[-1] == "test_acceptance":
            verdicts.update(getattr(mod, "VERDICTS", {}))
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts):
        terminalreporter.write_line(verdicts[number])
