def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        label = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {report.outcome.upper()}: {label}")
