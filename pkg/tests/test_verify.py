from ffent.verify import SUITES, dropped_sqrt_h0, run_suite


def test_all_suites_pass():
    for name in SUITES:
        report = run_suite(name)
        assert report["passed"], [c for c in report["checks"] if not c["passed"]]


def test_fault_injection_is_caught_by_route_equality_only():
    report = run_suite("properties", h0_function=dropped_sqrt_h0)
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    assert failed == ["route equality"]
    witness = next(c for c in report["checks"] if c["name"] == "route equality")["witness"]
    assert {"block_route", "pi_route", "value", "limit"} <= set(witness)


def test_property_suite_is_quick():
    assert run_suite("properties")["seconds"] < 1.0
