from omegaloop.suites import SuiteConfig, pi2_signal, run_suite


def test_all_suites_pass():
    rep = run_suite("all", SuiteConfig())
    assert rep.exit_code == 0, rep.to_text()
    assert len(rep.checks) > 90


def test_pi2_signal_smallest_k():
    res = pi2_signal()
    assert res["k"] == 3 and res["nontrivial"] and res["rank"] >= 1 and res["order"] == 0
