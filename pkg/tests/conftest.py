import time

from hypothesis import HealthCheck, settings

# fixed global seed: every hypothesis run draws the same examples
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

ACCEPTANCE: dict[int | str, tuple[bool, str]] = {}
_START = time.monotonic()


def record_criterion(key, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[key] = (bool(ok), detail)
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    elapsed = time.monotonic() - _START
    tr.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(str(k).split("-")[0]), str(k))):
        ok, detail = ACCEPTANCE[key]
        tr.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
    failed_props = [r for r in tr.stats.get("failed", []) if "test_acceptance" not in r.nodeid]
    collected_props = sum(1 for k in ("passed", "failed") for r in tr.stats.get(k, [])
                          if "test_acceptance" not in r.nodeid)
    if collected_props:
        ok = not failed_props and elapsed < 600
        tr.write_line(f"criterion 10: {'PASS' if ok else 'FAIL'}  "
                      f"{collected_props} property/unit tests, {len(failed_props)} failed, "
                      f"session {elapsed:.0f}s (limit 600s)")
