import numpy as np
import pytest

from wkframes import FrameFamily

E1, E2 = np.eye(2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def onb(d=2):
    return FrameFamily(np.eye(d), dim=d)


def fam(*vectors, dim=None):
    return FrameFamily(np.array(vectors, dtype=complex), dim=dim)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


# ---------------------------------------------------------------- acceptance reporting

SUITE_LIMIT = 60.0
_session = {}


def pytest_sessionstart(session):
    import time

    _session["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    import time

    # criterion 10 (runtime half): only meaningful for a full run
    if session.config.args and any("::" in a or a.endswith(".py") for a in session.config.args):
        return
    elapsed = time.perf_counter() - _session["start"]
    ok = elapsed < SUITE_LIMIT
    line = (f"[acceptance 10] {'PASS' if ok else 'FAIL'}: full suite ran in {elapsed:.1f} s "
            f"(limit {SUITE_LIMIT:.0f} s)")
    tr = session.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.ensure_newline()
        tr.write_line(line)
    else:
        print(line)
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert."""

    def emit(number, title, checks):
        failed = [msg for ok, msg in checks if not ok]
        status = "FAIL" if failed else "PASS"
        with capsys.disabled():
            print(f"\n[acceptance {number}] {status}: {title}"
                  + ("" if not failed else " | " + "; ".join(failed[:5])))
        assert not failed, failed

    return emit
