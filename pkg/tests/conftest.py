from __future__ import annotations

import os
import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def geng_path() -> str | None:
    """nauty ``geng`` from $SZW_GENG, PATH or /root/tools, if present."""
    for candidate in (os.environ.get("SZW_GENG"), shutil.which("geng"), "/root/tools/geng"):
        if candidate and os.access(candidate, os.X_OK):
            return candidate
    return None


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
