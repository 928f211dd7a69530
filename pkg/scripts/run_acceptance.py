"""Run the acceptance suite and print one line per criterion.

Exit status is pytest's: nonzero when any criterion fails.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-q", "-rN", "-p", "no:cacheprovider",
                          "--rootdir", str(ROOT)] + sys.argv[1:]))
