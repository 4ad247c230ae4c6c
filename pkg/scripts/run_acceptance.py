#!/usr/bin/env python3
"""Run every verification suite at full scale and print the JSON report.

Equivalent to ``dilators suite all --bound full --seed 42 --family
fixtures/family3.json`` from the repository root.
"""

import pathlib
import sys

from dilators.cli import run

ROOT = pathlib.Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(run([
        "suite", "all", "--bound", "full", "--seed", "42",
        "--family", str(ROOT / "fixtures" / "family3.json"),
    ]))
