#!/usr/bin/env python3
"""Embed the bundled three-element tree family and print the embedding table."""

import pathlib
import sys

from dilators.cli import run

ROOT = pathlib.Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    family = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "fixtures" / "family3.json")
    sys.exit(run(["barind", "demo", "--family", family]))
