#!/usr/bin/env python3
"""
spinhiggs launcher.

Run from anywhere:
  python scripts/spinhiggs.py check --seed 7
  python scripts/spinhiggs.py dims --type A1 --genus 1 --marked 1

Same flags and exit codes as `python -m src.main`.
"""

import os
import sys

# Allow importing from src when run as script
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
