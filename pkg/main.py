#!/usr/bin/env python3
"""
flagrep - command-line entry point.
"""

import os
import sys

# Add the project root to the path so `src` imports resolve from any cwd
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main


if __name__ == '__main__':
    sys.exit(main())
