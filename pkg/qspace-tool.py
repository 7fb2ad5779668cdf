#!/usr/bin/env python3
"""
qspace: q-deformed analysis on quantum spaces

Star products, q-translations, q-derivatives, dual pairings, q-exponentials
and Jackson integrals on the Manin plane, the q-deformed Euclidean spaces and
q-Minkowski space, plus the property suites that cross-check them.
"""

import sys
from pathlib import Path

# Add shared utilities to path
sys.path.append(str(Path(__file__).parent / "shared"))

from qspace.cli import main

if __name__ == "__main__":
    sys.exit(main())
