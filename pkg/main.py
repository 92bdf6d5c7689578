"""
critgroup - critical groups of modules over finite-dimensional Hopf algebras
Command-line entry point
"""

import sys

from critgroup.cli.router import main

if __name__ == "__main__":
    sys.exit(main())
