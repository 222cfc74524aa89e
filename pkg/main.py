"""
Metasym - Combinatorial verifier for Coxeter groups and F4 incidence geometry

Entry point for the Metasym command line.
Enumerates finite Coxeter groups, their parabolic double cosets and chamber
systems, and checks incidence-geometric lemmas exhaustively.
"""

import sys

from metasym.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
