"""Recompute the small-D table: verify bundled colorings, evaluate the density bounds.

    python demos/table_rows.py            # no searches, a few seconds
    python demos/table_rows.py --search   # also run the finite searches (tens of minutes)
"""

import sys

from packdist.table1 import reproduce_table1

for rep in reproduce_table1(searches="--search" in sys.argv):
    print(rep.line())
