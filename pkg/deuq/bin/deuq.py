#!/usr/bin/env python
"""Runs the deuq command line from a source checkout.

Usage:
    python deuq/bin/deuq.py search -c config.json -o out/
    python deuq/bin/deuq.py select -i out/ -k 5
    python deuq/bin/deuq.py eval -i out/ --split test
    python deuq/bin/deuq.py export-curves -i out/ --points 400
"""

import sys

from deuq.cli import main

if __name__ == "__main__":
    sys.exit(main())
