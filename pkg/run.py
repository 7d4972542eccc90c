#!/usr/bin/env python3
"""morphologic - Convenience script for testing

Copyright (c) 2024 morphologic developers
"""
# NOTE: This binary is provided for convenience.  It is nice to be able to run
# the commands from the repository.  Installed copies use the entry_points
# mechanism of setup.py.

import sys

from morphologic.cli import main

sys.exit(main())
