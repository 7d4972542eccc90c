"""morphologic - Morpho-logic over finite toposes

Copyright (c) 2024 morphologic developers
"""

VERSION = (1, 0, 0)
