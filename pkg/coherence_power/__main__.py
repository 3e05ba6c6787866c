"""Run the command-line interface with ``python -m coherence_power``."""

import sys

from .cli import main

sys.exit(main())
