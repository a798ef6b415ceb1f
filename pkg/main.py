# ==================== MAIN APPLICATION ====================
# File: main.py

import sys

from cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
