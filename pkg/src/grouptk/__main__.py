import sys

from grouptk.cli import main

sys.exit(main())
