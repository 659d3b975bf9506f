import sys

from gridresolve.cli import main

sys.exit(main())
