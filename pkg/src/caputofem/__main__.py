import sys

from caputofem.cli import main

sys.exit(main())
