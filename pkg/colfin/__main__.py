import sys

from colfin.cli import main

sys.exit(main())
