import sys

from skelmax.cli import main


sys.exit(main())
