import sys

from forbconf.cli import main

sys.exit(main())
