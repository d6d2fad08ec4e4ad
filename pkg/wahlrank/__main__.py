import sys

from wahlrank.cli import main

sys.exit(main())
