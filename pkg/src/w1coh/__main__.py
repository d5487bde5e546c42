import sys

from w1coh.cli import main

sys.exit(main())
