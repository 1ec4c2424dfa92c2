import sys

from padicelim.cli import main

sys.exit(main())
