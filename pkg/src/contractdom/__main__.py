import sys

from contractdom.cli import main

sys.exit(main())
