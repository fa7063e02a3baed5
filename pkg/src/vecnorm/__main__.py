import sys

from vecnorm.cli import main

sys.exit(main())
