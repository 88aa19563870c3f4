from eqgen.cli import main
import sys

sys.exit(main())
