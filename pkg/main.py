import sys

from rrdist.cli import main


if __name__ == "__main__":
    sys.exit(main())
