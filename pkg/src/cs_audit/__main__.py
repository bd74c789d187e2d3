"""Entry point for running as module with: python -m cs_audit"""
import sys

from cs_audit.main import main

if __name__ == '__main__':
    sys.exit(main())
