"""
Allow running the CLI as a module: python -m sptree
"""
from sptree.cli import main

if __name__ == '__main__':
    main()
