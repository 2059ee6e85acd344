"""
treesplit command-line entry point

    python main.py split tree.txt --epsilon 0.5
"""

from treesplit.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
