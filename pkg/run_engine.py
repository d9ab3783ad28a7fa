#!/usr/bin/env python3
"""
Rotating-Field Otto Engine
Single front door for the cycle, sweep, stroke and validate subcommands.

    python run_engine.py cycle --lambda 0.5
    python run_engine.py sweep --lambda-grid 0:1:201 --alpha-list 0,0.7853981633974483 --out data/outputs/sweep.csv
    python run_engine.py stroke --lambda 0.5 --stroke expansion
    python run_engine.py validate
"""

import sys

from scripts.analysis.commands import main

if __name__ == "__main__":
    sys.exit(main())
