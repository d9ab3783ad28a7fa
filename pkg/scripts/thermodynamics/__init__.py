"""
Thermodynamics Scripts

First-law bookkeeping of the rotating strokes, the four-stroke Otto cycle and
parameter sweeps over it.
"""
