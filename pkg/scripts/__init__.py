"""
Larmor Otto Engine

Exact spin-1/2 quantum Otto cycle driven by a rotating magnetic field,
with numerical oracles for every closed form.
"""

__version__ = "1.0.0"
