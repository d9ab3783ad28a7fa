"""
Physics Scripts

Two-level algebra, the rotating-field drive and density matrices.
"""
