"""
Analysis Scripts

Command-line front end, run configuration, CSV output and the plotting
recipes that read sweep CSVs back in.
"""
