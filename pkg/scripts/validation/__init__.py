"""
Validation Scripts

Brute-force oracles and the seeded ensemble that certify the closed forms.
"""
