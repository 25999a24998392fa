"""
spinhiggs: numerical toolkit for the spin-extended SL(2) top, the spin
Calogero–Moser pair and the extended rational Gaudin chain.
"""

__version__ = "0.1.0"
