"""
chromatic-forge — exact chromatic and orbital chromatic polynomials.

Compute chromatic polynomials and orbit-counting polynomials of small graphs
under automorphism groups, isolate their real roots exactly, and build graphs
whose orbital chromatic roots exceed every chromatic root.
"""

from chromatic_forge.__version__ import __version__

__all__ = ["__version__"]
