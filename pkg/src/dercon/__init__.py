"""dercon: exact-arithmetic homological algebra over quivers.

Projective resolutions over presented path algebras, endomorphism dgas,
Ext-algebras with their A-infinity minimal models (Merkulov transfer,
Massey products), Koszul duals via the bar construction, and Ginzburg dgas
of superpotentials.  All arithmetic is exact over Q.
"""

__version__ = "0.1.0"
