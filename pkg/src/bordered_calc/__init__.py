"""Exact bordered Floer calculations for manifolds with torus boundary.

Modules:

* ``grading``: the noncommutative grading group and its cosets
* ``algebra``: the torus algebra
* ``typed`` / ``typea``: type D decorated graphs and type A operation tables
* ``pairing``: box tensor products, homology and spin^c classes
* ``curves``: immersed curves, mapping classes and pegboard fillings
* ``surgery``: knot complexes, d-invariants and large surgery
* ``gluing``: first homology of gluings along the torus
* ``catalog``: named fixtures
* ``verification`` and ``cli``: end-to-end checks and the command line
"""

__version__ = "0.1.0"
