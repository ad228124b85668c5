"""Exact arithmetic and symbolic verification for a singular theta-type
lift on O(2,b) tube domains.

Subpackages and modules:

* :mod:`dnlift.series` -- truncated Laurent series over exact rationals
* :mod:`dnlift.classical` -- level-1 modular forms and modular polynomials
* :mod:`dnlift.powersums` -- the numerator polynomials of sums n^r w^n
* :mod:`dnlift.coeffs` -- scalar coefficient formulas of the operator calculus
* :mod:`dnlift.lift` -- Fourier expansion of the meromorphic lift
* :mod:`dnlift.hilbert` -- pole clearing and tensor decomposition
* :mod:`dnlift.opcalc` -- symbolic Wirtinger calculus and identity suites
* :mod:`dnlift.cli` -- command line front end
"""

__version__ = "0.1.0"
