"""Generalized torsion in 0-surgeries on double twist knots ``K_{p,q}``.

Modules: ``words`` (free-group words), ``presentations`` (group presentations
and generator changes), ``permrep`` (permutation quotients and witness search),
``certificates`` (conjugate-product expansions and the matrix identity),
``biorder`` (the explicit bi-order), ``classify`` (homeomorphism of the
surgered manifolds) and ``cli``.
"""

__version__ = "0.1.0"
