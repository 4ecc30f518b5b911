"""Polar group actions on Euclidean space.

Numerical toolkit for linear isometric group actions: orbit tangent
spaces and sections, polarity certificates, isoparametric orbit
decompositions (principal normals, focal hyperplanes, Weyl groups),
and synthesis of invariant hypersurfaces by sweeping section profiles.
"""

try:
    # installed layout: the extension lives inside the package
    from ._polarsweep import *  # noqa: F401,F403
except ImportError:
    # in-tree layout: the extension sits on PYTHONPATH from the build dir
    from _polarsweep import *  # noqa: F401,F403
