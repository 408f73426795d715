"""Pseudo-spectral laboratory for 2D incompressible flow with horizontal
fractional dissipation, plus the measurement harness that checks observed
anisotropic decay rates and a battery of numerically certified inequalities.
"""

__version__ = "0.1.0"
