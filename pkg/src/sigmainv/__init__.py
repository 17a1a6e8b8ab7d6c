"""Exact and high-precision computation of canonical conformal invariants.

Submodules: ``closedform``, ``lattice``, ``invariants``, ``flattorus``,
``euclid3``, ``harmonics``, ``elliptic3``, ``kummer``, ``report`` and ``cli``.
"""

__version__ = "0.1.0"
