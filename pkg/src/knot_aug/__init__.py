"""Exact computations around augmentation varieties of knot contact homology.

Submodules: ``rings`` (coefficient rings), ``freealg`` (free algebra and
endomorphisms), ``braid`` (braid words and their action), ``h0`` (degree-zero
presentation), ``families`` (closed polynomial families), ``augvar``
(finite-field enumeration), ``obstruct`` (rational certificates), ``cli``.
"""

__version__ = "0.1.0"
