"""orbcheck: exact and numeric verification of orbifold structure data.

Modules: cyclotomic arithmetic, orbifold atlases, the unitary frame
bundle with Seifert gluings, taut-metric and transverse-Kahler checks,
rational simplicial cohomology with group averaging, and a scenario
driven CLI.
"""

from .errors import OrbcheckError

__version__ = "0.1.0"

__all__ = ["OrbcheckError", "__version__"]
