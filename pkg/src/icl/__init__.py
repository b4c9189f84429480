"""Exact computations with integral closures of ideals and modules over
polynomial rings: Groebner bases, Newton polyhedra, reductions, quadratic
transforms in two variables and Bourbaki ideals."""
from .errors import *  # noqa: F401,F403
from .poly import Field, MonomialOrder, Polynomial, Ring, GREVLEX, LEX, QQ  # noqa: F401
from .groebner import Ideal  # noqa: F401
from .monomial import MonomialIdeal  # noqa: F401
from .bourbaki import FModule  # noqa: F401

__version__ = "0.1.0"
