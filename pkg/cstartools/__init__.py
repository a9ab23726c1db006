"""cstartools

Python package to compute with finite-dimensional C*-algebras: spectra and
functional calculus of matrices, GNS representations, block decompositions,
group algebras and discrete crossed products, the discrete imprimitivity
bimodule, and K_0 of finite-dimensional and AF algebras.
"""

from . import matcore
from . import calculus
from . import algebra
from . import gns
from . import groups
from . import crossed
from . import ktheory
from . import morita
from . import cli
from . import dummy_alg
