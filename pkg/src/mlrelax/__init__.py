"""Exact linear relaxations of multilinear sets.

Core layers:

* :mod:`mlrelax.model` -- hypergraphs, instances, brute-force 0/1 oracles
* :mod:`mlrelax.polyhedra` -- rational inequality systems, LP, projection
* :mod:`mlrelax.relaxations` -- standard and flower relaxations, separation
* :mod:`mlrelax.linearization` -- recursive linearization digraphs
* :mod:`mlrelax.verify` -- machine checks and bound harnesses

The FastAPI service lives in :mod:`mlrelax.service`; the command line
client in :mod:`mlrelax.cli`.
"""

__version__ = "0.1.0"

from .linearization import (  # noqa: E402,F401
    Linearization,
    has_path,
    mccormick_from_flower,
    nonpath_witness,
    project_relaxation,
    relaxation_system,
    standard_linearization,
    validate_linearization,
)
from .model import (  # noqa: E402,F401
    Hypergraph,
    MultilinearInstance,
    integer_optimum,
    ml_vertices,
    multilinear_instance,
    validate_hypergraph,
)
from .polyhedra import (  # noqa: E402,F401
    IneqSystem,
    LinIneq,
    fm_eliminate,
    ineq_system,
    is_member,
    is_valid,
    lin_ineq,
    lp_solve,
    poly_equal,
    remove_redundant,
)
from .relaxations import (  # noqa: E402,F401
    ExtendedFlower,
    enumerate_flowers,
    flower,
    flower_ineq,
    flower_relaxation,
    is_nonredundant,
    separate_flower,
    standard_relaxation,
)
from .verify import (  # noqa: E402,F401
    bound_cutting_plane,
    bound_dynamic_linearization,
    bound_static,
    check_path_lemma,
    check_projection_lemma,
    check_restriction_propositions,
    check_theorem,
)
