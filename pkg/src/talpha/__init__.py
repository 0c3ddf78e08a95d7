"""talpha: exact tree decompositions with small per-bag clique covers.

A library for the class of (C4, diamond, theta, pyramid, prism, even
wheel)-free graphs: forbidden-structure detection with verifiable
witnesses, clique-cutset and star-cutset machinery, canonical star
separations and central bags, balanced-separator engines, tree
decompositions with bounded bag clique cover, and maximum weight
independent set solving over them. All weight arithmetic is exact
rational; all searches are deterministic.
"""

from .graph import (
    Graph,
    Separation,
    WeightFunction,
    components,
    is_separation,
    maximal_clique_extension,
    neighborhood_clique_partition,
    read_graph,
    read_weights,
    write_graph,
    write_weights,
)
from .structures import (
    UNKNOWN,
    Witness,
    check_class,
    classify_minimal_connector,
    enumerate_holes,
    find_structure,
    find_wheel,
    hub_set,
)

__version__ = "0.1.0"
