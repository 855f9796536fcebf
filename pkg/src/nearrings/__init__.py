"""Finite local nearrings on small p-groups.

Normal-form group arithmetic (pgroup), nearring table verification
(nearring), explicit table constructions (constructions), exhaustive
search for unital nearrings (search), and a command line (cli).
"""

from nearrings.pgroup import (
    CatalogError,
    GroupSpec,
    MalformedElementError,
    add,
    add_table,
    catalog,
    commutator,
    element_order,
    exponent,
    neg,
    scalar_mul,
    subgroup_closure,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogError",
    "GroupSpec",
    "MalformedElementError",
    "add",
    "add_table",
    "catalog",
    "commutator",
    "element_order",
    "exponent",
    "neg",
    "scalar_mul",
    "subgroup_closure",
    "__version__",
]
