"""External difference families over finite groups: construction,
verification, transformation, search, and export to optical orthogonal
codes and shift-invariant protocol sequences."""

from .differences import (Certificate, PairShape, certify, classify_family,
                          classify_pair, external_difference,
                          internal_difference, merged_pair_check)
from .errors import (CapacityError, ExportError, GroupStructureError,
                     IntegrityError, ParameterError, UsageError)
from .families import Declared, Family, GMultiset, Provenance
from .groups import (Cyclic, Dihedral, Group, GroupSpec, Product, Quaternion,
                     Subgroup, Table, all_subgroups_of_order, build_group,
                     coset, coset_union, is_partition, product_set,
                     subgroup_generated)
from .sequences import (correlation, correlation_profile, from_sequence,
                        to_sequence)

__all__ = [
    "Certificate", "PairShape", "certify", "classify_family", "classify_pair",
    "external_difference", "internal_difference", "merged_pair_check",
    "CapacityError", "ExportError", "GroupStructureError", "IntegrityError",
    "ParameterError", "UsageError",
    "Declared", "Family", "GMultiset", "Provenance",
    "Cyclic", "Dihedral", "Group", "GroupSpec", "Product", "Quaternion",
    "Subgroup", "Table", "all_subgroups_of_order", "build_group", "coset",
    "coset_union", "is_partition", "product_set", "subgroup_generated",
    "correlation", "correlation_profile", "from_sequence", "to_sequence",
]
