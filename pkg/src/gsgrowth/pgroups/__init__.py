from .group import (FiniteGroup, GroupHom, Subgroup, canonical_sort, log_p, normal_closure, prime_factors, prime_power,
                    product_of_normals, quotient, subgroup_as_group, subgroup_generated)
from .builders import (alternating, build, cyclic, dihedral, direct_product, elementary_abelian, free_cmea,
                       lamplighter_quotient, library, permutation_group, quaternion, symmetric, trivial_group)
from .structure import cmea_rank, d_min, d_min_p, d_normal, frattini_p, max_p_quotient, phi_sub
from .lattice import AutGroup, all_subgroups, automorphisms, characteristic_subgroups, normal_subgroups
