from .convergence import OrderFit, fit_order
from .duality import (DipoleLandauParams, StandardLandauParams, charge_to_dipole, dipole_to_charge,
                      duality_map, level_separation)
from .ladder import ladder_check, orbit_center_check
from .levels import LevelCluster, cluster_levels, degeneracy_estimate, level_offset
from .susy import FockAlgebra, build_fock_algebra, susy_check
