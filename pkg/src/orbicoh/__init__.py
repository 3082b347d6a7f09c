"""Ext over orbit categories, relative group cohomology and the E2 page of the
associated spectral sequence, over prime fields."""

from .errors import OrbicohError
from .groups import FiniteGroup, Subgroup, SubgroupFamily, builtin_group, family_closure, make_family
from .homalg import ext_dims, free_hull, induced_ext_map, lift_chain_map, resolve
from .modules import GammaHom, GammaModule, GroupRep, constant_module, fixed_point_module, free_module, interval_module
from .orbit import OrbitCategory, build_orbit_category
from .relcoh import periodicity_report, relative_cohomology_dims, rg_side_pipeline
from .spectral import e2_page

__version__ = "0.1.0"
