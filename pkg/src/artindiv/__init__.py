"""Local L-factor divisibility for induced characters of finite groups and number fields."""

from .algebra import CycloElem, LocalFactor, RootOfUnity, localfactor_divides, parse_local_factor
from .artin import (
    SubgroupCharacter,
    character_table,
    gassmann_equivalent,
    induced_local_factor,
    is_subrep,
    property_1,
    property_2,
    property_3,
    property_4,
)
from .errors import ArtinDivError, CapExceeded
from .fpgroup import parse_presentation, regular_rep, todd_coxeter
from .numfield import NumberFieldSpec, splitting_type, zeta_divides, zeta_local_factor
from .permgroup import FinGroup, Permutation, group_from_generators, subgroup, symmetric_group

__all__ = [
    "ArtinDivError", "CapExceeded", "CycloElem", "FinGroup", "LocalFactor", "NumberFieldSpec", "Permutation",
    "RootOfUnity", "SubgroupCharacter", "character_table", "gassmann_equivalent", "group_from_generators",
    "induced_local_factor", "is_subrep", "localfactor_divides", "parse_local_factor", "parse_presentation",
    "property_1", "property_2", "property_3", "property_4", "regular_rep", "splitting_type", "subgroup",
    "symmetric_group", "todd_coxeter", "zeta_divides", "zeta_local_factor",
]
__version__ = "0.1.0"
