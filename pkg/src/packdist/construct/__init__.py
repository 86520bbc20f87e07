"""Block-pattern constructions for D(1, t)."""

from .patterns import (
    ConstructionError,
    ConstructionParams,
    CyclicConflict,
    DomainError,
    MetaPattern,
    MetaVerdict,
    Pattern,
    PatternVerdict,
    SeparationRow,
    check_meta,
    check_pattern_cyclic,
)
from .odd import (
    InfeasibleShuffle,
    ShuffleSpec,
    build_29,
    build_40,
    build_86,
    meta_29,
    meta_40,
    meta_86,
    shuffle,
)
from .even import AuxColoringSpec, aux_path_coloring, build_even, even_base, verify_lift
from .select import FAMILIES, Built, construct, odd_meta, resolve_family
