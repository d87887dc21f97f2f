"""Finite-group toolkit: subgroup lattices, p-local commensurability and
containment graphs, component classification, and claim verification."""

from .constructions import (
    BuiltGroup,
    GroupSpec,
    abelian,
    bs,
    construct,
    construct_detailed,
    cyclic,
    dihedral,
    direct,
    p2q,
    parse_group_spec,
    predicted_order,
    spec_from_doc,
    spec_name,
    spec_to_doc,
    sym,
)
from .errors import (
    CacheMismatch,
    CommGraphError,
    InvalidGenerator,
    InvalidSpec,
    LatticeCapExceeded,
    NotConnected,
    NotContained,
    NotFound,
    NotNilpotent,
    NotNormal,
    OracleScaleExceeded,
    OrderCapExceeded,
    ParentMismatch,
    SpecSyntaxError,
)
from .graphs import (
    KIND_COMMENSURABILITY,
    KIND_CONTAINMENT,
    CommGraph,
    ComponentReport,
    all_geodesics,
    all_simple_paths,
    build_graph,
    classify_component,
    commensurability_exponents,
    components_and_diameters,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    DerivedSeries,
    GroupTable,
    StructureFlags,
    SubgroupSet,
    build_group_from_matrices,
    build_group_from_permutations,
    build_group_from_table,
    conjugate_subgroup,
    derived_series,
    element_order,
    factorize,
    full_subgroup,
    index_of,
    intersect,
    is_nilpotent_subgroup,
    is_normal,
    is_prime,
    normal_core,
    p_power_exponent,
    p_prime_complement,
    product_set,
    structure_flags,
    subgroup_closure,
    sylow_subgroup,
    trivial_subgroup,
)
from .lattice import (
    Lattice,
    enumerate_subgroups,
    locate_subgroup,
    oracle_enumerate_subgroups,
)
from .verify import (
    CheckRecord,
    CorpusMember,
    VerdictReport,
    default_corpus,
    run_all,
    run_suite,
    verify_cd_inequality,
    verify_construction,
    verify_diameter_bounds,
    verify_lemma_suite,
    verify_p2q,
    verify_sym4_geodesics,
    verify_totaldisc,
)

__version__ = "0.1.0"
