"""Exact-arithmetic toolkit for finite 2-groups.

A finite 2-group is presented skeletally by a quadruple: a finite base group,
a finite abelian coefficient group, an action of the former on the latter,
and a degree-3 cochain (the associator) whose cocycle condition is the
pentagon identity.  This package validates such data, builds the associated
multi-fusion category (simples, fusion rules, associator scalars, block
decomposition), computes group cohomology exactly via integer Smith normal
form, and provides exact cyclotomic arithmetic for the Fourier idempotents of
a finite abelian group algebra.
"""

__version__ = "0.1.0"

from .cohomology import (
    Cochain,
    CocycleCheck,
    CohomologyGroup,
    QZCochain,
    TorusCohomology,
    coboundary_witness,
    cochain_from_function,
    cohomologous,
    cohomology,
    cohomology_torus,
    differential,
    is_cocycle,
    qz_cochain_from_function,
    qz_coboundary_witness,
    qz_cohomologous,
    qz_differential,
    qz_is_cocycle,
    split_symmetric_2cocycle,
    symmetry_violation,
    zero_cochain,
    zero_qz_cochain,
)
from .cyclotomic import CyclotomicRational, cyclotomic_polynomial, root_of_unity
from .errors import (
    GroupValidationError,
    InvalidAction,
    MismatchedData,
    MismatchedPostnikovData,
    NoIdentity,
    NoInverse,
    NonAbelianBase,
    NotACocycle,
    NotAssociative,
    NotSymmetric,
    OperationCancelled,
    PentagonViolation,
    SizeBound,
    SpecFileError,
    ToolkitError,
    UnknownSimple,
    ZeroComposite,
)
from .fusion import (
    FusionSimple,
    MultiFusionReport,
    OrbitBlock,
    PointedSummand,
    associator_scalar,
    decompose,
    diagonal_image,
    dual_simple,
    fuse,
    hom_component,
    pentagon_check,
    simples,
    unit_summands,
)
from .groupalgebra import (
    GroupAlgebraElement,
    basis_element,
    enumerate_group_likes,
    fourier,
    idempotent,
    inverse_fourier,
    is_group_like,
    unit,
)
from .groups import (
    AbelianGroup,
    Character,
    FiniteGroup,
    GroupAction,
    OrbitDecomposition,
    SubgroupLattice,
    build_action,
    build_group,
    conjugacy_class_count,
    cyclic_group,
    direct_product,
    dual_action,
    dual_group,
    orbit_decomposition,
    subgroup_as_group,
    subgroups,
    trivial_action,
    trivial_group,
)
from .qz import QZ
from .snf import CancelToken, SmithForm, kernel_basis, smith_normal_form, solve_matrix
from .specfile import TwoGroupSpec, parse_spec_text, parse_symmetric_cocycle
from .tworep import TwoRepCount, TwoRepReport, component_count, descriptors, simple_2rep_count
from .twogroup import (
    Equivalence,
    Skeletal2Group,
    TwoGroupMorphism,
    build_2group,
    equivalent_2groups,
)
