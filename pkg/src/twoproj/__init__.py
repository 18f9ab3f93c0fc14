"""Two orthogonal projections: lattice operations, CS-decomposition, the
generic-position canonical form, the spectrum of ``p + q`` and the joint
commutant, on real symmetric matrices."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BadGenerator,
    DimensionMismatch,
    EquivalenceViolation,
    GenerationFailure,
    NonConvergence,
    NotGeneric,
    NotInCommutant,
    NotProjection,
    NotPSD,
    NotSymmetric,
    ParseError,
    RankMismatch,
    TwoProjError,
)
from .halmos import (  # noqa: E402
    canonical_form,
    compress_to_commutator,
    cos_sin,
    general_cs,
    generic_cs,
    restricted_cos_sin,
    symmetries_uv,
    symmetry_j,
    symmetry_k,
)
from .projlattice import (  # noqa: E402
    is_generic,
    join,
    marsden,
    meet,
    orthocomplement,
    residuals,
    sixfold,
)
from .matcore import DEFAULT_TOL, Tolerance, carrier, polar, sym_abs, sym_eigen  # noqa: E402
from .spectral import (  # noqa: E402
    commutant_decompose,
    commutant_embed,
    commutant_projection,
    spectrum_sum,
)
