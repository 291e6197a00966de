"""Local shtukas, the Carlitz-Tate tower and finite-level Galois images.

Everything is exact arithmetic over finite fields of odd characteristic,
truncated at explicit zeta- and z-precisions.
"""

from .errors import *  # noqa: F401,F403
from .field import (
    FieldElement,
    FieldSpec,
    field_arith,
    field_create,
    field_extension,
    field_from_order,
    frobenius,
    unit_enumerate,
)
from .galois import (
    OpennessReport,
    UnitGroupLevel,
    cyclotomic_char,
    det_criterion,
    openness_report,
    power_image,
    tate_generator_rank_one,
    unit_group,
)
from .series import (
    BaseRingSpec,
    SeriesRing,
    TruncSeries,
    reassemble,
    series_arith,
    series_inv,
    split_by_residue,
    z_minus_zeta_valuation,
)
from .shtuka import (
    LocalShtuka,
    MotiveOverT,
    adjunction_check,
    associate_local_shtuka,
    carlitz,
    load_motive,
    pullback,
    pushforward,
    rank_one_normalize,
    shtuka_dim,
    shtuka_dual,
    shtuka_hom_structure,
    shtuka_tensor,
    trivialize_unit,
)
from .tower import (
    GaloisAction,
    TowerElement,
    TowerSpec,
    galois_apply,
    l_plus,
    tower_arith,
    tower_build,
    tower_frobenius,
    tower_inv,
    tower_valuation,
)

__version__ = "0.1.0"
