"""Exact Hausdorff, Gromov-Hausdorff and interleaving distances on finite categories."""

from .category import (
    Category,
    Functor,
    NatTrans,
    Report,
    chain_category,
    check_embedding,
    compose_functors,
    identity_functor,
    induced_metric,
    thin_category,
    validate_category,
    validate_functor,
    validate_nat_trans,
    validate_weighted,
)
from .cospan import (
    BoundsExceeded,
    CrossClass,
    DistanceBound,
    EmbeddingPair,
    check_interleaving_extension,
    hausdorff_weight,
    identity_cospan,
    interleaving_distance,
    postcompose_interleaving,
    pushout,
    search_interleaving_extension,
    validate_cospan,
)
from .dynsys import (
    DynSystem,
    ShiftCategory,
    ShiftMorphism,
    check_shift_equivalence,
    lag_future_equivalence,
    search_shift_equivalence,
    shift_compose,
    shift_cospan,
)
from .futequiv import (
    FutMorphism,
    FutureEquivalence,
    FutWeight,
    check_fut_interleaving,
    compose_future_equivalences,
    future_equivalence_distance,
    future_equivalence_weight,
    phi_comparison,
    phi_morphism,
    phi_object,
    validate_fut_morphism,
    validate_future_equivalence,
)
from .metric import (
    EmptySubsetError,
    LawvereSpace,
    hausdorff,
    hausdorff_via_offsets,
    offset,
    offset_interleaving_distance,
    sym_hausdorff,
    underlying_category,
    validate_lawvere,
)
from .weights import INF, ZERO, Weight
from .zoo import (
    Grid,
    GridModule,
    grid_interleaving_category,
    grid_line_category,
    interval_module,
    standard_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
