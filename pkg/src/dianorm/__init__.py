"""Square norm / diamond norm estimation and saturation certificates for bipartite operators."""
from .bipartite import (
    BipartiteOperator,
    LinearMapRep,
    choi_from_kraus,
    choi_from_map,
    diamond_norm,
    kron,
    lift,
    map_from_choi,
    partial_trace_w,
)
from .certify import (
    HolderReport,
    IteratedHolderReport,
    SaturationCertificate,
    Verdict,
    certify_lower,
    certify_upper,
    gen_cptp_choi,
    gen_upper_saturator,
    holder_saturation,
    iterated_holder,
    norm12_saturation,
)
from .exceptions import (
    DegenerateInputError,
    DianormError,
    DimensionError,
    NotPSDError,
    NumericalFailure,
)
from .linalg import (
    herm_eig,
    matrix_sqrt_psd,
    frobenius_norm,
    nuclear_norm,
    sign_matrix,
    singular_values,
    spectral_norm,
    svd,
)
from .seesaw import (
    SeesawConfig,
    SquareNormResult,
    anchor_values,
    objective,
    sampled_lower_bound,
    square_norm,
    update_a,
    update_b,
)

__version__ = "0.1.0"
