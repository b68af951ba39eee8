"""shiftspec: weighted shifts, moment-matrix positivity, and spectral pictures.

Library layout:
    weights     one-variable shifts, moments, norms, left-inverse norms
    measures    atomic / registered-density measures, marginals, slices
    lattice     two-variable weight diagrams and lattice moments
    positivity  moment matrices, PSD tests, hyponormality verdicts, searches
    spectra     exact Reinhardt spectral pictures, boundaries, probes
    oracle      independent brute-force numerics backing derived values
    cli         the `shiftspec` command
"""

from .errors import (
    ConvergenceError,
    FamilyMismatchError,
    IntegrityError,
    LeftSpectrumAtResolutionError,
    NegativeMassError,
    NormGapError,
    QuadratureError,
    ShiftspecError,
    SliceUndefinedError,
)
from .lattice import (
    EPS1,
    EPS2,
    WeightDiagram2D,
    check_commutativity,
    compactness_witness,
    diagram_from_json,
    diagram_to_json,
    gamma2d,
    horizontal_slice,
    important_column,
    make_adhoc,
    make_example_bergman,
    make_example_exof1atom,
    make_example_stair,
    make_thm_compactper,
    make_thm_important,
    make_thm_khypo,
    vertical_slice,
)
from .measures import (
    AtomicMeasure1D,
    AtomicMeasure2D,
    DensityMeasure1D,
    atomic1d,
    atomic2d,
    delta,
    marginal_x,
    marginal_y,
    measure_moment,
    mutually_abs_continuous,
    shift_from_measure,
    slice_measure,
    two_atom_measure,
)
from .positivity import (
    MomentMatrix,
    PositivityVerdict,
    find_max_y0,
    hankel_matrix,
    is_hyponormal_pair,
    is_k_hyponormal,
    is_psd,
    log_convex_ells,
    remark_measure_decomposition,
    search_thm_important_params,
    shifted_psd_test,
    two_var_moment_matrix,
)
from .spectra import (
    GeometricFamily,
    Interval,
    PictureSet,
    Point,
    SpectralPicture,
    component_count,
    kernel_convergence_probe,
    left_identity_check,
    outer_boundary,
    picture_1var,
    picture_example_exof1atom,
    picture_for,
    picture_thm_compactper,
    picture_thm_important,
    picture_thm_khypo,
    same_picture,
    slice_norm_necessary_check,
)
from .weights import (
    Moments1D,
    UnilateralShift,
    WeightSequence,
    arcsine_shift,
    canonical_left_inverse_norm,
    is_hyponormal_1d,
    make_bergman_like,
    make_two_atom_shift,
    moments,
    norm,
    shift,
    unweighted_shift,
)

__version__ = "0.1.0"
