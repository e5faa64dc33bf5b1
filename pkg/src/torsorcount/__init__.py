"""Counting points of bounded anticanonical height on split toric varieties
over imaginary quadratic fields, via integral points on twisted universal
torsors, and the matching leading-constant prediction."""

from .fan import (
    Fan,
    FanError,
    PicardData,
    SigmaTwist,
    ValidationReport,
    check_globally_generated,
    f_invariant,
    fan_from_dict,
    load_fan,
    picard_basis,
    sigma_twist,
    validate_fan,
)
from .library import FanLibraryEntry, get_fan, library
from .moebius import (
    KappaEstimate,
    LocalMoebiusTable,
    build_local_table,
    kappa,
    local_factor,
    mu,
    stream_mu_support,
    torsor_count_mod_q,
)
from .peyre import (
    EffDualPolytope,
    SymbolicConstant,
    alpha,
    alpha_peyre,
    leading_constant,
    peyre_components,
    predicted_count,
)
from .quadfield import (
    Ideal,
    LatticePartition,
    QuadField,
    abs_inf,
    enumerate_disc,
    make_field,
    reduce_basis,
    six_cone_partition,
)
from .torsor import (
    CountReport,
    TorsorPoint,
    TwistContext,
    count_points,
    count_points_moebius,
    enumerate_A,
    enumerate_C,
    height_sup,
    make_context,
    projective_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "CountReport",
    "EffDualPolytope",
    "Fan",
    "FanError",
    "FanLibraryEntry",
    "Ideal",
    "KappaEstimate",
    "LatticePartition",
    "LocalMoebiusTable",
    "PicardData",
    "QuadField",
    "SigmaTwist",
    "SymbolicConstant",
    "TorsorPoint",
    "TwistContext",
    "ValidationReport",
    "__version__",
    "abs_inf",
    "alpha",
    "alpha_peyre",
    "build_local_table",
    "check_globally_generated",
    "count_points",
    "count_points_moebius",
    "enumerate_A",
    "enumerate_C",
    "enumerate_disc",
    "f_invariant",
    "fan_from_dict",
    "get_fan",
    "height_sup",
    "kappa",
    "leading_constant",
    "library",
    "load_fan",
    "local_factor",
    "make_context",
    "make_field",
    "mu",
    "peyre_components",
    "picard_basis",
    "predicted_count",
    "projective_oracle",
    "reduce_basis",
    "sigma_twist",
    "six_cone_partition",
    "stream_mu_support",
    "torsor_count_mod_q",
    "validate_fan",
]
