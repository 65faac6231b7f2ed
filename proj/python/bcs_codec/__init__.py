"""Block compressive-sensing measurement codec."""

from ._core import (
    BcsError,
    FormatError,
    IoError,
    TruncatedError,
    UsageError,
    decode,
    default_grid,
    encode,
    evaluate_point,
    generate_matrix,
    measurements_for_subrate,
    read_pgm,
    significance_profile,
    write_pgm,
    zero_order_entropy,
)

__all__ = [
    "BcsError",
    "FormatError",
    "IoError",
    "TruncatedError",
    "UsageError",
    "decode",
    "default_grid",
    "encode",
    "evaluate_point",
    "generate_matrix",
    "measurements_for_subrate",
    "read_pgm",
    "significance_profile",
    "write_pgm",
    "zero_order_entropy",
]
