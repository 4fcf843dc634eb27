"""Soft thresholding of greyscale document images.

Images are 2-D ``numpy.uint8`` arrays indexed ``[row, column]``; 0 is black
and 255 is white.
"""

from ._core import (
    DegenerateHistogram,
    DimensionMismatch,
    Error,
    InvalidWindow,
    NoWhiteClass,
    ParameterError,
    PgmError,
    band_convert,
    band_from_alpha,
    build_lut,
    erf,
    hard_threshold,
    histogram,
    local_soft_threshold,
    max_filter,
    max_filter_naive,
    mean_white,
    min_filter,
    min_filter_naive,
    normal_quantile,
    otsu_threshold,
    read_pgm,
    shading_subtraction,
    soft_shading_subtraction,
    soft_threshold,
    soft_threshold_detailed,
    subtract_clamped,
    transfer_value,
    white_class_vw,
    write_pgm,
    z_alpha,
)

__all__ = [name for name in dir() if not name.startswith("_")]
