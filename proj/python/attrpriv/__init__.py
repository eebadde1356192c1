"""Noisy release of statistical queries with attribute-level privacy.

The heavy lifting lives in the compiled extension ``_core``. In an installed
wheel the extension sits inside this package; during in-tree development the
build directory is put on ``sys.path`` instead, so fall back to a top-level
import there.
"""

try:
    from ._core import (  # type: ignore[attr-defined]
        ConfigError,
        IoError,
        approx_max_divergence,
        certify_approximation,
        conditional_count_distribution,
        conditional_count_distribution_param,
        effective_privacy,
        gaussian_inverse_cdf,
        max_divergence,
        normal_cdf,
        release,
        w_infinity,
    )
except ImportError:  # pragma: no cover - dev layout only
    from _core import (  # type: ignore[no-redef]
        ConfigError,
        IoError,
        approx_max_divergence,
        certify_approximation,
        conditional_count_distribution,
        conditional_count_distribution_param,
        effective_privacy,
        gaussian_inverse_cdf,
        max_divergence,
        normal_cdf,
        release,
        w_infinity,
    )

__all__ = [
    "ConfigError",
    "IoError",
    "approx_max_divergence",
    "certify_approximation",
    "conditional_count_distribution",
    "conditional_count_distribution_param",
    "effective_privacy",
    "gaussian_inverse_cdf",
    "max_divergence",
    "normal_cdf",
    "release",
    "w_infinity",
]

__version__ = "0.1.0"
