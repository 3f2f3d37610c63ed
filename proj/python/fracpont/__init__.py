"""Python bindings for the fracpont fractional optimal control toolkit."""

try:
    from ._fracpont import (
        caputo_left_derivative,
        classical_lq_reference,
        gamma_fn,
        left_frac_integral,
        mittag_leffler,
        right_frac_integral,
        rl_right_derivative,
        solve,
    )
except ImportError:  # in-tree build: extension sits next to the package on sys.path
    from _fracpont import (
        caputo_left_derivative,
        classical_lq_reference,
        gamma_fn,
        left_frac_integral,
        mittag_leffler,
        right_frac_integral,
        rl_right_derivative,
        solve,
    )

__all__ = [
    "caputo_left_derivative",
    "classical_lq_reference",
    "gamma_fn",
    "left_frac_integral",
    "mittag_leffler",
    "right_frac_integral",
    "rl_right_derivative",
    "solve",
]
