"""Kernel backend selection.

The compiled extension is preferred when it was built; otherwise the
numpy fallback takes over transparently. ``COMPILED`` reports which one
is active. ``benchmarks/bench_kernels.py`` compares the two.
"""

try:
    from . import _core as kernels

    COMPILED = True
except ImportError:  # extension not built on this platform
    from . import _core_py as kernels  # type: ignore[no-redef]

    COMPILED = False

device_torque_curve = kernels.device_torque_curve
balance_error_curve = kernels.balance_error_curve


def backend_name() -> str:
    return "compiled" if COMPILED else "numpy"
