"""Hot numeric kernels: compiled core with a numpy fallback.

Two interchangeable implementations exist:

* ``phaseneuron.kernels._compiled`` -- Cython extension, built by setup.py
  (optional; the package installs fine without it).
* ``phaseneuron.kernels._numpy``    -- vectorized numpy fallback.

The import below picks the compiled one when present.  Set the
PHASENEURON_KERNELS environment variable to ``numpy`` or ``compiled`` to
force a backend (``compiled`` raises if the extension is missing);
``auto`` or unset keeps the default behaviour.

All four kernels share one calling convention.  Gate kernels mutate a
C-contiguous complex128 amplitude buffer in place and select basis indices
by bitmask: ``target_mask`` is the target qubit's bit, ``on_mask`` the OR
of control bits that must be 1, ``off_mask`` the OR of control bits that
must be 0.
"""

import os

_requested = os.environ.get("PHASENEURON_KERNELS", "auto").strip().lower()

if _requested in ("", "auto", "compiled"):
    try:
        from . import _compiled as _impl

        _BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "PHASENEURON_KERNELS=compiled but the extension is not built; "
                "run 'python setup.py build_ext --inplace' or reinstall"
            ) from None
        from . import _numpy as _impl

        _BACKEND = "numpy"
elif _requested in ("numpy", "python"):
    from . import _numpy as _impl

    _BACKEND = "numpy"
else:
    raise ValueError(
        f"PHASENEURON_KERNELS={_requested!r} not understood "
        "(expected auto, compiled, or numpy)"
    )

apply_hadamard = _impl.apply_hadamard
apply_pauli_x = _impl.apply_pauli_x
apply_phase_shift = _impl.apply_phase_shift
pairwise_cos_sum = _impl.pairwise_cos_sum


def backend_name():
    """Which kernel implementation was selected at import: "compiled" or "numpy"."""
    return _BACKEND
