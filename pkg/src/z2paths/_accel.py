"""Kernel selection: the compiled extension when it imports, else pure Python."""
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNELS = {"python": _pykernels}
if _ckernels is not None:
    KERNELS["cython"] = _ckernels

DEFAULT = "cython" if _ckernels is not None else "python"
_active = DEFAULT


def active() -> str:
    return _active


def use(name: str) -> None:
    """Switch the kernel used by counting (``"cython"`` or ``"python"``)."""
    global _active
    if name not in KERNELS:
        raise ValueError(f"kernel {name!r} unavailable; have {sorted(KERNELS)}")
    _active = name


def get(name: str | None = None):
    return KERNELS[name or _active]
