"""Kernel selection: compiled extension if available, NumPy otherwise.

Set ``FRAN_TRADEOFF_KERNEL=numpy`` (or ``cython``) to force a choice;
forcing ``cython`` when the extension is missing is an error, while the
default silently falls back to NumPy.
"""

from __future__ import annotations

import os

from . import _kernel_py

try:
    from . import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

__all__ = ["active_kernel_name", "available_kernels", "get_kernel"]


def available_kernels() -> tuple[str, ...]:
    names = ["numpy"]
    if _kernel_c is not None:
        names.insert(0, "cython")
    return tuple(names)


def get_kernel(name: str | None = None):
    """Kernel module by name; None resolves the environment/default choice."""
    if name is None:
        name = os.environ.get("FRAN_TRADEOFF_KERNEL")
    if name is None:
        return _kernel_c if _kernel_c is not None else _kernel_py
    if name == "numpy":
        return _kernel_py
    if name == "cython":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel requested but not built")
        return _kernel_c
    raise ValueError(f"unknown kernel '{name}'")


def active_kernel_name() -> str:
    """Name of the kernel the default resolution currently selects."""
    return get_kernel().KERNEL_NAME
