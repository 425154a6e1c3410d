"""Kernel backend selection.

The hot kernels (injective-map counting/search and the canonical-form bit
search) exist twice: a compiled Cython extension ``_fastcore`` and the pure
Python module ``_purecore``.  The compiled one is used when it imported
cleanly and ``TURANTREE_PURE`` is not set; everything else in the package
goes through this module and never notices which backend is active.

``iter_maps`` (full enumeration with per-map Python objects) is pure-only:
its consumers do per-map work in Python anyway.
"""

from __future__ import annotations

import os

from . import _purecore

try:
    from . import _fastcore  # type: ignore[attr-defined]
except ImportError:  # compiled extension absent; pure fallback
    _fastcore = None

_FORCE_PURE = os.environ.get("TURANTREE_PURE", "") not in ("", "0")

if _fastcore is not None and not _FORCE_PURE:
    BACKEND = "cython"
    count_maps = _fastcore.count_maps
    find_map = _fastcore.find_map
    canonical_bits = _fastcore.canonical_bits
else:
    BACKEND = "python"
    count_maps = _purecore.count_maps
    find_map = _purecore.find_map
    canonical_bits = _purecore.canonical_bits

iter_maps = _purecore.iter_maps


def active_backend() -> str:
    """Name of the kernel backend in use: 'cython' or 'python'."""
    return BACKEND


def compiled_available() -> bool:
    return _fastcore is not None
