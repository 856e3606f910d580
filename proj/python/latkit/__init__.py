"""Exact integral lattice computations: discriminant forms, genus symbols,
short vectors, primitive embeddings, wall screening and Vinberg chambers."""

try:
    from . import _latkit as _core
except ImportError:  # dev builds keep the extension next to the build tree
    import _latkit as _core

__all__ = []
for _name in dir(_core):
    if _name.startswith("__"):
        continue
    globals()[_name] = getattr(_core, _name)
    __all__.append(_name)
del _core, _name
