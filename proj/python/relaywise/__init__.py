"""Relay power allocation toolkit.

Water-filling power allocators for RDF/NDF/AF/CF relaying, hybrid NDF/CF
strategy selection, brute-force verification oracles, and scenario I/O.
The implementation lives in the compiled module ``_relaywise``.
"""

try:
    from ._relaywise import *  # noqa: F401,F403
    from ._relaywise import __doc__ as _core_doc
except ImportError:
    # build-tree layout: the compiled module sits next to this package on
    # sys.path instead of inside it
    from _relaywise import *  # noqa: F401,F403
    from _relaywise import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
