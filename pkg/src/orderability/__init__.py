"""Orderability of groups arising from 3-manifolds.

Exact word-problem oracles, Smith normal form homology, Magnus and surface
bi-orders, Seifert and Sol classifiers, a positive-cone search that produces
checkable non-orderability certificates, and figure-eight SL(2, R) numerics.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("orderability")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"
