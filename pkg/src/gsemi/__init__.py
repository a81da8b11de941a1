"""Good semigroups of N^s and the combinatorics of algebroid curve singularities.

The package is organized bottom-up:

- :mod:`gsemi.lattice` -- vectors of ``int`` with the partial orders used
  throughout, plus boxes and iteration helpers.
- :mod:`gsemi.semigroup` -- the ``GoodSemigroup`` representation (branches,
  conductor, small elements), axiom validation, and the singularity indices
  alpha / gamma / m / r / n / d.
- :mod:`gsemi.ideals` -- relative ideals, the canonical ideal, the distance
  function between ideals, and the Gorenstein / Kunz / near-Gorenstein
  classification.
- :mod:`gsemi.noether` -- saturated chains in the sumset of the truncated
  canonical ideal with itself: an exhaustive layered search and a constructive
  recipe, each producing independently re-checkable certificates.
- :mod:`gsemi.ingest` -- exact linear algebra over Q or GF(p) that computes
  the value semigroup of a parametrized curve germ from its branch power
  series.
- :mod:`gsemi.service` / :mod:`gsemi.cli` -- a small FastAPI wrapper around
  the above and a command line client for it.
"""

from gsemi.lattice import OrderMode, Vec
from gsemi.semigroup import GoodSemigroup, SemigroupIndices, ValidationReport
from gsemi.ideals import RelativeIdeal, canonical_ideal, classify, distance
from gsemi.noether import ChainCertificate, NoetherReport, noether_check
from gsemi.ingest import (
    CurvePresentation,
    IngestError,
    compute_value_semigroup,
    ring_colengths,
    subalgebra_closure,
    value_membership,
)

__version__ = "0.1.0"

__all__ = [
    "OrderMode",
    "Vec",
    "GoodSemigroup",
    "SemigroupIndices",
    "ValidationReport",
    "RelativeIdeal",
    "canonical_ideal",
    "classify",
    "distance",
    "ChainCertificate",
    "NoetherReport",
    "noether_check",
    "CurvePresentation",
    "IngestError",
    "compute_value_semigroup",
    "ring_colengths",
    "subalgebra_closure",
    "value_membership",
    "__version__",
]
