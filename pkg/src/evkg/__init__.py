"""EVKG: an electric-vehicle knowledge-graph toolkit.

Builds an RDF graph of EV registrations, charging stations, and the power
transmission network from CSV inputs, pre-materializes topological relations
between features and zip code areas, and answers questions over the result
with a built-in SPARQL-subset engine.
"""

from .graph import Graph
from .terms import BlankNode, Iri, Literal, PrefixTable, Triple, default_prefixes

__version__ = "0.1.0"

__all__ = [
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "PrefixTable",
    "Triple",
    "default_prefixes",
    "__version__",
]
