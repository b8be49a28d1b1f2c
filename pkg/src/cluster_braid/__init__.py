"""Braid groups of finite weighted quivers with potential, checked by computation.

Coxeter data and exact reflection representations, weighted foldings,
cluster exchange graphs, Garside normal forms, and verification suites
relating cluster braid groups to Artin braid groups.
"""

from .braid import BraidWord, Presentation, presentation_from_wqp, theta_flat, theta_sharp
from .coxeter import CoxeterGraph, classify_finite, reflection_representation, standard_graph
from .exchange import ExchangeGraph, build_ceg, enumerate_polygons
from .folding import Folding, WeightedQuiver, catalog, get_folding
from .garside import ArtinGroup, NormalForm, TorusWord, artin_group

__version__ = "0.1.0"

__all__ = [
    "ArtinGroup",
    "BraidWord",
    "CoxeterGraph",
    "ExchangeGraph",
    "Folding",
    "NormalForm",
    "Presentation",
    "TorusWord",
    "WeightedQuiver",
    "artin_group",
    "build_ceg",
    "catalog",
    "classify_finite",
    "enumerate_polygons",
    "get_folding",
    "presentation_from_wqp",
    "reflection_representation",
    "standard_graph",
    "theta_flat",
    "theta_sharp",
]
