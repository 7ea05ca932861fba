"""Markov equivalence and representation for loopless mixed graphs."""

from lmg.classes import (
    ClassMembership, classify, is_ancestral, is_bg, is_dag, is_mag, is_maximal, is_rcg, is_ug,
)
from lmg.equivalence import (
    colliders_with_order, equivalent_cross, equivalent_dags, equivalent_mags, equivalent_rcgs,
    equivalent_simple, minimal_collider_paths,
)
from lmg.errors import (
    ClassViolation, DomainMismatch, EnumerationLimit, InvalidQuery, LMGError, MalformedPath,
    NodeNotFound, ParseError, PreconditionViolated, TransformError,
)
from lmg.graph import HEAD, TAIL, Edge, EdgeType, Mark, MixedGraph, graph
from lmg.io import parse, serialize
from lmg.oracle import enumerate_class, exhaustive_representable, models_equal
from lmg.representation import ReprVerdict, representable
from lmg.separation import independence_model, m_separated
from lmg.transform import to_bg, to_dag, to_rcg, to_ug, transform

__version__ = "0.1.0"
