"""cogkg: an integrated in-memory cognitive knowledge graph.

One graph stores long-term knowledge (typed nodes, schema'd feature
vectors, provenance-carrying edges) and, through a spreading-activation
layer, doubles as working memory. On top sit online concept formation, a
controlled-natural-language front end with belief revision, inheritance
question answering, metacognitive signals, and benchmark harnesses.
"""

from .activation import ActivationParams, ActivationState
from .cognition import Answer, Session, Signals, TurnResult, Verdict
from .concepts import ConceptParams, RecognitionOutcome, RecognitionResult, abstract, form_concepts, recognize
from .graph import Edge, Graph, Node, NodeKind, Polarity
from .language import Lexicon, Question, Statement, parse_line, tokenize
from .snapshot import load_snapshot, save_snapshot
from .vectors import AttributeSchema, Dim, FeatureVector, project, prototype_update, similarity

__version__ = "0.1.0"

__all__ = [
    "ActivationParams",
    "ActivationState",
    "Answer",
    "AttributeSchema",
    "ConceptParams",
    "Dim",
    "Edge",
    "FeatureVector",
    "Graph",
    "Lexicon",
    "Node",
    "NodeKind",
    "Polarity",
    "Question",
    "RecognitionOutcome",
    "RecognitionResult",
    "Session",
    "Signals",
    "Statement",
    "TurnResult",
    "Verdict",
    "abstract",
    "form_concepts",
    "load_snapshot",
    "parse_line",
    "project",
    "prototype_update",
    "recognize",
    "save_snapshot",
    "similarity",
    "tokenize",
    "__version__",
]
