"""Mine a semantic-network knowledge base from corpora of XML Schema files."""

from .estimator import NameTokenizer, OntologyBuilder
from .kb import KnowledgeBase, Resources, load_kb, reparameterize, run_pipeline, save_kb
from .taxonomy import MergeParams, SemanticNetwork

__all__ = [
    "KnowledgeBase",
    "MergeParams",
    "NameTokenizer",
    "OntologyBuilder",
    "Resources",
    "SemanticNetwork",
    "load_kb",
    "reparameterize",
    "run_pipeline",
    "save_kb",
]

__version__ = "0.1.0"
