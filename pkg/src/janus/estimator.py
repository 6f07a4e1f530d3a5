"""scikit-learn style wrappers around the pipeline.

``OntologyBuilder`` is the fit-shaped entry point: fit on a list of
(family name, xsd paths) pairs, then read ``network_`` / ``kb_`` or call
``transform`` for the neutral JSON graph.  Threshold params follow
sklearn get_params/set_params conventions, so the builder drops into
grid searches and pipelines.
"""

from __future__ import annotations

import json

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import kb as kbmod
from . import lexnorm, owlexport
from .taxonomy import MergeParams


def _as_family_specs(X):
    if isinstance(X, dict):
        return sorted(X.items())
    specs = list(X)
    if not all(isinstance(s, (tuple, list)) and len(s) == 2 for s in specs):
        raise ValueError("X must be a dict or list of (family name, paths) pairs")
    return specs


class NameTokenizer(BaseEstimator, TransformerMixin):
    """Stateless transformer: raw tag names -> token lists."""

    def __init__(self, abbreviations=None):
        self.abbreviations = abbreviations

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        table = self.abbreviations or {}
        out = []
        for name in X:
            t = lexnorm.tokenize(name)
            out.append(lexnorm.expand_abbreviations(t, table).tokens)
        return out


class OntologyBuilder(BaseEstimator):
    """Build a semantic network from XSD family corpora."""

    def __init__(
        self,
        align_threshold=0.75,
        merge_threshold=0.9,
        min_frequency=1,
        lattice_min_extent=2,
        lattice_min_intent=2,
        base_namespace=owlexport.DEFAULT_BASE,
        stopwords_path=None,
        abbreviations_path=None,
        synonyms_path=None,
    ):
        self.align_threshold = align_threshold
        self.merge_threshold = merge_threshold
        self.min_frequency = min_frequency
        self.lattice_min_extent = lattice_min_extent
        self.lattice_min_intent = lattice_min_intent
        self.base_namespace = base_namespace
        self.stopwords_path = stopwords_path
        self.abbreviations_path = abbreviations_path
        self.synonyms_path = synonyms_path

    def _params(self):
        return MergeParams(
            align_threshold=self.align_threshold,
            merge_threshold=self.merge_threshold,
            min_frequency=self.min_frequency,
            lattice_min_extent=self.lattice_min_extent,
            lattice_min_intent=self.lattice_min_intent,
        ).validate()

    def fit(self, X, y=None):
        """X: dict or list of (family name, list of xsd paths)."""
        resources = kbmod.Resources.load(
            stopwords_path=self.stopwords_path,
            abbreviations_path=self.abbreviations_path,
            synonyms_path=self.synonyms_path,
        )
        self.kb_ = kbmod.run_pipeline(_as_family_specs(X), self._params(), resources)
        self.kb_.base_namespace = self.base_namespace
        self.network_ = self.kb_.network
        return self

    def refit_params(self):
        """Re-run alignment/merge after set_params, without re-ingesting."""
        check_is_fitted(self, "kb_")
        kbmod.reparameterize(self.kb_, self._params())
        self.network_ = self.kb_.network
        return self

    def transform(self, X=None):
        """Return the neutral node/edge graph document as a dict."""
        check_is_fitted(self, "kb_")
        return json.loads(owlexport.serialize_json_graph(self.network_))

    def export_turtle(self):
        check_is_fitted(self, "kb_")
        triples = owlexport.to_rdf_graph(self.network_, self.base_namespace)
        return owlexport.serialize(triples, "turtle", self.base_namespace)
