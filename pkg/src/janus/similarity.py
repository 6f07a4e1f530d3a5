"""Syntactic and semantic similarity between tag names.

String metrics (normalized Levenshtein, trigram Dice) plus synset lookup,
combined per token pair by ``max`` and aggregated over a greedy one-to-one
token alignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexnorm import TokenizedName


class EmptyTerm(ValueError):
    """String metrics are undefined for empty terms."""


@dataclass
class SimilarityScore:
    pair: tuple
    syntactic: float
    semantic: float
    combined: float


@dataclass
class SynonymLexicon:
    """Flat synset store; membership in a common synset means synonymy."""

    synsets: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    @classmethod
    def from_synsets(cls, synsets):
        lex = cls()
        for terms in synsets:
            lex.add_synset(terms)
        return lex

    @classmethod
    def load(cls, path):
        """Read synonyms.tsv: one synset per line, tab-separated lowercase terms."""
        lex = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                terms = [t.strip().lower() for t in line.split("\t") if t.strip()]
                if len(terms) >= 2:
                    lex.add_synset(terms)
        return lex

    def add_synset(self, terms):
        sid = len(self.synsets)
        terms = set(terms)
        self.synsets.append(terms)
        for t in terms:
            self.index.setdefault(t, set()).add(sid)

    def synonyms(self, term):
        out = set()
        for sid in self.index.get(term, ()):
            out |= self.synsets[sid]
        return out


def levenshtein(a: str, b: str) -> int:
    """Plain dynamic-programming edit distance."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(cur[j - 1] + 1, prev[j] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _trigrams(s: str):
    if len(s) < 3:
        return {s}
    return {s[i : i + 3] for i in range(len(s) - 2)}


def string_similarity(a: str, b: str, metric: str = "levenshtein_norm") -> float:
    if not a or not b:
        raise EmptyTerm("terms must be non-empty")
    if metric == "levenshtein_norm":
        return 1.0 - levenshtein(a, b) / max(len(a), len(b))
    if metric == "trigram_dice":
        ta, tb = _trigrams(a), _trigrams(b)
        return 2.0 * len(ta & tb) / (len(ta) + len(tb))
    raise ValueError(f"unknown metric {metric!r}")


def synonym_match(a: str, b: str, lex: SynonymLexicon) -> float:
    if a == b:
        return 1.0
    return 1.0 if self_or_shared_synset(a, b, lex) else 0.0


def self_or_shared_synset(a, b, lex):
    return bool(lex.index.get(a, set()) & lex.index.get(b, set()))


def _greedy_alignment(tokens_a, tokens_b, score_fn):
    """Greedy one-to-one alignment by descending score.

    Ties break on the unordered token pair so the result is symmetric
    in its arguments.
    """
    pairs = []
    for t in set(tokens_a):
        for u in set(tokens_b):
            s = score_fn(t, u)
            if s > 0:
                pairs.append((s, t, u))
    pairs.sort(key=lambda p: (-p[0], min(p[1], p[2]), max(p[1], p[2])))
    used_a, used_b = set(), set()
    total = 0.0
    matched = []
    for s, t, u in pairs:
        if t in used_a or u in used_b:
            continue
        used_a.add(t)
        used_b.add(u)
        total += s
        matched.append((t, u, s))
    return total, matched


def name_similarity(a: TokenizedName, b: TokenizedName, lex: SynonymLexicon) -> SimilarityScore:
    """Aggregate token-level similarity over a greedy alignment.

    Per token pair the score is max(levenshtein_norm, synonym_match);
    the aggregate divides by the longer token list, so partial-overlap
    names score below 1.
    """
    denom = max(len(set(a.tokens)), len(set(b.tokens)))
    if denom == 0:
        return SimilarityScore(pair=(a.original, b.original), syntactic=0.0, semantic=0.0, combined=0.0)

    def combined_fn(t, u):
        return max(string_similarity(t, u), synonym_match(t, u, lex))

    def syntactic_fn(t, u):
        return string_similarity(t, u)

    def semantic_fn(t, u):
        return synonym_match(t, u, lex)

    combined_total, _ = _greedy_alignment(a.tokens, b.tokens, combined_fn)
    syn_total, _ = _greedy_alignment(a.tokens, b.tokens, syntactic_fn)
    sem_total, _ = _greedy_alignment(a.tokens, b.tokens, semantic_fn)
    return SimilarityScore(
        pair=(a.original, b.original),
        syntactic=min(1.0, syn_total / denom),
        semantic=min(1.0, sem_total / denom),
        combined=min(1.0, combined_total / denom),
    )
