"""Lexical processing of tag names.

Tokenization applies a fixed rule sequence: separator split, camel-case
split, acronym-boundary split, letter/digit split, lowercasing.  On top
of the token streams the module computes per-term corpus statistics and
mines association rules over compound names.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

_SEPARATORS = re.compile(r"[_\-. /:]+")
_CAMEL = re.compile(r"(?<=[a-z])(?=[A-Z])")              # lower→Upper
_ACRONYM = re.compile(r"(?<=[A-Z])(?=[A-Z][a-z])")       # XMLSchema → XML|Schema
_ALNUM = re.compile(r"(?<=[A-Za-z])(?=[0-9])|(?<=[0-9])(?=[A-Za-z])")


class EmptyName(ValueError):
    """Raised when asked to tokenize an empty string."""


@dataclass
class TokenizedName:
    original: str
    tokens: list
    raw_tokens: list


@dataclass
class TermStats:
    term: str
    global_frequency: int = 0
    per_family_frequency: dict = field(default_factory=dict)
    document_frequency: int = 0


@dataclass(frozen=True)
class AssociationRule:
    antecedent: frozenset
    consequent: str
    support: float
    confidence: float


def tokenize(name: str) -> TokenizedName:
    """Split a raw tag name into lowercase terms.

    Rules apply in order: split on separators, split camel boundaries,
    split before the last capital of an uppercase run followed by a
    capitalized word, split letter/digit boundaries, lowercase.
    """
    if not name:
        raise EmptyName("cannot tokenize an empty name")
    pieces = [p for p in _SEPARATORS.split(name) if p]
    tokens = []
    for piece in pieces:
        for part in _CAMEL.split(piece):
            for sub in _ACRONYM.split(part):
                tokens.extend(t.lower() for t in _ALNUM.split(sub) if t)
    return TokenizedName(original=name, tokens=tokens, raw_tokens=list(tokens))


def expand_abbreviations(t: TokenizedName, table: dict) -> TokenizedName:
    """Replace each token found in ``table`` by its expansion tokens."""
    expanded = []
    for tok in t.tokens:
        expanded.extend(table.get(tok, [tok]))
    return TokenizedName(original=t.original, tokens=expanded, raw_tokens=t.raw_tokens)


def load_abbreviations(path) -> dict:
    """Read ``abbr,expansion tokens`` lines; '#' starts a comment."""
    table = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            abbr, _, expansion = line.partition(",")
            table[abbr.strip().lower()] = expansion.split()
    return table


def load_stopwords(path) -> set:
    stops = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                stops.add(line.lower())
    return stops


def compute_term_stats(corpus, stopwords=frozenset()) -> dict:
    """Aggregate term statistics over ``(TokenizedName, family_id, doc_id)`` triples.

    Each name contributes at most once per term; stopword terms are
    dropped entirely.
    """
    stats = {}
    seen_docs = {}
    for tname, family_id, doc_id in corpus:
        for term in set(tname.tokens) - set(stopwords):
            st = stats.setdefault(term, TermStats(term=term))
            st.global_frequency += 1
            st.per_family_frequency[family_id] = (
                st.per_family_frequency.get(family_id, 0) + 1
            )
            docs = seen_docs.setdefault(term, set())
            if (family_id, doc_id) not in docs:
                docs.add((family_id, doc_id))
                st.document_frequency += 1
    return stats


def mine_associations(names, min_support, min_confidence):
    """Mine association rules from compound-name token sets.

    Transactions are the token sets of names with at least two distinct
    tokens.  Standard Apriori over these small transaction sets; rules
    have a single-term consequent.  Supports and confidences are exact
    rationals converted to float at the boundary.
    """
    if not 0 < min_support <= 1 or not 0 < min_confidence <= 1:
        raise ValueError("min_support and min_confidence must be in (0, 1]")
    transactions = [frozenset(n.tokens) for n in names if len(set(n.tokens)) >= 2]
    if not transactions:
        return []
    total = len(transactions)

    def count(itemset):
        return sum(1 for t in transactions if itemset <= t)

    # frequent itemsets, level-wise
    items = sorted({tok for t in transactions for tok in t})
    frequent = {}
    level = []
    for it in items:
        c = count(frozenset([it]))
        if Fraction(c, total) >= Fraction(min_support).limit_denominator():
            fs = frozenset([it])
            frequent[fs] = c
            level.append(fs)
    while level:
        nxt = set()
        for a, b in itertools.combinations(level, 2):
            cand = a | b
            if len(cand) != len(a) + 1:
                continue
            if any(cand - {x} not in frequent for x in cand):
                continue
            nxt.add(cand)
        level = []
        for cand in nxt:
            c = count(cand)
            if Fraction(c, total) >= Fraction(min_support).limit_denominator():
                frequent[cand] = c
                level.append(cand)

    rules = []
    for itemset, supp_count in frequent.items():
        if len(itemset) < 2:
            continue
        for consequent in itemset:
            antecedent = itemset - {consequent}
            conf = Fraction(supp_count, frequent[antecedent])
            if conf >= Fraction(min_confidence).limit_denominator():
                rules.append(
                    AssociationRule(
                        antecedent=antecedent,
                        consequent=consequent,
                        support=float(Fraction(supp_count, total)),
                        confidence=float(conf),
                    )
                )
    rules.sort(
        key=lambda r: (-r.confidence, -r.support, sorted(r.antecedent), r.consequent)
    )
    return rules
