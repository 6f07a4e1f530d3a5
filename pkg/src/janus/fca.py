"""Formal concept analysis engine.

A :class:`FormalContext` is an (objects, attributes, incidence) triple.
Concepts are enumerated with Ganter's Next-Closure algorithm in lectic
order; incidence rows are stored as integer bitsets so that closure is a
chain of ``&`` operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class UnknownId(KeyError):
    """An object or attribute id not present in the context."""


@dataclass(frozen=True)
class FormalConcept:
    """A (extent, intent) pair where each side is the derivation of the other."""

    extent: frozenset
    intent: frozenset


@dataclass
class ConceptLattice:
    concepts: list
    covers: list = field(default_factory=list)  # (lower_idx, upper_idx) pairs


class FormalContext:
    """Immutable binary relation between objects and attributes.

    Objects and attributes keep their construction order; all derived
    output is deterministic given that order.
    """

    def __init__(self, objects, attributes, incidence):
        self.objects = list(objects)
        self.attributes = list(attributes)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object ids")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("duplicate attribute ids")
        if len(incidence) != len(self.objects):
            raise ValueError("incidence row count mismatch")
        self._obj_index = {g: i for i, g in enumerate(self.objects)}
        self._attr_index = {m: j for j, m in enumerate(self.attributes)}
        # row bitset per object: bit j set iff object has attribute j
        self._rows = []
        for row in incidence:
            if len(row) != len(self.attributes):
                raise ValueError("incidence column count mismatch")
            bits = 0
            for j, v in enumerate(row):
                if v:
                    bits |= 1 << j
            self._rows.append(bits)

    @classmethod
    def from_pairs(cls, objects, attributes, pairs):
        """Build from an iterable of (object, attribute) incidences."""
        objects = list(objects)
        attributes = list(attributes)
        aidx = {m: j for j, m in enumerate(attributes)}
        oidx = {g: i for i, g in enumerate(objects)}
        rows = [[False] * len(attributes) for _ in objects]
        for g, m in pairs:
            if g not in oidx:
                raise UnknownId(g)
            if m not in aidx:
                raise UnknownId(m)
            rows[oidx[g]][aidx[m]] = True
        return cls(objects, attributes, rows)

    def has(self, obj, attr):
        try:
            return bool(self._rows[self._obj_index[obj]] >> self._attr_index[attr] & 1)
        except KeyError as exc:
            raise UnknownId(*exc.args) from None

    # -- derivation ---------------------------------------------------

    def _attr_bits(self, attrs):
        bits = 0
        for m in attrs:
            if m not in self._attr_index:
                raise UnknownId(m)
            bits |= 1 << self._attr_index[m]
        return bits

    def _obj_prime_bits(self, obj_indices):
        full = (1 << len(self.attributes)) - 1
        bits = full
        for i in obj_indices:
            bits &= self._rows[i]
        return bits

    def _attr_prime_indices(self, attr_bits):
        return [i for i, row in enumerate(self._rows) if row & attr_bits == attr_bits]

    def prime_objects(self, objs):
        """Attributes common to every object in ``objs``; all attributes for the empty set."""
        indices = []
        for g in objs:
            if g not in self._obj_index:
                raise UnknownId(g)
            indices.append(self._obj_index[g])
        bits = self._obj_prime_bits(indices)
        return frozenset(m for m in self.attributes if bits >> self._attr_index[m] & 1)

    def prime_attributes(self, attrs):
        """Objects carrying every attribute in ``attrs``; all objects for the empty set."""
        bits = self._attr_bits(attrs)
        return frozenset(self.objects[i] for i in self._attr_prime_indices(bits))

    def closure(self, attrs):
        """Double-prime closure of an attribute set."""
        bits = self._attr_bits(attrs)
        closed = self._obj_prime_bits(self._attr_prime_indices(bits))
        return frozenset(m for m in self.attributes if closed >> self._attr_index[m] & 1)


def prime(ctx: FormalContext, s, side: str = "objects"):
    """Derivation operator; ``side`` names which side of the context ``s`` is from."""
    if side == "objects":
        return ctx.prime_objects(s)
    if side == "attributes":
        return ctx.prime_attributes(s)
    raise ValueError(f"unknown side {side!r}")


def closure(ctx: FormalContext, attrs):
    return ctx.closure(attrs)


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    """Enumerate all formal concepts of ``ctx`` with Next-Closure.

    Intents are generated in lectic order over the context's attribute
    order; the result additionally carries the Hasse cover relation.
    """
    n = len(ctx.attributes)
    full = (1 << n) - 1

    def close_bits(bits):
        return ctx._obj_prime_bits(ctx._attr_prime_indices(bits))

    intents = []
    current = close_bits(0)
    intents.append(current)
    while current != full:
        nxt = None
        for j in reversed(range(n)):
            if current >> j & 1:
                continue
            candidate = close_bits((current & ((1 << j) - 1)) | (1 << j))
            # lectic successor check: no new attribute below position j
            if candidate & ((1 << j) - 1) & ~current == 0:
                nxt = candidate
                break
        if nxt is None:
            break
        current = nxt
        intents.append(current)

    concepts = []
    for bits in intents:
        extent = frozenset(ctx.objects[i] for i in ctx._attr_prime_indices(bits))
        intent = frozenset(m for m in ctx.attributes if bits >> ctx._attr_index[m] & 1)
        concepts.append(FormalConcept(extent=extent, intent=intent))
    return ConceptLattice(concepts=concepts, covers=hasse_cover(concepts))


def hasse_cover(concepts):
    """Cover pairs (x, y) with extent(x) ⊂ extent(y) and nothing strictly between."""
    covers = []
    for i, lo in enumerate(concepts):
        for j, hi in enumerate(concepts):
            if i == j or not lo.extent < hi.extent:
                continue
            between = any(
                k != i and k != j and lo.extent < mid.extent < hi.extent
                for k, mid in enumerate(concepts)
            )
            if not between:
                covers.append((i, j))
    return covers


def extract_clusters(lattice: ConceptLattice, min_extent: int = 2, min_intent: int = 1):
    """Extents of concepts meeting both size thresholds, largest extents first."""
    hits = [
        c
        for c in lattice.concepts
        if len(c.extent) >= min_extent and len(c.intent) >= min_intent
    ]
    hits.sort(key=lambda c: (-len(c.extent), sorted(c.extent), sorted(c.intent)))
    return [set(c.extent) for c in hits]


# -- Burmeister-style debug format ------------------------------------


def read_burmeister(text: str) -> FormalContext:
    """Parse the plain-text context format used for test fixtures.

    Layout: a line ``B``, optional name line, object count, attribute
    count, blank line, object names, attribute names, then one ``X``/``.``
    row per object.
    """
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    if not lines or lines[0].strip() != "B":
        raise ValueError("not a Burmeister context (missing 'B' header)")
    idx = 1
    # optional name line: skip anything before the first integer line
    while idx < len(lines) and not lines[idx].strip().isdigit():
        idx += 1
    n_obj = int(lines[idx].strip())
    n_attr = int(lines[idx + 1].strip())
    idx += 2
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    objects = [lines[idx + i].strip() for i in range(n_obj)]
    idx += n_obj
    attributes = [lines[idx + j].strip() for j in range(n_attr)]
    idx += n_attr
    rows = []
    for i in range(n_obj):
        raw = lines[idx + i].strip()
        if len(raw) != n_attr:
            raise ValueError(f"incidence row {i} has wrong width")
        rows.append([ch in "Xx" for ch in raw])
    return FormalContext(objects, attributes, rows)


def write_burmeister(ctx: FormalContext, name: str = "context") -> str:
    out = ["B", name, str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    out.extend(str(g) for g in ctx.objects)
    out.extend(str(m) for m in ctx.attributes)
    for g in ctx.objects:
        out.append("".join("X" if ctx.has(g, m) else "." for m in ctx.attributes))
    return "\n".join(out) + "\n"
