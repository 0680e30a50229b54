"""In-memory triple store with subject-, predicate-, and object-first indexes.

The store has set semantics: re-inserting an existing triple is a no-op.
After a load it is treated as immutable and is safe for concurrent
read-only query evaluation (single writer during load, no internal locks).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .terms import Iri, PrefixTable, Term, Triple, default_prefixes


class Graph:
    """Indexed set of triples plus the prefix table used to render it."""

    def __init__(self, triples: Iterable[Triple] = (), prefixes: Optional[PrefixTable] = None):
        self._triples: set[Triple] = set()
        # Access orders: subject->predicate->objects, predicate->object->subjects,
        # object->subject->predicates.
        self._spo: dict = {}
        self._pos: dict = {}
        self._osp: dict = {}
        self.prefixes = prefixes if prefixes is not None else default_prefixes()
        for t in triples:
            self.insert(t)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def insert(self, t: Triple) -> bool:
        """Add a triple; returns True if it was not already present."""
        if not isinstance(t, Triple):
            raise TypeError(f"expected Triple, got {type(t).__name__}")
        if t in self._triples:
            return False
        self._triples.add(t)
        self._spo.setdefault(t.subject, {}).setdefault(t.predicate, set()).add(t.object)
        self._pos.setdefault(t.predicate, {}).setdefault(t.object, set()).add(t.subject)
        self._osp.setdefault(t.object, {}).setdefault(t.subject, set()).add(t.predicate)
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        """Insert many; returns how many were new."""
        return sum(1 for t in triples if self.insert(t))

    def index_sizes(self) -> tuple[int, int, int]:
        """Triple counts per index; all three must equal len(self)."""

        def total(index: dict) -> int:
            return sum(len(third) for second in index.values() for third in second.values())

        return (total(self._spo), total(self._pos), total(self._osp))

    def match(
        self,
        s: Optional[Term] = None,
        p: Optional[Iri] = None,
        o: Optional[Term] = None,
    ) -> Iterator[Triple]:
        """Yield triples matching the bound positions (None = wildcard).

        Uses the index whose first key position is the leftmost bound one:
        subject-first when s is bound, else predicate-first, else
        object-first, else a full scan.
        """
        if s is not None:
            po = self._spo.get(s)
            if not po:
                return
            preds = (p,) if p is not None else po.keys()
            for pred in preds:
                objs = po.get(pred)
                if not objs:
                    continue
                if o is not None:
                    if o in objs:
                        yield Triple(s, pred, o)
                else:
                    for obj in objs:
                        yield Triple(s, pred, obj)
        elif p is not None:
            os_ = self._pos.get(p)
            if not os_:
                return
            if o is not None:
                for subj in os_.get(o, ()):
                    yield Triple(subj, p, o)
            else:
                for obj, subjs in os_.items():
                    for subj in subjs:
                        yield Triple(subj, p, obj)
        elif o is not None:
            sp = self._osp.get(o)
            if not sp:
                return
            for subj, preds in sp.items():
                for pred in preds:
                    yield Triple(subj, pred, o)
        else:
            yield from self._triples

    def count_estimate(
        self,
        s: Optional[Term] = None,
        p: Optional[Iri] = None,
        o: Optional[Term] = None,
    ) -> int:
        """Cheap upper bound on match cardinality, used for join ordering."""
        if s is not None:
            po = self._spo.get(s)
            if not po:
                return 0
            if p is not None:
                return len(po.get(p, ()))
            return sum(len(v) for v in po.values())
        if p is not None:
            os_ = self._pos.get(p)
            if not os_:
                return 0
            if o is not None:
                return len(os_.get(o, ()))
            return sum(len(v) for v in os_.values())
        if o is not None:
            sp = self._osp.get(o)
            if not sp:
                return 0
            return sum(len(v) for v in sp.values())
        return len(self._triples)

    # Convenience accessors used by reporting and materialization code.

    def objects(self, s: Term, p: Iri) -> list[Term]:
        return [t.object for t in self.match(s, p, None)]

    def value(self, s: Term, p: Iri) -> Optional[Term]:
        for t in self.match(s, p, None):
            return t.object
        return None

    def subjects(self, p: Iri, o: Term) -> list[Term]:
        return [t.subject for t in self.match(None, p, o)]
