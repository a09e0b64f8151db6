"""Independent ground-truth oracle: flat-list replay plus BFS reachability.

This deliberately shares nothing with the graph/cognition machinery: facts
live in plain dicts and an ordered fact list, taxonomy questions are
answered by a fresh BFS over dict adjacency, and answers come back as
normalized strings. Corpus generation uses it to compute expected answers;
the equivalence tests then demand the cognition module agree with it on
every question.

Referent model (valid for generated corpora by construction): a proper name
denotes one entity; "the N" denotes the single anonymous instance of N; a
pronoun denotes the subject entity of the most recent statement that had an
entity subject. The cognition module resolves pronouns through activation
levels instead; generated corpora are arranged (pronoun immediately after
its antecedent's statement, no competing same-turn entity mentions) so the
two rules provably coincide there.
"""

from __future__ import annotations

from .errors import CogError
from .graph import Polarity
from .language import (
    ConceptIsA,
    HasAttribute,
    InstanceIsA,
    NounObject,
    Pronoun,
    ProperName,
    Question,
    RelationStmt,
    Statement,
    TheNoun,
    WhObject,
    WhSubject,
    YesNoAttr,
    YesNoIsA,
    YesNoRel,
    indefinite_article,
)

__all__ = ["ReplayOracle", "OracleError", "UNKNOWN"]

UNKNOWN = "i don't know"


class OracleError(CogError):
    """The corpus violates the oracle's referent model."""


class ReplayOracle:
    """Replays statements into flat structures and answers questions."""

    def __init__(self):
        self.entities: set[tuple[str, str]] = set()
        # live affirmative relation facts, oldest first
        self.facts: list[tuple[tuple[str, str], str, tuple[str, str]]] = []
        # (subject, verb, object) -> True (yes) / False (no); absent = unknown
        self.rel_standing: dict[tuple, bool] = {}
        self.attr_standing: dict[tuple, bool] = {}
        self.instance_of: dict[tuple[str, str], set[str]] = {}
        self.isa: dict[str, set[str]] = {}
        self.anchor: tuple[str, str] | None = None

    # -- keys ----------------------------------------------------------

    def _the_key(self, noun: str) -> tuple[str, str]:
        # Resolving "the N" for the first time creates the instance, which
        # is born with an instance-of N fact (mirrors the graph behavior).
        key = ("the", noun)
        if key not in self.entities:
            self.entities.add(key)
            self.instance_of.setdefault(key, set()).add(noun)
        return key

    def _subject_key(self, subject) -> tuple[str, str]:
        if isinstance(subject, ProperName):
            key = ("name", subject.name)
            self.entities.add(key)
            return key
        if isinstance(subject, TheNoun):
            return self._the_key(subject.noun)
        if isinstance(subject, Pronoun):
            if self.anchor is None:
                raise OracleError(f"pronoun {subject.word!r} with no antecedent")
            return self.anchor
        raise TypeError(f"not a subject: {subject!r}")

    def _object_key(self, obj) -> tuple[str, str]:
        if isinstance(obj, ProperName):
            key = ("name", obj.name)
            self.entities.add(key)
            return key
        if isinstance(obj, NounObject):
            if obj.definite:
                return self._the_key(obj.noun)
            return ("concept", obj.noun)
        raise TypeError(f"not an object: {obj!r}")

    @staticmethod
    def _render(key: tuple[str, str]) -> str:
        kind, value = key
        if kind == "concept":
            return f"{indefinite_article(value)} {value}"
        if kind == "the":
            return f"the {value}"
        return value.casefold()

    # -- replay ---------------------------------------------------------

    def apply(self, statement: Statement) -> None:
        form = statement.form
        if isinstance(form, ConceptIsA):
            self.isa.setdefault(form.noun, set()).add(form.parent)
            return

        skey = self._subject_key(form.subject)
        self.anchor = skey

        if isinstance(form, InstanceIsA):
            self.instance_of.setdefault(skey, set()).add(form.noun)
        elif isinstance(form, HasAttribute):
            self.attr_standing[(skey, form.adjective)] = form.polarity == Polarity.AFFIRM
        elif isinstance(form, RelationStmt):
            okeys = [self._object_key(o) for o in form.objects]
            if form.only:
                keep = set(okeys)
                self.facts = [
                    f for f in self.facts
                    if not (f[0] == skey and f[1] == form.verb and f[2] not in keep)
                ]
                for (s, v, o) in list(self.rel_standing):
                    if s == skey and v == form.verb and o not in keep:
                        del self.rel_standing[(s, v, o)]
            for okey in okeys:
                fact = (skey, form.verb, okey)
                if form.polarity == Polarity.AFFIRM:
                    if fact not in self.facts:
                        self.facts.append(fact)
                    self.rel_standing[fact] = True
                else:
                    if fact in self.facts:
                        self.facts.remove(fact)
                    self.rel_standing[fact] = False
        else:
            raise TypeError(f"not a statement form: {form!r}")

    # -- taxonomy reachability -------------------------------------------

    def _reachable_nouns(self, skey: tuple[str, str]) -> set[str]:
        start = self.instance_of.get(skey, set())
        seen = set(start)
        frontier = list(start)
        while frontier:
            noun = frontier.pop()
            for parent in self.isa.get(noun, ()):
                if parent not in seen:
                    seen.add(parent)
                    frontier.append(parent)
        return seen

    def isa_hops(self, skey: tuple[str, str], noun: str) -> int | None:
        """Minimum number of is-a edges (beyond instance-of) to reach
        ``noun``, or None when unreachable."""
        frontier = set(self.instance_of.get(skey, set()))
        seen = set(frontier)
        hops = 0
        while frontier:
            if noun in frontier:
                return hops
            nxt = set()
            for n in frontier:
                for parent in self.isa.get(n, ()):
                    if parent not in seen:
                        seen.add(parent)
                        nxt.add(parent)
            frontier = nxt
            hops += 1
        return None

    # -- questions --------------------------------------------------------

    def _question_subject_key(self, subject) -> tuple[str, str] | None:
        """Like _subject_key but read-only: unknown subjects stay unknown."""
        if isinstance(subject, ProperName):
            key = ("name", subject.name)
        elif isinstance(subject, TheNoun):
            key = ("the", subject.noun)
        else:
            raise OracleError("generated questions must not use pronouns")
        return key if key in self.entities else None

    def _question_object_key(self, obj) -> tuple[str, str] | None:
        if isinstance(obj, NounObject) and not obj.definite:
            return ("concept", obj.noun)
        if isinstance(obj, ProperName):
            key = ("name", obj.name)
        else:
            key = ("the", obj.noun)
        return key if key in self.entities else None

    def answer(self, question: Question) -> str:
        """Expected answer, already normalized (lowercase, no final '.')."""
        form = question.form
        if isinstance(form, WhObject):
            skey = self._question_subject_key(form.subject)
            if skey is None:
                return UNKNOWN
            objects = [f[2] for f in self.facts if f[0] == skey and f[1] == form.verb]
            if not objects:
                return UNKNOWN
            return " and ".join(self._render(o) for o in objects)

        if isinstance(form, WhSubject):
            okey = self._question_object_key(form.obj)
            if okey is None:
                return UNKNOWN
            subjects = []
            for f in self.facts:
                if f[1] == form.verb and f[2] == okey and f[0] not in subjects:
                    subjects.append(f[0])
            if not subjects:
                return UNKNOWN
            return " and ".join(self._render(s) for s in subjects)

        if isinstance(form, YesNoIsA):
            skey = self._question_subject_key(form.subject)
            if skey is None:
                return UNKNOWN
            return "yes" if form.noun in self._reachable_nouns(skey) else UNKNOWN

        if isinstance(form, YesNoAttr):
            skey = self._question_subject_key(form.subject)
            if skey is None:
                return UNKNOWN
            standing = self.attr_standing.get((skey, form.adjective))
            if standing is None:
                return UNKNOWN
            return "yes" if standing else "no"

        if isinstance(form, YesNoRel):
            skey = self._question_subject_key(form.subject)
            okey = self._question_object_key(form.obj)
            if skey is None or okey is None:
                return UNKNOWN
            standing = self.rel_standing.get((skey, form.verb, okey))
            if standing is None:
                return UNKNOWN
            return "yes" if standing else "no"

        raise TypeError(f"not a question form: {form!r}")
