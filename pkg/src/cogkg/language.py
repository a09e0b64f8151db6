"""Deterministic controlled-language front end: tokenizer, parser, renderer.

Grammar (terminals case-folded except proper names):

    statement   := [ "actually" "," ] core "."
    core        := subject "is" det noun                 # instance taxonomy
                 | det noun "is" det noun                # concept taxonomy
                 | subject "is" ["not"] adjective        # attribute
                 | subject ["only"] verb3 objlist        # relation, affirm
                 | subject "does" "not" verbBase objlist # relation, negate
    subject     := ProperName | "the" noun | pronoun
    objlist     := object { "and" object }
    object      := det noun | ProperName
    det         := "a" | "an" | "the"
    question    := "what" "does" subject verbBase "?"
                 | "who" verb3 object "?"
                 | "is" subject det noun "?"
                 | "is" subject adjective "?"
                 | "does" subject verbBase object "?"

Disambiguation is fully lexical: a capitalized token that case-folds to
neither a closed word nor a lexicon entry is a proper name; a subject that
starts with "the" is an entity reference, so the concept-taxonomy form only
admits "a"/"an" subjects; after "is", a determiner selects the taxonomy
reading and a bare adjective the attribute reading. Parsing is total: any
input raises NoParseError (with the failing offset) or yields one AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import AmbiguousParseError, LexiconError, NoParseError
from .graph import Polarity

__all__ = [
    "Token",
    "TokenKind",
    "Lexicon",
    "ProperName",
    "TheNoun",
    "Pronoun",
    "NounObject",
    "InstanceIsA",
    "ConceptIsA",
    "HasAttribute",
    "RelationStmt",
    "Statement",
    "WhObject",
    "WhSubject",
    "YesNoIsA",
    "YesNoAttr",
    "YesNoRel",
    "Question",
    "tokenize",
    "parse_statement",
    "parse_question",
    "parse_line",
    "render_statement",
    "render_question",
    "indefinite_article",
    "DETERMINERS",
    "PRONOUNS",
    "CLOSED_WORDS",
]

DETERMINERS = frozenset({"a", "an", "the"})
PRONOUNS = frozenset({"she", "he", "it", "they"})
WH_WORDS = frozenset({"what", "who"})
CLOSED_WORDS = DETERMINERS | PRONOUNS | WH_WORDS | {
    "is", "are", "not", "does", "only", "and", "actually",
}


class TokenKind(Enum):
    WORD = "word"
    PROPER_WORD = "proper"  # first character is uppercase
    PUNCT = "punct"


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    position: int  # character offset into the source string


_TOKEN_RE = re.compile(r"[.,?]|[^\s.,?]+")


def tokenize(text: str) -> list[Token]:
    """Whitespace split with '.', ',' and '?' as standalone tokens.

    Lossless: every token's text occurs at its recorded offset, and the
    tokens cover all non-whitespace input.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        t = m.group()
        if t in (".", ",", "?"):
            kind = TokenKind.PUNCT
        elif t[0].isupper():
            kind = TokenKind.PROPER_WORD
        else:
            kind = TokenKind.WORD
        tokens.append(Token(t, kind, m.start()))
    return tokens


class Lexicon:
    """Open-class vocabulary: verbs (base and third-person forms) and
    adjectives. Nouns are open and need no listing.

    A word may carry only one role; overlap between verb forms and
    adjectives would create second derivations, so the loader rejects it
    with AmbiguousParseError.
    """

    def __init__(self, verbs: dict[str, str], adjectives: set[str]):
        self.base_to_third = dict(verbs)
        self.third_to_base = {}
        for base, third in verbs.items():
            if third in self.third_to_base:
                raise LexiconError(f"verb form {third!r} listed twice")
            self.third_to_base[third] = base
        self.adjectives = set(adjectives)
        forms = set(self.base_to_third) | set(self.third_to_base)
        clash = forms & self.adjectives
        if clash:
            raise AmbiguousParseError(
                f"words {sorted(clash)} are both verb forms and adjectives"
            )
        closed_clash = (forms | self.adjectives) & CLOSED_WORDS
        if closed_clash:
            raise LexiconError(f"closed words {sorted(closed_clash)} cannot be lexicon entries")

    def is_verb_form(self, word: str) -> bool:
        return word in self.base_to_third or word in self.third_to_base

    def __contains__(self, word: str) -> bool:
        return self.is_verb_form(word) or word in self.adjectives

    @classmethod
    def from_text(cls, text: str) -> "Lexicon":
        """Parse the lexicon file format: ``base<TAB>third`` lines under a
        ``[verbs]`` header, bare words under ``[adjectives]``."""
        verbs: dict[str, str] = {}
        adjectives: set[str] = set()
        section = None
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line in ("[verbs]", "[adjectives]"):
                section = line
                continue
            if section == "[verbs]":
                parts = line.split("\t")
                if len(parts) != 2 or not parts[0] or not parts[1]:
                    raise LexiconError(f"line {line_no}: expected 'base<TAB>third', got {raw!r}")
                base, third = parts[0].casefold(), parts[1].casefold()
                if base in verbs:
                    raise LexiconError(f"line {line_no}: verb {base!r} listed twice")
                verbs[base] = third
            elif section == "[adjectives]":
                adjectives.add(line.casefold())
            else:
                raise LexiconError(f"line {line_no}: entry before any section header")
        return cls(verbs, adjectives)

    @classmethod
    def from_file(cls, path) -> "Lexicon":
        with open(path, encoding="utf-8") as f:
            return cls.from_text(f.read())

    @classmethod
    def default(cls) -> "Lexicon":
        from . import data

        return cls.from_text(data.read_text("lexicon.txt"))


# ----------------------------------------------------------------------
# AST types


@dataclass(frozen=True)
class ProperName:
    name: str


@dataclass(frozen=True)
class TheNoun:
    noun: str


@dataclass(frozen=True)
class Pronoun:
    word: str


Subject = ProperName | TheNoun | Pronoun


@dataclass(frozen=True)
class NounObject:
    noun: str
    definite: bool = False  # "the ball" refers to an entity, "a ball" to the concept


Object = NounObject | ProperName


@dataclass(frozen=True)
class InstanceIsA:
    subject: Subject
    noun: str


@dataclass(frozen=True)
class ConceptIsA:
    noun: str
    parent: str


@dataclass(frozen=True)
class HasAttribute:
    subject: Subject
    adjective: str
    polarity: Polarity


@dataclass(frozen=True)
class RelationStmt:
    subject: Subject
    verb: str  # base form
    objects: tuple[Object, ...]
    polarity: Polarity
    only: bool = False


StatementForm = InstanceIsA | ConceptIsA | HasAttribute | RelationStmt


@dataclass(frozen=True)
class Statement:
    form: StatementForm
    revision_marker: bool = False
    source_text: str = field(default="", compare=False)


@dataclass(frozen=True)
class WhObject:
    subject: Subject
    verb: str


@dataclass(frozen=True)
class WhSubject:
    verb: str
    obj: Object


@dataclass(frozen=True)
class YesNoIsA:
    subject: Subject
    noun: str


@dataclass(frozen=True)
class YesNoAttr:
    subject: Subject
    adjective: str


@dataclass(frozen=True)
class YesNoRel:
    subject: Subject
    verb: str
    obj: Object


QuestionForm = WhObject | WhSubject | YesNoIsA | YesNoAttr | YesNoRel


@dataclass(frozen=True)
class Question:
    form: QuestionForm
    source_text: str = field(default="", compare=False)


# ----------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[Token], lexicon: Lexicon, end_offset: int):
        self.tokens = tokens
        self.lexicon = lexicon
        self.end_offset = end_offset
        self.pos = 0

    def fail(self, message: str, token: Token | None = None):
        offset = token.position if token is not None else (
            self.tokens[self.pos].position if self.pos < len(self.tokens) else self.end_offset
        )
        raise NoParseError(message, offset)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def peek_fold(self) -> str | None:
        t = self.peek()
        return t.text.casefold() if t is not None else None

    def take(self) -> Token:
        t = self.peek()
        if t is None:
            self.fail("unexpected end of input")
        self.pos += 1
        return t

    def expect_word(self, word: str) -> Token:
        t = self.peek()
        if t is None or t.kind == TokenKind.PUNCT or t.text.casefold() != word:
            self.fail(f"expected {word!r}")
        return self.take()

    def expect_punct(self, mark: str) -> Token:
        t = self.peek()
        if t is None or t.kind != TokenKind.PUNCT or t.text != mark:
            self.fail(f"expected {mark!r}")
        return self.take()

    def expect_end(self) -> None:
        t = self.peek()
        if t is not None:
            self.fail("trailing input after sentence end", t)

    # -- word classes ------------------------------------------------

    def read_noun(self) -> str:
        t = self.peek()
        if t is None or t.kind == TokenKind.PUNCT:
            self.fail("expected a noun")
        word = t.text.casefold()
        if word in CLOSED_WORDS:
            self.fail(f"{t.text!r} cannot be a noun", t)
        self.take()
        return word

    def read_adjective(self) -> str:
        t = self.peek()
        if t is None or t.kind == TokenKind.PUNCT:
            self.fail("expected an adjective")
        word = t.text.casefold()
        if word not in self.lexicon.adjectives:
            self.fail(f"{t.text!r} is not a known adjective", t)
        self.take()
        return word

    def read_verb_third(self) -> str:
        t = self.peek()
        if t is None or t.kind == TokenKind.PUNCT:
            self.fail("expected a verb")
        word = t.text.casefold()
        base = self.lexicon.third_to_base.get(word)
        if base is None:
            self.fail(f"{t.text!r} is not a known verb (third-person form)", t)
        self.take()
        return base

    def read_verb_base(self) -> str:
        t = self.peek()
        if t is None or t.kind == TokenKind.PUNCT:
            self.fail("expected a verb")
        word = t.text.casefold()
        if word not in self.lexicon.base_to_third:
            self.fail(f"{t.text!r} is not a known verb (base form)", t)
        self.take()
        return word

    def read_proper_name(self) -> ProperName:
        t = self.peek()
        if t is None or t.kind != TokenKind.PROPER_WORD:
            self.fail("expected a name")
        word = t.text.casefold()
        if word in CLOSED_WORDS or word in self.lexicon:
            self.fail(f"{t.text!r} is a reserved word, not a name", t)
        self.take()
        return ProperName(t.text)

    def read_subject(self) -> Subject:
        f = self.peek_fold()
        if f == "the":
            self.take()
            return TheNoun(self.read_noun())
        if f in PRONOUNS:
            self.take()
            return Pronoun(f)
        return self.read_proper_name()

    def read_object(self) -> Object:
        f = self.peek_fold()
        if f in DETERMINERS:
            self.take()
            return NounObject(self.read_noun(), definite=(f == "the"))
        return self.read_proper_name()

    def read_objlist(self) -> tuple[Object, ...]:
        objects = [self.read_object()]
        while self.peek_fold() == "and":
            self.take()
            objects.append(self.read_object())
        return tuple(objects)


def parse_statement(tokens: list[Token], lexicon: Lexicon, source_text: str = "") -> Statement:
    """Parse one teaching statement (must end with '.')."""
    end = len(source_text) if source_text else (
        tokens[-1].position + len(tokens[-1].text) if tokens else 0
    )
    p = _Parser(tokens, lexicon, end)
    if not tokens:
        p.fail("empty input")

    revision = False
    if p.peek_fold() == "actually":
        p.take()
        p.expect_punct(",")
        revision = True

    f = p.peek_fold()
    form: StatementForm
    if f in ("a", "an"):
        p.take()
        noun = p.read_noun()
        p.expect_word("is")
        det2 = p.peek_fold()
        if det2 not in DETERMINERS:
            p.fail("expected a determiner")
        p.take()
        form = ConceptIsA(noun, p.read_noun())
    else:
        subject = p.read_subject()
        f = p.peek_fold()
        if f == "is":
            p.take()
            nxt = p.peek_fold()
            if nxt in DETERMINERS:
                p.take()
                form = InstanceIsA(subject, p.read_noun())
            elif nxt == "not":
                p.take()
                form = HasAttribute(subject, p.read_adjective(), Polarity.NEGATE)
            else:
                form = HasAttribute(subject, p.read_adjective(), Polarity.AFFIRM)
        elif f == "does":
            p.take()
            p.expect_word("not")
            verb = p.read_verb_base()
            form = RelationStmt(subject, verb, p.read_objlist(), Polarity.NEGATE)
        elif f == "only":
            p.take()
            verb = p.read_verb_third()
            form = RelationStmt(subject, verb, p.read_objlist(), Polarity.AFFIRM, only=True)
        else:
            verb = p.read_verb_third()
            form = RelationStmt(subject, verb, p.read_objlist(), Polarity.AFFIRM)

    p.expect_punct(".")
    p.expect_end()
    return Statement(form, revision, source_text)


def parse_question(tokens: list[Token], lexicon: Lexicon, source_text: str = "") -> Question:
    """Parse one question (must end with '?')."""
    end = len(source_text) if source_text else (
        tokens[-1].position + len(tokens[-1].text) if tokens else 0
    )
    p = _Parser(tokens, lexicon, end)
    if not tokens:
        p.fail("empty input")

    f = p.peek_fold()
    form: QuestionForm
    if f == "what":
        p.take()
        p.expect_word("does")
        subject = p.read_subject()
        form = WhObject(subject, p.read_verb_base())
    elif f == "who":
        p.take()
        verb = p.read_verb_third()
        form = WhSubject(verb, p.read_object())
    elif f == "is":
        p.take()
        subject = p.read_subject()
        nxt = p.peek_fold()
        if nxt in DETERMINERS:
            p.take()
            form = YesNoIsA(subject, p.read_noun())
        else:
            form = YesNoAttr(subject, p.read_adjective())
    elif f == "does":
        p.take()
        subject = p.read_subject()
        verb = p.read_verb_base()
        form = YesNoRel(subject, verb, p.read_object())
    else:
        p.fail("questions start with 'what', 'who', 'is' or 'does'", tokens[0])

    p.expect_punct("?")
    p.expect_end()
    return Question(form, source_text)


def parse_line(text: str, lexicon: Lexicon) -> Statement | Question:
    """Dispatch on the final token: '.' parses as statement, '?' as question."""
    tokens = tokenize(text)
    if not tokens:
        raise NoParseError("empty input", 0)
    last = tokens[-1].text
    if last == ".":
        return parse_statement(tokens, lexicon, text)
    if last == "?":
        return parse_question(tokens, lexicon, text)
    raise NoParseError(
        "input must end with '.' (statement) or '?' (question)",
        tokens[-1].position,
    )


# ----------------------------------------------------------------------
# canonical rendering (inverse of the parser; also used to emit corpora)


def indefinite_article(noun: str) -> str:
    return "an" if noun[:1] in ("a", "e", "i", "o", "u") else "a"


def _subject_text(s: Subject) -> str:
    if isinstance(s, ProperName):
        return s.name
    if isinstance(s, TheNoun):
        return f"the {s.noun}"
    return s.word


def _object_text(o: Object) -> str:
    if isinstance(o, ProperName):
        return o.name
    det = "the" if o.definite else indefinite_article(o.noun)
    return f"{det} {o.noun}"


_DEFAULT_LEXICON: Lexicon | None = None


def _lexicon_or_default(lexicon: Lexicon | None) -> Lexicon:
    global _DEFAULT_LEXICON
    if lexicon is not None:
        return lexicon
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = Lexicon.default()
    return _DEFAULT_LEXICON


def _third_form(base: str, lexicon: Lexicon) -> str:
    third = lexicon.base_to_third.get(base)
    if third is None:
        raise LexiconError(f"verb {base!r} not in the lexicon")
    return third


def render_statement(st: Statement, lexicon: Lexicon | None = None) -> str:
    """Canonical text for a statement AST; parsing it yields the AST back.

    Proper names keep their stored capitalization; everything else renders
    lowercase, with the sentence (or the "Actually," prefix) capitalized.
    """
    lexicon = _lexicon_or_default(lexicon)
    form = st.form
    if isinstance(form, InstanceIsA):
        body = f"{_subject_text(form.subject)} is {indefinite_article(form.noun)} {form.noun}"
    elif isinstance(form, ConceptIsA):
        body = (
            f"{indefinite_article(form.noun)} {form.noun} is "
            f"{indefinite_article(form.parent)} {form.parent}"
        )
    elif isinstance(form, HasAttribute):
        neg = "not " if form.polarity == Polarity.NEGATE else ""
        body = f"{_subject_text(form.subject)} is {neg}{form.adjective}"
    elif isinstance(form, RelationStmt):
        objects = " and ".join(_object_text(o) for o in form.objects)
        subj = _subject_text(form.subject)
        if form.polarity == Polarity.NEGATE:
            body = f"{subj} does not {form.verb} {objects}"
        else:
            only = "only " if form.only else ""
            body = f"{subj} {only}{_third_form(form.verb, lexicon)} {objects}"
    else:
        raise TypeError(f"not a statement form: {form!r}")
    if st.revision_marker:
        return f"Actually, {body}."
    return body[0].upper() + body[1:] + "."


def render_question(q: Question, lexicon: Lexicon | None = None) -> str:
    lexicon = _lexicon_or_default(lexicon)
    form = q.form
    if isinstance(form, WhObject):
        body = f"what does {_subject_text(form.subject)} {form.verb}"
    elif isinstance(form, WhSubject):
        body = f"who {_third_form(form.verb, lexicon)} {_object_text(form.obj)}"
    elif isinstance(form, YesNoIsA):
        body = f"is {_subject_text(form.subject)} {indefinite_article(form.noun)} {form.noun}"
    elif isinstance(form, YesNoAttr):
        body = f"is {_subject_text(form.subject)} {form.adjective}"
    elif isinstance(form, YesNoRel):
        body = f"does {_subject_text(form.subject)} {form.verb} {_object_text(form.obj)}"
    else:
        raise TypeError(f"not a question form: {form!r}")
    return body[0].upper() + body[1:] + "?"
