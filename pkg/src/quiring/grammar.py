"""Collation formula grammar: normalization, tokenizer, parser, serializer.

Formulas such as ``1# π⁴ A- Z⁸ 2A⁶`` are normalized to a canonical caret
encoding (``π^4 A-Z^8 2A^6``), tokenized, and parsed into an AST of
gathering items.  The serializer emits the canonical form back, and
``expand_range`` unfolds ``A-F`` style signature ranges over a configurable
signing alphabet.

All values are frozen dataclasses; every operation is a pure function and
safe to call from multiple threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum, auto
from typing import Iterator, Optional, Sequence, Union

from .errors import EmptyInputError, EmptyRangeError, LetterNotInAlphabetError

#: Hand-press signing alphabet: 23 letters, no J, U or W.
DEFAULT_ALPHABET: tuple[str, ...] = tuple("ABCDEFGHIKLMNOPQRSTVXYZ")

_SUPERSCRIPT_TO_ASCII = {
    "⁰": "0",
    "¹": "1",
    "²": "2",
    "³": "3",
    "⁴": "4",
    "⁵": "5",
    "⁶": "6",
    "⁷": "7",
    "⁸": "8",
    "⁹": "9",
    "⁄": "/",  # fraction slash, used for alternating sizes like ⁴⁄²
}

_SUP_CLASS = "[" + "".join(_SUPERSCRIPT_TO_ASCII) + "]"
_OTHER_MARK_SYMBOLS = frozenset("*†‡§")  # * † ‡ §
_MARK_START = "A-Zπχ\\[\\*†‡§"

_VOLUME_RE = re.compile(r"^(\d+)#\s*")
_DETACHED_SIZE_RE = re.compile(rf" +(?={_SUP_CLASS}+(?![{_MARK_START}]))")
_DASH_SPACE_RE = re.compile(r"\s*-\s*")
_SUP_RUN_RE = re.compile(rf"{_SUP_CLASS}+")


class MarkClass(Enum):
    """Symbol class of a quire mark."""

    LATIN = auto()
    PI = auto()
    CHI = auto()
    OTHER = auto()


@dataclass(frozen=True)
class GreekPrefix:
    """A π or χ attached immediately before a letter mark.

    ``superscript`` distinguishes the superscript form (``^χA``), which marks
    an inferred/inserted series, from a plain attached Greek letter (``χA``).
    """

    letter: str  # "π" or "χ"
    superscript: bool


@dataclass(frozen=True)
class Signature:
    """One quire mark with its prefixes."""

    mark_class: MarkClass
    text: str
    alphabet_repeat: int = 1  # plain-digit prefix: 2A means second alphabet pass
    series_index: int = 1  # superscript-digit prefix: ^2A means second series
    bracketed: bool = False
    prefix: Optional[GreekPrefix] = None


@dataclass(frozen=True)
class Uniform:
    leaves: int


@dataclass(frozen=True)
class Alternating:
    first: int
    second: int


SizeSpec = Union[Uniform, Alternating]


@dataclass(frozen=True)
class BlankLeaf:
    leaf: str


@dataclass(frozen=True)
class RawNote:
    text: str


@dataclass(frozen=True)
class Insertion:
    anchor: str
    items: tuple["GatheringItem", ...]


Annotation = Union[BlankLeaf, Insertion, RawNote]


@dataclass(frozen=True)
class GatheringItem:
    start: Signature
    end: Optional[Signature]
    size: SizeSpec
    annotations: tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class NormalizedFormula:
    volume_number: Optional[int]
    body: str
    truncated: bool


@dataclass(frozen=True)
class CollationFormula:
    source: str
    normalized: NormalizedFormula
    items: tuple[GatheringItem, ...]


class ParseReason(Enum):
    EMPTY_INPUT = "EmptyInput"
    UNEXPECTED_CHARACTER = "UnexpectedCharacter"
    DANGLING_RANGE = "DanglingRange"
    SIZE_MISSING = "SizeMissing"
    UNBALANCED_PAREN = "UnbalancedParen"
    UNBALANCED_BRACKET = "UnbalancedBracket"


@dataclass(frozen=True)
class ParseFailure:
    position: int  # offset into the normalized body
    reason: ParseReason
    message: str


@dataclass(frozen=True)
class ParseReport:
    formula: Optional[CollationFormula]
    failure: Optional[ParseFailure]

    @property
    def ok(self) -> bool:
        return self.formula is not None


def structurally_equal(a: CollationFormula, b: CollationFormula) -> bool:
    """Structural equality: items, volume and truncation flag; sources may differ."""
    return (
        a.items == b.items
        and a.normalized.volume_number == b.normalized.volume_number
        and a.normalized.truncated == b.normalized.truncated
    )


# ---------------------------------------------------------------------------
# normalization


def normalize(raw: str) -> NormalizedFormula:
    """Canonicalize a raw formula string.

    Strips a leading ``N#`` volume marker, maps Unicode superscripts to caret
    form, removes presentation whitespace (``A- Z`` → ``A-Z``, ``[A] ⁸`` →
    ``[A]^8``) and records a trailing ``...`` as display truncation.
    Idempotent on its own output.
    """
    if raw is None or not raw.strip():
        raise EmptyInputError("empty collation formula")
    s = " ".join(raw.split())
    s = s.replace("…", "...")

    volume = None
    m = _VOLUME_RE.match(s)
    if m:
        volume = int(m.group(1))
        s = s[m.end():]

    truncated = False
    if s.endswith("..."):
        truncated = True
        s = s[:-3].rstrip()
        while s.endswith("."):
            s = s[:-1].rstrip()

    s = _DASH_SPACE_RE.sub("-", s)
    # A size superscript separated from its mark ("[A] ⁸") is display noise;
    # a superscript run leading into a mark ("²A") is a series prefix and keeps
    # its space.
    s = _DETACHED_SIZE_RE.sub("", s)
    s = _SUP_RUN_RE.sub(
        lambda m: "^" + "".join(_SUPERSCRIPT_TO_ASCII[c] for c in m.group(0)), s
    )
    s = " ".join(s.split())
    if not s:
        raise EmptyInputError("formula has no body after normalization")
    return NormalizedFormula(volume_number=volume, body=s, truncated=truncated)


# ---------------------------------------------------------------------------
# tokenizer


class TokenKind(Enum):
    MARK = auto()          # signature mark: A, Bb, π, χ, *, †
    DIGIT_PREFIX = auto()  # plain digits before a mark: 2A
    SERIES_PREFIX = auto() # ^2A, ^πA, ^χA
    SIZE = auto()          # ^8 or ^4/2
    DASH = auto()
    LBRACKET = auto()
    RBRACKET = auto()
    LPAREN = auto()
    RPAREN = auto()
    PLUS = auto()
    WORD = auto()          # note words and leaf-reference digits
    SPACE = auto()


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    pos: int


class TokenizeError(Exception):
    def __init__(self, position: int, message: str) -> None:
        super().__init__(message)
        self.position = position


_LETTER_RUN_RE = re.compile(r"[A-Za-z]+")
_DIGIT_RUN_RE = re.compile(r"\d+")
_WORD_RUN_RE = re.compile(r"[^\s()\[\]\-+^]+")

_SINGLE_TOKENS = {
    " ": TokenKind.SPACE,
    "-": TokenKind.DASH,
    "[": TokenKind.LBRACKET,
    "]": TokenKind.RBRACKET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "+": TokenKind.PLUS,
}


def _is_mark_start(ch: str) -> bool:
    return ch.isupper() or ch in ("π", "χ", "[") or ch in _OTHER_MARK_SYMBOLS


def tokenize(normalized: NormalizedFormula) -> list[Token]:
    """Tokenize a normalized body.  The tokens cover the body exactly."""
    body = normalized.body
    tokens: list[Token] = []
    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        if ch in _SINGLE_TOKENS:
            tokens.append(Token(_SINGLE_TOKENS[ch], ch, i))
            i += 1
            continue
        if ord(ch) < 32:
            raise TokenizeError(i, f"control character {ch!r}")
        if ch == "^":
            nxt = body[i + 1] if i + 1 < n else ""
            if nxt in ("π", "χ"):
                tokens.append(Token(TokenKind.SERIES_PREFIX, body[i : i + 2], i))
                i += 2
                continue
            m = _DIGIT_RUN_RE.match(body, i + 1)
            if not m:
                raise TokenizeError(i, "caret not followed by digits or π/χ")
            j = m.end()
            if j < n and body[j] == "/":
                m2 = _DIGIT_RUN_RE.match(body, j + 1)
                if not m2:
                    raise TokenizeError(j, "alternating size missing second number")
                tokens.append(Token(TokenKind.SIZE, body[i : m2.end()], i))
                i = m2.end()
                continue
            digits = m.group(0)
            if len(digits) == 1 and j < n and _is_mark_start(body[j]):
                tokens.append(Token(TokenKind.SERIES_PREFIX, body[i:j], i))
            else:
                tokens.append(Token(TokenKind.SIZE, body[i:j], i))
            i = j
            continue
        if ch in ("π", "χ") or ch in _OTHER_MARK_SYMBOLS:
            tokens.append(Token(TokenKind.MARK, ch, i))
            i += 1
            continue
        m = _LETTER_RUN_RE.match(body, i)
        if m:
            kind = TokenKind.MARK if m.group(0)[0].isupper() else TokenKind.WORD
            tokens.append(Token(kind, m.group(0), i))
            i = m.end()
            continue
        m = _DIGIT_RUN_RE.match(body, i)
        if m:
            j = m.end()
            kind = (
                TokenKind.DIGIT_PREFIX
                if j < n and _is_mark_start(body[j])
                else TokenKind.WORD
            )
            tokens.append(Token(kind, m.group(0), i))
            i = j
            continue
        m = _WORD_RUN_RE.match(body, i)
        if m:
            tokens.append(Token(TokenKind.WORD, m.group(0), i))
            i = m.end()
            continue
        raise TokenizeError(i, f"unexpected character {ch!r}")
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Fail(Exception):
    def __init__(self, position: int, reason: ParseReason, message: str) -> None:
        super().__init__(message)
        self.position = position
        self.reason = reason
        self.message = message


class _Parser:
    def __init__(self, tokens: Sequence[Token], body: str) -> None:
        self.tokens = list(tokens)
        self.body = body
        self.i = 0

    # -- token cursor helpers

    def peek(self, offset: int = 0) -> Optional[Token]:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def skip_spaces(self) -> None:
        while (t := self.peek()) is not None and t.kind is TokenKind.SPACE:
            self.i += 1

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def here(self) -> int:
        t = self.peek()
        return t.pos if t is not None else len(self.body)

    # -- grammar

    def parse_formula(self) -> tuple[GatheringItem, ...]:
        items: list[GatheringItem] = []
        self.skip_spaces()
        while not self.at_end():
            tok = self.peek()
            assert tok is not None
            if tok.kind is TokenKind.LPAREN:
                if not items:
                    raise _Fail(
                        tok.pos,
                        ParseReason.UNEXPECTED_CHARACTER,
                        "annotation with no preceding gathering",
                    )
                ann = self.parse_annotation()
                items[-1] = replace(
                    items[-1], annotations=items[-1].annotations + (ann,)
                )
            elif tok.kind is TokenKind.RPAREN:
                raise _Fail(tok.pos, ParseReason.UNBALANCED_PAREN, "stray ')'")
            elif tok.kind is TokenKind.RBRACKET:
                raise _Fail(tok.pos, ParseReason.UNBALANCED_BRACKET, "stray ']'")
            else:
                items.append(self.parse_item())
            self.skip_spaces()
        if not items:
            raise _Fail(0, ParseReason.EMPTY_INPUT, "no gathering items")
        return tuple(items)

    def parse_signature(self) -> Signature:
        series = 1
        repeat = 1
        prefix: Optional[GreekPrefix] = None
        while (t := self.peek()) is not None:
            if t.kind is TokenKind.SERIES_PREFIX:
                self.next()
                if t.text[1] in ("π", "χ"):
                    prefix = GreekPrefix(letter=t.text[1], superscript=True)
                else:
                    series = int(t.text[1:])
            elif t.kind is TokenKind.DIGIT_PREFIX:
                self.next()
                repeat = int(t.text)
            else:
                break
        bracketed = False
        t = self.peek()
        if t is not None and t.kind is TokenKind.LBRACKET:
            open_tok = self.next()
            mark = self.peek()
            if mark is None or mark.kind is not TokenKind.MARK:
                raise _Fail(
                    open_tok.pos, ParseReason.UNBALANCED_BRACKET, "empty bracket"
                )
            self.next()
            close = self.peek()
            if close is None or close.kind is not TokenKind.RBRACKET:
                raise _Fail(
                    open_tok.pos, ParseReason.UNBALANCED_BRACKET, "missing ']'"
                )
            self.next()
            bracketed = True
            mark_tok = mark
        else:
            if t is None or t.kind is not TokenKind.MARK:
                raise _Fail(
                    self.here(),
                    ParseReason.UNEXPECTED_CHARACTER,
                    "expected a signature mark",
                )
            mark_tok = self.next()

        text = mark_tok.text
        if text == "π":
            klass = MarkClass.PI
        elif text == "χ":
            klass = MarkClass.CHI
        else:
            klass = MarkClass.LATIN if text[0].isalpha() else MarkClass.OTHER

        # A plain π/χ glued to a following letter mark is a prefix: χA².
        if klass in (MarkClass.PI, MarkClass.CHI) and not bracketed:
            nxt = self.peek()
            if (
                nxt is not None
                and nxt.kind is TokenKind.MARK
                and nxt.pos == mark_tok.pos + len(mark_tok.text)
                and nxt.text[0].isalpha()
            ):
                prefix = GreekPrefix(letter=text, superscript=False)
                mark_tok = self.next()
                text = mark_tok.text
                klass = MarkClass.LATIN

        return Signature(
            mark_class=klass,
            text=text,
            alphabet_repeat=repeat,
            series_index=series,
            bracketed=bracketed,
            prefix=prefix,
        )

    def parse_size(self) -> SizeSpec:
        self.skip_spaces()
        t = self.peek()
        if t is not None and t.kind is TokenKind.RBRACKET:
            raise _Fail(t.pos, ParseReason.UNBALANCED_BRACKET, "stray ']'")
        if t is None or t.kind is not TokenKind.SIZE:
            raise _Fail(self.here(), ParseReason.SIZE_MISSING, "gathering size missing")
        self.next()
        spec = t.text[1:]
        if "/" in spec:
            a_text, b_text = spec.split("/", 1)
            a, b = int(a_text), int(b_text)
            if a == b or a < 1 or b < 1:
                raise _Fail(
                    t.pos,
                    ParseReason.UNEXPECTED_CHARACTER,
                    f"degenerate alternating size {spec}",
                )
            return Alternating(a, b)
        leaves = int(spec)
        if leaves < 1 or leaves > 999:
            raise _Fail(
                t.pos, ParseReason.UNEXPECTED_CHARACTER, f"implausible size {spec}"
            )
        return Uniform(leaves)

    def parse_item(self) -> GatheringItem:
        start = self.parse_signature()
        end = None
        t = self.peek()
        if t is not None and t.kind is TokenKind.DASH:
            dash = self.next()
            nxt = self.peek()
            if nxt is None or nxt.kind not in (
                TokenKind.MARK,
                TokenKind.DIGIT_PREFIX,
                TokenKind.SERIES_PREFIX,
                TokenKind.LBRACKET,
            ):
                raise _Fail(
                    dash.pos, ParseReason.DANGLING_RANGE, "range without end mark"
                )
            end = self.parse_signature()
            if (
                start.mark_class is not MarkClass.LATIN
                or end.mark_class is not MarkClass.LATIN
            ):
                raise _Fail(
                    dash.pos,
                    ParseReason.DANGLING_RANGE,
                    "range endpoints must be letter marks",
                )
        size = self.parse_size()
        return GatheringItem(start=start, end=end, size=size)

    def parse_annotation(self) -> Annotation:
        open_tok = self.next()  # LPAREN
        depth = 1
        inner: list[Token] = []
        while True:
            if self.at_end():
                raise _Fail(
                    open_tok.pos, ParseReason.UNBALANCED_PAREN, "missing ')'"
                )
            tok = self.next()
            if tok.kind is TokenKind.LPAREN:
                depth += 1
            elif tok.kind is TokenKind.RPAREN:
                depth -= 1
                if depth == 0:
                    close_tok = tok
                    break
            inner.append(tok)
        raw = self.body[open_tok.pos + 1 : close_tok.pos]

        meaningful = [t for t in inner if t.kind is not TokenKind.SPACE]
        ann = _match_blank(meaningful)
        if ann is not None:
            return ann
        ann = _match_insertion(meaningful, raw)
        if ann is not None:
            return ann
        return RawNote(raw)


def _leafref(tokens: Sequence[Token]) -> Optional[str]:
    """Match a leaf reference like ``Z8``, ``2A8`` or ``A5``; return its text."""
    i = 0
    parts: list[str] = []
    if i < len(tokens) and tokens[i].kind in (TokenKind.DIGIT_PREFIX, TokenKind.WORD):
        if not tokens[i].text.isdigit():
            return None
        parts.append(tokens[i].text)
        i += 1
    if i >= len(tokens) or tokens[i].kind is not TokenKind.MARK:
        return None
    parts.append(tokens[i].text)
    i += 1
    if i < len(tokens):
        if tokens[i].kind is not TokenKind.WORD or not tokens[i].text.isdigit():
            return None
        parts.append(tokens[i].text)
        i += 1
    if i != len(tokens):
        return None
    return "".join(parts)


def _match_blank(tokens: Sequence[Token]) -> Optional[BlankLeaf]:
    if not tokens or tokens[-1].text != "blank":
        return None
    leaf = _leafref(tokens[:-1])
    return BlankLeaf(leaf) if leaf else None


def _match_insertion(tokens: Sequence[Token], raw: str) -> Optional[Insertion]:
    plus_at = next(
        (k for k, t in enumerate(tokens) if t.kind is TokenKind.PLUS), None
    )
    if plus_at is None:
        return None
    anchor = _leafref(tokens[:plus_at])
    if not anchor:
        return None
    rest = tokens[plus_at + 1 :]
    if not rest:
        return None
    sub = _Parser(rest, raw)
    try:
        items: list[GatheringItem] = []
        sub.skip_spaces()
        while not sub.at_end():
            items.append(sub.parse_item())
            sub.skip_spaces()
    except _Fail:
        return None
    if not items:
        return None
    return Insertion(anchor=anchor, items=tuple(items))


def parse(raw: str) -> ParseReport:
    """Parse a raw formula string; total over arbitrary text."""
    try:
        normalized = normalize(raw)
    except EmptyInputError as exc:
        return ParseReport(
            None, ParseFailure(0, ParseReason.EMPTY_INPUT, str(exc))
        )
    try:
        tokens = tokenize(normalized)
        items = _Parser(tokens, normalized.body).parse_formula()
    except TokenizeError as exc:
        return ParseReport(
            None,
            ParseFailure(exc.position, ParseReason.UNEXPECTED_CHARACTER, str(exc)),
        )
    except _Fail as exc:
        return ParseReport(
            None, ParseFailure(exc.position, exc.reason, exc.message)
        )
    return ParseReport(
        CollationFormula(source=raw, normalized=normalized, items=items), None
    )


# ---------------------------------------------------------------------------
# serialization


def _signature_text(sig: Signature) -> str:
    out = []
    if sig.prefix is not None:
        out.append(("^" if sig.prefix.superscript else "") + sig.prefix.letter)
    elif sig.series_index > 1:
        out.append(f"^{sig.series_index}")
    if sig.alphabet_repeat > 1:
        out.append(str(sig.alphabet_repeat))
    out.append(f"[{sig.text}]" if sig.bracketed else sig.text)
    return "".join(out)


def _size_text(size: SizeSpec) -> str:
    if isinstance(size, Uniform):
        return f"^{size.leaves}"
    return f"^{size.first}/{size.second}"


def _item_text(item: GatheringItem) -> str:
    s = _signature_text(item.start)
    if item.end is not None:
        s += "-" + _signature_text(item.end)
    s += _size_text(item.size)
    for ann in item.annotations:
        if isinstance(ann, BlankLeaf):
            s += f" ({ann.leaf} blank)"
        elif isinstance(ann, Insertion):
            inner = " ".join(_item_text(it) for it in ann.items)
            s += f" ({ann.anchor} + {inner})"
        else:
            s += f" ({ann.text})"
    return s


def serialize(formula: CollationFormula) -> str:
    """Emit the canonical caret-form text; re-parsing yields an equal AST."""
    parts = [_item_text(item) for item in formula.items]
    body = " ".join(parts)
    if formula.normalized.volume_number is not None:
        body = f"{formula.normalized.volume_number}# {body}"
    if formula.normalized.truncated:
        body += "..."
    return body


# ---------------------------------------------------------------------------
# range expansion


def range_length(
    item: GatheringItem, alphabet: Sequence[str] = DEFAULT_ALPHABET
) -> int:
    """Number of gatherings the item denotes (1 for a non-range item)."""
    if item.end is None:
        return 1
    try:
        start_idx = list(alphabet).index(item.start.text)
    except ValueError:
        raise LetterNotInAlphabetError(item.start.text) from None
    try:
        end_idx = list(alphabet).index(item.end.text)
    except ValueError:
        raise LetterNotInAlphabetError(item.end.text) from None
    length = (
        (item.end.alphabet_repeat - item.start.alphabet_repeat) * len(alphabet)
        + (end_idx - start_idx)
        + 1
    )
    if length <= 0:
        raise EmptyRangeError(
            f"range {item.start.text}-{item.end.text} denotes {length} gatherings"
        )
    return length


def expand_range(
    item: GatheringItem, alphabet: Sequence[str] = DEFAULT_ALPHABET
) -> list[Signature]:
    """Unfold a signature range into its individual signatures.

    ``B-2A`` runs to the end of the current alphabet pass and into the next
    repeat.  Non-range items yield their single start signature.
    """
    if item.end is None:
        return [item.start]
    alphabet = list(alphabet)
    length = range_length(item, alphabet)
    start_idx = alphabet.index(item.start.text)
    out: list[Signature] = []
    repeat = item.start.alphabet_repeat
    idx = start_idx
    for _ in range(length):
        out.append(
            Signature(
                mark_class=MarkClass.LATIN,
                text=alphabet[idx],
                alphabet_repeat=repeat,
                series_index=item.start.series_index,
                bracketed=False,
                prefix=item.start.prefix,
            )
        )
        idx += 1
        if idx == len(alphabet):
            idx = 0
            repeat += 1
    return out


def walk_items(formula: CollationFormula) -> Iterator[GatheringItem]:
    """Yield every gathering item, including those inside insertions."""

    def _walk(items: Sequence[GatheringItem]) -> Iterator[GatheringItem]:
        for item in items:
            yield item
            for ann in item.annotations:
                if isinstance(ann, Insertion):
                    yield from _walk(ann.items)

    yield from _walk(formula.items)
