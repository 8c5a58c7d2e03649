#!/usr/bin/env python3
"""Generate the bundled conformance corpus and its truncation catalogue.

Emits tests/data/conformance_corpus.txt (one source-encoded formula per
line) and tests/data/truncated_divergences.json, which documents, for every
truncated corpus string, the columns where the substring oracle and the AST
extractor are expected to disagree.

The corpus is written in the source encoding: Unicode superscript digits for
sizes and series prefixes, the fraction slash for alternating sizes, and
caret π/χ for superscript Greek prefixes.  Untruncated strings are
constructed so that every size superscript is followed by a space (or ends
the string), which is exactly the regime where the substring oracle and the
extractor agree.

Divergence rule for a string base + "...": the oracle sees the trailing
superscript run followed by "." instead of a space, so
  - it misses that run's size or alternating column (unless the same token
    occurs earlier followed by a space), and
  - a single superscript digit 2-7 at the end wrongly registers as a
    multiple-series mark (unless the extractor has that series anyway).

Deterministic: reruns reproduce the files byte for byte.
"""

from __future__ import annotations

import json
import random
import re
from pathlib import Path

SUP = "⁰¹²³⁴⁵⁶⁷⁸⁹"
SLASH = "⁄"
RUN_RE = re.compile(f"[{SUP}{SLASH}]+")

SERIES_NAMES = {
    2: "double", 3: "triple", 4: "quadruple",
    5: "quintuple", 6: "sextuple", 7: "septuple",
}
ALT_PAIRS = [(4, 2), (4, 6), (4, 8), (6, 8), (8, 4), (8, 6)]
LETTERS = list("ABCDEFGHIKLMNOPQRSTVXYZ")


def sup(n: int) -> str:
    return "".join(SUP[int(d)] for d in str(n))


def systematic() -> list[str]:
    out = []
    for n in range(1, 21):
        out.append(f"A{sup(n)}")
        out.append(f"A-F{sup(n)} G{sup(2)}")
    for n in (21, 24, 36):
        out.append(f"A-C{sup(n)} D{sup(8)}")
    for a, b in ALT_PAIRS:
        out.append(f"A-D{sup(a)}{SLASH}{sup(b)}")
        out.append(f"π{sup(4)} A-D{sup(a)}{SLASH}{sup(b)} E{sup(2)}")
    for a, b in [(6, 4), (2, 8), (12, 6)]:  # outside the six-pair schema
        out.append(f"A-B{sup(a)}{SLASH}{sup(b)} C{sup(4)}")
    for i in range(2, 8):
        out.append(f"A-F{sup(4)} {sup(i)}A-F{sup(4)}")
        out.append(f"{sup(i)}B{sup(8)}")
    out += [
        "π⁴ A-Z⁸ 2A⁶",
        "1# π⁴ A-Z⁸ 2A⁶",
        "3# [A] ⁸ B- Z⁸ (Z8 blank)",
        "8# [A] ⁸ B- 2A⁸ (2A8 blank)",
        "11# [A] ⁸ B- Y⁸",
        "[A]⁸ B-Y⁸",
        "[B] ⁴ C-D⁸",
        "2A⁶ 2B-2C⁴",
        "B-2A⁸",
        "A⁸ (A5 + ^χA² B-D⁸ )",
        "B⁴ (B2 + ^πC² )",
        "C⁸ (C3 + χD² E-F⁴ )",
        "^πA⁴ B-C⁸",
        "^χB² C⁴",
        "χ¹ A-B⁸",
        "π² χ⁴ A⁸",
        "*⁴ A-Z⁸",
        "†² A-C⁴",
        "§⁸",
        "A⁸ (approbation on last leaf)",
        "D⁴ (D4 blank)",
        "5# [A] ⁸ B- L⁸ M⁶",
    ]
    return out


def random_strings(rng: random.Random, count: int) -> list[str]:
    out = []
    for _ in range(count):
        items = []
        used = rng.sample(LETTERS, k=rng.randint(1, 4))
        for letter in sorted(used):
            roll = rng.random()
            prefix = ""
            if roll < 0.15:
                prefix = sup(rng.randint(2, 7))
            elif roll < 0.22:
                prefix = rng.choice(["^π", "^χ"])
            elif roll < 0.30:
                prefix = str(rng.randint(2, 3))
            # no plain-digit repeat prefix on a range start: the end mark
            # would fall in an earlier alphabet pass
            if rng.random() < 0.4 and letter < "X" and not prefix.isdigit():
                end = rng.choice([l for l in LETTERS if l > letter])
                mark = f"{letter}-{end}"
            else:
                mark = letter
            if rng.random() < 0.12:
                a = rng.choice([4, 6, 8])
                b = rng.choice([x for x in (2, 4, 6) if x != a])
                size = sup(a) + SLASH + sup(b)
            else:
                size = sup(rng.randint(1, 20))
            items.append(prefix + mark + size)
        s = " ".join(items)
        if rng.random() < 0.2:
            s = f"{rng.randint(1, 9)}# " + s
        if rng.random() < 0.15:
            blank_leaf = sorted(used)[-1] + str(rng.randint(1, 8))
            s += f" ({blank_leaf} blank)"
        out.append(s)
    return out


def _sized_tokens_with_space(text: str) -> set[str]:
    """Superscript runs followed by a space (oracle-visible size tokens)."""
    padded = text + " "
    seen = set()
    for m in RUN_RE.finditer(padded):
        if padded[m.end() : m.end() + 1] == " ":
            seen.add(m.group(0))
    return seen


def _series_in(text: str) -> set[int]:
    """Series indices visible to the extractor: superscript digit prefixes."""
    found = set()
    for m in RUN_RE.finditer(text):
        run = m.group(0)
        nxt = text[m.end() : m.end() + 1]
        if len(run) == 1 and run in SUP and nxt.isalpha():
            found.add(SUP.index(run))
    return found


def divergence(base: str) -> dict[str, list[int]]:
    m = None
    for m in RUN_RE.finditer(base):
        pass
    if m is None or m.end() != len(base):
        return {}
    run = m.group(0)
    diffs: dict[str, list[int]] = {}
    earlier = _sized_tokens_with_space(base[: m.start()])
    column = None
    if SLASH in run:
        a, b = run.split(SLASH)
        pair = (SUP.index(a) if len(a) == 1 else int("".join(str(SUP.index(c)) for c in a)),
                SUP.index(b) if len(b) == 1 else int("".join(str(SUP.index(c)) for c in b)))
        if pair in ALT_PAIRS:
            column = f"{pair[0]}/{pair[1]}"
    else:
        n = int("".join(str(SUP.index(c)) for c in run))
        if 1 <= n <= 20:
            column = str(n)
    if column is not None and run not in earlier:
        diffs[column] = [0, 1]  # oracle misses, extractor sees
    if len(run) == 1 and run in SUP:
        i = SUP.index(run)
        if i in SERIES_NAMES and i not in _series_in(base):
            diffs[SERIES_NAMES[i]] = [1, 0]  # oracle gains a bogus multiple
    return diffs


def main() -> None:
    rng = random.Random(20180831)
    corpus = systematic() + random_strings(rng, 130)
    # Truncated variants of a deterministic sample of bases.
    truncated: dict[str, dict[str, list[int]]] = {}
    bases = [corpus[i] for i in range(0, len(corpus), 7)][:30]
    for base in bases:
        s = base + "..."
        truncated[s] = divergence(base)
        corpus.append(s)

    data_dir = Path(__file__).resolve().parent.parent / "tests" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    (data_dir / "conformance_corpus.txt").write_text(
        "\n".join(corpus) + "\n", encoding="utf-8"
    )
    (data_dir / "truncated_divergences.json").write_text(
        json.dumps(truncated, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    print(f"{len(corpus)} corpus strings, {len(truncated)} truncated")


if __name__ == "__main__":
    main()
