"""SMILES tokenization and vocabulary handling for the language model.

Tokenization is greedy longest-match: bracket atoms ``[...]`` are single
tokens, ``Cl``/``Br`` beat ``C``/``B``, ring-closure digits stand alone and
``%NN`` is one token. Concatenating the tokens reproduces the input exactly.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .errors import EmptyCorpus, UnknownCharacter, UnknownId

BOS, EOS, PAD, UNK = 0, 1, 2, 3
RESERVED = ("<bos>", "<eos>", "<pad>", "<unk>")

_TOKEN_RE = re.compile(
    r"""\[[^\]]*\]      # bracket atom block
      | Cl | Br         # two-letter organic-subset elements
      | %\d\d           # two-digit ring closure
      | [BCNOPSFI]      # one-letter organic-subset elements
      | [bcnops]        # aromatic organic-subset elements
      | [-=\#:/\\()1-9.*]
    """,
    re.VERBOSE,
)


def tokenize(smiles: str) -> list[str]:
    """Split a SMILES string into tokens; raises UnknownCharacter with offset."""
    if not smiles:
        raise UnknownCharacter("empty string", 0)
    out: list[str] = []
    pos = 0
    n = len(smiles)
    while pos < n:
        m = _TOKEN_RE.match(smiles, pos)
        if m is None:
            raise UnknownCharacter(f"unexpected character {smiles[pos]!r}", pos)
        out.append(m.group(0))
        pos = m.end()
    return out


@dataclass(frozen=True)
class Vocab:
    """Token <-> id mapping with fixed reserved ids 0..3 (BOS, EOS, PAD, UNK)."""

    tokens: tuple[str, ...]  # non-reserved tokens, ids start at 4
    id_of: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        mapping = {tok: i + len(RESERVED) for i, tok in enumerate(self.tokens)}
        object.__setattr__(self, "id_of", mapping)

    def __len__(self) -> int:
        return len(RESERVED) + len(self.tokens)

    def token(self, idx: int) -> str:
        if 0 <= idx < len(RESERVED):
            return RESERVED[idx]
        if idx < len(self):
            return self.tokens[idx - len(RESERVED)]
        raise UnknownId(f"id {idx} outside vocabulary of size {len(self)}")

    def lookup(self, tok: str) -> int:
        return self.id_of.get(tok, UNK)

    def to_json(self) -> str:
        return json.dumps({"tokens": list(self.tokens)})

    @classmethod
    def from_json(cls, text: str) -> "Vocab":
        return cls(tuple(json.loads(text)["tokens"]))


def build_vocab(corpus: Iterable[str]) -> Vocab:
    """Vocabulary over all tokens in the corpus, by descending frequency then lexicographic."""
    counts: Counter[str] = Counter()
    seen = False
    for smiles in corpus:
        seen = True
        counts.update(tokenize(smiles))
    if not seen:
        raise EmptyCorpus("cannot build a vocabulary from an empty corpus")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return Vocab(tuple(tok for tok, _ in ordered))


@dataclass(frozen=True)
class TokenSeq:
    ids: tuple[int, ...]
    source: str | None = None


def encode(smiles: str, vocab: Vocab) -> TokenSeq:
    """BOS + token ids + EOS; tokens missing from the vocabulary map to UNK."""
    ids = [BOS] + [vocab.lookup(t) for t in tokenize(smiles)] + [EOS]
    return TokenSeq(tuple(ids), source=smiles)


def decode(seq: TokenSeq, vocab: Vocab) -> str:
    """Inverse of encode; UNK ids decode to the visible '<unk>' marker."""
    parts = []
    for idx in seq.ids:
        if idx in (BOS, EOS, PAD):
            continue
        parts.append(vocab.token(idx))
    return "".join(parts)
