"""Corpus of pure braids shared by the slow suites, computed once per session."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from mubar.cli import corpus_words
from mubar.diagrams import StringLinkDiagram
from mubar.milnor import LinkingData, MuTable, mu_table
from mubar.words import Braid, Word, nilpotent_longitudes

Q = 9  # mu-bar depth; Gamma is then exact through z^8


@dataclass
class Item:
    braid: Braid
    diagram: StringLinkDiagram
    longitudes: list[Word]
    linking: LinkingData
    mu: MuTable

    @property
    def name(self) -> str:
        return f"m{self.braid.strands}:{','.join(map(str, self.braid.word)) or 'id'}"


@lru_cache(maxsize=None)
def corpus(strands: int = 3, max_letters: int = 6) -> tuple[Item, ...]:
    out = []
    for b in corpus_words(strands, max_letters):
        d = StringLinkDiagram.from_braid(b)
        lw = nilpotent_longitudes(d.wirtinger(), Q)
        out.append(Item(b, d, lw, LinkingData.from_longitudes(lw), mu_table(lw, Q)))
    return tuple(out)


def split_items() -> list[Item]:
    return [it for it in corpus() if it.linking.split]
