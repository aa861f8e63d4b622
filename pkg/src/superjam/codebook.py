"""Private jamming codebook derived from a shared knowledge base.

Each knowledge-base item deterministically yields one inner 4-QAM label
sequence: the item payload is hashed (SHA-256) and the digest expanded
through SHAKE-256 into 2L bits, read as L labels.  Alice and Bob can both
rebuild every codeword from the shared data, so only a codeword index ever
needs to be exchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
import hashlib
from pathlib import Path

import numpy as np

from . import rng
from .constellation import outer_point


@dataclass(frozen=True)
class KnowledgeBase:
    """Shared private items as (id, payload) pairs, canonically ordered by id."""

    items: tuple[tuple[str, bytes], ...]

    def __post_init__(self) -> None:
        ids = [item_id for item_id, _ in self.items]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate knowledge-base ids: {dupes}")
        object.__setattr__(self, "items",
                           tuple(sorted(self.items, key=lambda kv: kv[0])))

    @classmethod
    def from_dir(cls, path) -> "KnowledgeBase":
        """Ingest a directory: each regular file is one item, id = file name."""
        base = Path(path)
        items = [(p.name, p.read_bytes())
                 for p in sorted(base.iterdir()) if p.is_file()]
        if not items:
            raise ValueError(f"{base}: no regular files found")
        return cls(tuple(items))

    def digest(self) -> str:
        """SHA-256 over the canonical (id, payload) sequence, hex encoded."""
        h = hashlib.sha256()
        for item_id, payload in self.items:
            ident = item_id.encode()
            h.update(len(ident).to_bytes(8, "big"))
            h.update(ident)
            h.update(len(payload).to_bytes(8, "big"))
            h.update(payload)
        return h.hexdigest()


def derive_inner_sequence(payload: bytes, length: int) -> np.ndarray:
    """Expand a payload into ``length`` uniform 2-bit jamming labels.

    SHAKE-256 applied to the payload's SHA-256 digest yields a keystream
    statistically independent of any message sequence; two distinct
    payloads agree on any given label with probability 1/4.
    """
    if not payload:
        raise ValueError("payload must be non-empty")
    if length < 1:
        raise ValueError("length must be >= 1")
    digest = hashlib.sha256(payload).digest()
    n_bytes = (length + 3) // 4
    stream = np.frombuffer(hashlib.shake_256(digest).digest(n_bytes),
                           dtype=np.uint8)
    labels = np.empty(n_bytes * 4, dtype=np.uint8)
    for pos, shift in enumerate((6, 4, 2, 0)):
        labels[pos::4] = (stream >> shift) & 3
    return labels[:length]


@dataclass(frozen=True)
class Codebook:
    """Indexed inner label sequences bound to the knowledge base they came from."""

    length: int
    kb_digest: str
    entries: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self, index: int) -> np.ndarray:
        """Label sequence of codeword ``index``."""
        return self.entries[index]

    def points(self, index: int) -> np.ndarray:
        """Unit-power constellation points of codeword ``index``."""
        return outer_point(self.entries[index])


def build_codebook(kb: KnowledgeBase, length: int) -> Codebook:
    """One codeword per knowledge-base item, in canonical id order."""
    if not kb.items:
        raise ValueError("knowledge base must be non-empty")
    entries = tuple(derive_inner_sequence(payload, length)
                    for _, payload in kb.items)
    return Codebook(length, kb.digest(), entries)


def pick_index(codebook: Codebook, seed: int, draw: int = 0) -> int:
    """Uniform codeword index, deterministic in (seed, draw)."""
    if len(codebook) == 0:
        raise ValueError("codebook is empty")
    return rng.random_index(seed, rng.STREAM_INDEX_PICK, draw, len(codebook))
