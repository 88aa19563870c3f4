"""MD5-backed digit stream.

Every random decision made by the generator is read from a :class:`HexStream`.
The stream walks the 32 hex digits of an MD5 digest; after each full pass the
starting position shifts by ``stride`` so that consecutive passes do not
replay the same digit order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

DIGEST_LEN = 32
DEFAULT_STRIDE = 7


@dataclass
class HexStream:
    digest: str
    stride: int = DEFAULT_STRIDE
    cursor: int = 0
    round: int = 0

    def __post_init__(self) -> None:
        if len(self.digest) != DIGEST_LEN:
            raise ValueError(f"digest must have {DIGEST_LEN} hex digits, got {len(self.digest)}")
        int(self.digest, 16)
        self.digest = self.digest.lower()
        # odd stride keeps the pass offset cycling through all 32 residues
        if self.stride < 1 or self.stride % 2 == 0:
            raise ValueError(f"stride must be a positive odd number, got {self.stride}")
        self._digits = [int(c, 16) for c in self.digest]

    @property
    def position(self) -> int:
        """Digest index the next read will return."""
        return (self.round * self.stride + self.cursor) % DIGEST_LEN

    @property
    def consumed(self) -> int:
        return self.round * DIGEST_LEN + self.cursor

    def next_hex(self) -> int:
        digit = self._digits[self.position]
        self.cursor += 1
        if self.cursor == DIGEST_LEN:
            self.cursor = 0
            self.round += 1
        return digit

    def next_fraction(self) -> Fraction:
        return Fraction(self.next_hex(), 16)

    def copy(self) -> HexStream:
        return HexStream(self.digest, self.stride, self.cursor, self.round)


def md5_hex(info: str | bytes) -> str:
    data = info.encode("utf-8") if isinstance(info, str) else bytes(info)
    return hashlib.md5(data).hexdigest()


def derive(info: str | bytes, stride: int = DEFAULT_STRIDE) -> HexStream:
    """Build a fresh stream from an identity string (UTF-8 encoded when text)."""
    return HexStream(md5_hex(info), stride)


def seed_text(student_id: str, assignment_tag: str) -> str:
    return f"{student_id}|{assignment_tag}"
