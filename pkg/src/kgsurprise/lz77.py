"""Greedy sliding-window LZ77.

Each token is either a literal byte or a back-reference ``(offset, length)``
into the previous ``window`` bytes. At every position the longest match of at
least ``min_match`` bytes is taken; among equally long matches the one with
the smallest offset wins. A match may overlap the bytes it produces
(``offset < length``), so runs compress to a single token.

Match search uses ``bytes.rfind``: existence of a match is monotone in its
length, so the longest length is found by galloping then bisecting.
"""
from __future__ import annotations

from typing import Iterator, NamedTuple, Sequence, Union

from .errors import CorruptStreamError, InvalidInputError

DEFAULT_WINDOW = 32768
DEFAULT_MIN_MATCH = 3
LITERAL_COST = 1
MATCH_COST = 3


class LiteralToken(NamedTuple):
    byte: int


class MatchToken(NamedTuple):
    offset: int
    length: int


LzToken = Union[LiteralToken, MatchToken]


def _check_params(window, min_match):
    if window < 1:
        raise InvalidInputError(f"window must be >= 1, got {window}")
    if min_match < 1:
        raise InvalidInputError(f"min_match must be >= 1, got {min_match}")


def longest_match(data: bytes, pos: int, window: int, min_match: int) -> tuple[int, int]:
    """Return ``(offset, length)`` of the best match at ``pos``, or ``(0, 0)``."""
    n = len(data)
    remaining = n - pos
    if remaining < min_match or pos == 0:
        return 0, 0
    lo = max(0, pos - window)

    def find(length):
        # last start j < pos; the match may run past pos (overlap)
        return data.rfind(data[pos : pos + length], lo, pos - 1 + length)

    j = find(min_match)
    if j < 0:
        return 0, 0
    good, good_j = min_match, j
    step = 1
    bad = None
    while True:
        trial = min(good + step, remaining)
        if trial == good:
            break
        j = find(trial)
        if j < 0:
            bad = trial
            break
        good, good_j = trial, j
        step *= 2
    if bad is not None:
        while bad - good > 1:
            mid = (good + bad) // 2
            j = find(mid)
            if j < 0:
                bad = mid
            else:
                good, good_j = mid, j
    return pos - good_j, good


def iter_tokens(data: bytes, start: int = 0, window: int = DEFAULT_WINDOW, min_match: int = DEFAULT_MIN_MATCH) -> Iterator[tuple[int, LzToken]]:
    """Yield ``(position, token)`` pairs tokenizing ``data[start:]``.

    Bytes before ``start`` act as history the first matches may refer to.
    """
    _check_params(window, min_match)
    pos = start
    n = len(data)
    while pos < n:
        offset, length = longest_match(data, pos, window, min_match)
        if length:
            yield pos, MatchToken(offset, length)
            pos += length
        else:
            yield pos, LiteralToken(data[pos])
            pos += 1


def compress(data: bytes, window: int = DEFAULT_WINDOW, min_match: int = DEFAULT_MIN_MATCH) -> list[LzToken]:
    return [tok for _, tok in iter_tokens(bytes(data), 0, window, min_match)]


def decompress(tokens: Sequence[LzToken]) -> bytes:
    out = bytearray()
    for tok in tokens:
        if isinstance(tok, MatchToken):
            offset, length = tok
            if offset < 1 or length < 1 or offset > len(out):
                raise CorruptStreamError(
                    f"match (offset={offset}, length={length}) reaches before start of output "
                    f"(have {len(out)} bytes)"
                )
            start = len(out) - offset
            if offset >= length:
                out += out[start : start + length]
            else:
                # overlapping copy: repeat the period
                chunk = bytes(out[start:])
                reps, extra = divmod(length, offset)
                out += chunk * reps + chunk[:extra]
        else:
            out.append(tok.byte)
    return bytes(out)


def token_cost(token: LzToken) -> int:
    return MATCH_COST if isinstance(token, MatchToken) else LITERAL_COST


def stream_cost(tokens: Sequence[LzToken]) -> int:
    return sum(token_cost(t) for t in tokens)
