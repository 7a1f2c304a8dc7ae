"""Itineraries of Julia-set points through the angular sectors, with junction identifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .errors import AlphabetMismatch, NotInSector, SectorAmbiguity, ValidationError
from .rational_map import MapParams, derivative, evaluate
from .regions import RegionMap, sector_info

PERIOD_TOL = 1e-7

Word = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (preperiod, period)


def canonical(pre: Sequence[int], per: Sequence[int]) -> Word:
    """Shortest period, then shortest preperiod, for the eventually periodic word pre + per per ..."""
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise ValidationError("period must be nonempty")
    m = len(per)
    for p in range(1, m + 1):
        if m % p == 0 and per == per[:p] * (m // p):
            per = per[:p]
            break
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = (per[-1],) + per[:-1]
    return pre, per


def _expand(word: Word, length: int) -> Tuple[int, ...]:
    pre, per = word
    out = list(pre[:length])
    i = 0
    while len(out) < length:
        out.append(per[i % len(per)])
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Itinerary:
    """Eventually periodic sector word; `alternates` holds other valid readings of a junction point.

    Uncertified itineraries come from orbits that were not seen to close up:
    only their first `length` digits are meaningful.
    """

    preperiod: Tuple[int, ...]
    period: Tuple[int, ...]
    alphabet_size: int
    certified: bool = True
    length: int = 0
    alternates: Tuple[Word, ...] = field(default=(), compare=False)

    def __post_init__(self):
        pre, per = canonical(self.preperiod, self.period)
        if any(not 0 <= s < self.alphabet_size for s in pre + per):
            raise ValidationError(f"digits must lie in 0..{self.alphabet_size - 1}")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        alts = tuple(w for w in dict.fromkeys(canonical(*a) for a in self.alternates) if w != (pre, per))
        object.__setattr__(self, "alternates", alts)

    @property
    def word(self) -> Word:
        return self.preperiod, self.period

    @property
    def readings(self) -> Tuple[Word, ...]:
        return (self.word,) + self.alternates

    def digits(self, count: int) -> Tuple[int, ...]:
        return _expand(self.word, count)

    def __str__(self):
        head = " ".join(str(s) for s in self.preperiod)
        tail = "[" + " ".join(str(s) for s in self.period) + "]"
        return f"{head} {tail}" if head else tail


def _rule_pair(x: Word, y: Word, N: int) -> bool:
    # (s, 0, (N-1) bar) ~ (s, N-1, 0 bar), and the base case (0 bar) ~ ((N-1) bar)
    top = N - 1
    if {x, y} == {((), (0,)), ((), (top,))}:
        return True
    (px, qx), (py, qy) = x, y
    if len(px) != len(py) or not px or px[:-1] != py[:-1]:
        return False
    ends = {(px[-1], qx), (py[-1], qy)}
    return ends == {(0, (top,)), (top, (0,))}


def quotient_equal(x: Itinerary, y: Itinerary) -> bool:
    if x.alphabet_size != y.alphabet_size:
        raise AlphabetMismatch(f"alphabets {x.alphabet_size} and {y.alphabet_size}")
    if not (x.certified and y.certified):
        lengths = [it.length for it in (x, y) if not it.certified]
        L = min(lengths)
        return any(_expand(a, L) == _expand(b, L) for a in x.readings for b in y.readings)
    N = x.alphabet_size
    return any(a == b or _rule_pair(a, b, N) for a in x.readings for b in y.readings)


def _shift_word(word: Word) -> Word:
    pre, per = word
    if pre:
        return canonical(pre[1:], per)
    return canonical((), per[1:] + per[:1])


def shift(x: Itinerary) -> Itinerary:
    pre, per = _shift_word(x.word)
    return Itinerary(
        pre,
        per,
        x.alphabet_size,
        certified=x.certified,
        length=max(x.length - 1, 0),
        alternates=tuple(_shift_word(a) for a in x.alternates),
    )


def _find_period(orbit: List[complex]):
    # earliest (start, period) at which the orbit is seen to repeat
    last = len(orbit) - 1
    w = orbit[last]
    for i in range(last):
        if abs(w - orbit[i]) <= PERIOD_TOL * (1.0 + abs(w)):
            return i, last - i
    return None


def itinerary_of(params: MapParams, rmap: RegionMap, z: complex, length: int = 12) -> Itinerary:
    """Sector word of z, read off the angular sectors of rmap.

    Iterates inside the tie band of a sector ray get the digit of the side a
    tangent vector has been carried to: starting from +i z and from -i z gives
    the two readings of a junction point.
    """
    if length < 1:
        raise ValidationError("length must be >= 1")
    N = params.degree
    orbit = [complex(z)]
    infos = []
    span = None
    for k in range(length + 1):
        w = orbit[-1]
        if k > 0:
            span = _find_period(orbit)
            if span is not None or k == length:
                break
        try:
            infos.append(sector_info(rmap, w))
        except NotInSector as exc:
            raise SectorAmbiguity(f"iterate {k} of {z} is not on the Julia set: {exc}") from exc
        orbit.append(complex(evaluate(params, w)))

    readings = []
    for sign in (1j, -1j):
        tangent = sign * orbit[0]
        digits = []
        for w, info in zip(orbit, infos):
            if info.boundary is None:
                digits.append(info.sector)
            else:
                ccw = (tangent / w).imag >= 0
                digits.append(info.boundary if ccw else (info.boundary - 1) % N)
            tangent = derivative(params, w) * tangent
            tangent /= abs(tangent) or 1.0
        readings.append(digits)

    words = []
    for digits in readings:
        if span is not None:
            i, p = span
            words.append(canonical(digits[:i], digits[i : i + p]))
        else:
            words.append(canonical(digits, digits[-1:]))
    return Itinerary(
        words[0][0],
        words[0][1],
        N,
        certified=span is not None,
        length=0 if span is not None else len(infos),
        alternates=tuple(words[1:]),
    )
