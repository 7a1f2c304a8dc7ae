"""Counting conjugacy classes of cardioid centers: closed form, Burnside, enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import InvariantViolation, ValidationError


def _check(n: int, d: int, min_n: int = 2) -> None:
    if n < min_n or d < 1:
        raise ValidationError(f"need n >= {min_n} and d >= 1, got ({n}, {d})")


def gcd_pair(n: int, d: int) -> int:
    g1 = math.gcd(n - 1, d + 1)
    g2 = math.gcd(n - 1, n + d)
    if g1 != g2:
        raise InvariantViolation(f"gcd(n-1, d+1) = {g1} but gcd(n-1, n+d) = {g2}")
    return g1


@dataclass(frozen=True)
class ClassPartition:
    n: int
    d: int
    g: int
    a: int
    classes: Tuple[Tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class DihedralAction:
    """D_{2a} acting on cardioid indices 0..n-2 via r: k -> k+g and s: k -> -k (mod n-1).

    Elements are (reflect, j) pairs standing for s**reflect * r**j.
    """

    n: int
    g: int

    @property
    def size(self) -> int:
        return self.n - 1

    @property
    def a(self) -> int:
        return self.size // self.g

    def elements(self) -> List[Tuple[int, int]]:
        return [(s, j) for s in (0, 1) for j in range(self.a)]

    def act(self, elem: Tuple[int, int], k: int) -> int:
        s, j = elem
        k = (k + j * self.g) % self.size
        return (-k) % self.size if s else k

    def fixed(self, elem: Tuple[int, int]) -> List[int]:
        return [k for k in range(self.size) if self.act(elem, k) == k]

    def check_relations(self) -> None:
        idx = range(self.size)
        r = (0, 1)
        s = (1, 0)
        ra = [k for k in idx]
        for _ in range(self.a):
            ra = [self.act(r, k) for k in ra]
        if ra != list(idx):
            raise InvariantViolation("r**a is not the identity")
        if any(self.act(s, self.act(s, k)) != k for k in idx):
            raise InvariantViolation("s**2 is not the identity")
        # s r s == r^-1, i.e. s r s r == id
        if any(self.act(r, self.act(s, self.act(r, self.act(s, k)))) != k for k in idx):
            raise InvariantViolation("s r s != r^-1")


def count_closed_form(n: int, d: int) -> int:
    _check(n, d)
    g = gcd_pair(n, d)
    return 1 + g // 2 if g % 2 == 0 else (g + 1) // 2


def fix_counts(n: int, d: int) -> dict:
    act = DihedralAction(n, gcd_pair(n, d))
    return {e: len(act.fixed(e)) for e in act.elements()}


def count_burnside(n: int, d: int) -> int:
    _check(n, d, 3)
    act = DihedralAction(n, gcd_pair(n, d))
    total = sum(len(act.fixed(e)) for e in act.elements())
    count = Fraction(total, 2 * act.a)
    if count.denominator != 1:
        raise InvariantViolation(f"Burnside average {count} is not an integer")
    return int(count)


def enumerate_partition(n: int, d: int) -> ClassPartition:
    _check(n, d)
    g = gcd_pair(n, d)
    if n == 2:
        return ClassPartition(n, d, g, 1, ((0,),))
    act = DihedralAction(n, g)
    gens = [(0, 1), (1, 0)]
    seen = set()
    classes = []
    for k in range(act.size):
        if k in seen:
            continue
        orbit = {k}
        frontier = [k]
        while frontier:
            x = frontier.pop()
            for e in gens:
                y = act.act(e, x)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return ClassPartition(n, d, g, act.a, tuple(classes))


def classes_report(n: int, d: int) -> dict:
    part = enumerate_partition(n, d)
    return {
        "n": n,
        "d": d,
        "g": part.g,
        "a": part.a,
        "count_closed_form": count_closed_form(n, d),
        "count_burnside": count_burnside(n, d) if n >= 3 else 1,
        "classes": [list(c) for c in part.classes],
    }
