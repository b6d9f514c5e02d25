"""Coefficient rings: the integers and the integers modulo m.

All arithmetic is exact. Over Z/m every scalar is kept as its canonical
residue in 0..m-1; equality is equality of canonical forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class Ring:
    """Either Z (modulus None) or Z/m with m >= 2."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def is_modular(self) -> bool:
        return self.modulus is not None

    def normalize(self, x: int) -> int:
        return x % self.modulus if self.modulus is not None else x

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = Ring()


def ring_mod(m: int) -> Ring:
    return Ring(m)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def inverse_mod(a: int, m: int) -> int:
    g, s, _ = xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return s % m


def associate_unit(d: int, m: int) -> int:
    """A unit u mod m with u*d = gcd(d, m) mod m.

    Every element of Z/m is a unit multiple of gcd(d, m); the unit is found
    by searching d/g + k*(m/g), which always contains a unit.
    """
    d %= m
    if d == 0:
        return 1
    g = gcd(d, m)
    dp, mg = d // g, m // g
    for k in range(m):
        u = (dp + k * mg) % m
        if gcd(u, m) == 1:
            return inverse_mod(u, m)
    raise AssertionError("no associate unit found")  # unreachable
