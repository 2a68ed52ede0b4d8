"""Odd-length cyclic binary configurations with value semantics."""
from __future__ import annotations

from dataclasses import dataclass


class ConfigurationError(ValueError):
    """Base class for malformed configuration input."""


class EmptyConfiguration(ConfigurationError):
    pass


class EvenLength(ConfigurationError):
    """The parity problem is only posed for odd-sized rings."""


class InvalidCharacter(ConfigurationError):
    pass


class EvenPower(ConfigurationError):
    """Concatenation powers must be odd to keep the length odd."""


@dataclass(frozen=True)
class Configuration:
    """A ring of n binary cells, bit-packed with cell i at bit i.

    Cell 0 is the leftmost character of the text form. All index
    arithmetic is modulo n.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.n % 2 == 0:
            raise EvenLength(f"length must be odd and positive, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("packed bits out of range for length")

    def cell(self, i: int) -> int:
        return (self.bits >> (i % self.n)) & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.n))

    def __repr__(self) -> str:
        return f"Configuration({str(self)!r})"


def parse(text: str) -> Configuration:
    """Read a configuration from its compact '0'/'1' form."""
    if text == "":
        raise EmptyConfiguration("configuration text is empty")
    bits = 0
    for i, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << i
        elif ch != "0":
            raise InvalidCharacter(f"invalid character {ch!r} at index {i}")
    if len(text) % 2 == 0:
        raise EvenLength(f"length must be odd, got {len(text)}")
    return Configuration(n=len(text), bits=bits)


def render(x: Configuration) -> str:
    return str(x)


def from_int(n: int, value: int) -> Configuration:
    """Build a configuration of length n from its packed-integer encoding."""
    return Configuration(n=n, bits=value)


def parity(x: Configuration) -> int:
    """XOR of all cells: 0 for an even number of 1s, 1 for odd."""
    return x.bits.bit_count() & 1


def is_homogeneous(x: Configuration) -> bool:
    return x.bits == 0 or x.bits == (1 << x.n) - 1


def rotate(x: Configuration, k: int) -> Configuration:
    """Rotation: cell i of the result is cell (i + k) mod n of x."""
    n = x.n
    k %= n
    if k == 0:
        return x
    mask = (1 << n) - 1
    bits = ((x.bits >> k) | (x.bits << (n - k))) & mask
    return Configuration(n=n, bits=bits)


def concat_power(x: Configuration, k: int) -> Configuration:
    """k copies of x laid around a ring of length k*n, for odd k >= 1."""
    if k < 1 or k % 2 == 0:
        raise EvenPower(f"power must be odd and positive, got {k}")
    bits = 0
    for c in range(k):
        bits |= x.bits << (c * x.n)
    return Configuration(n=k * x.n, bits=bits)
