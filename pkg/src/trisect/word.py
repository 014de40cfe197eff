"""Free-group words on x1, y1, ..., xg, yg and their Fox-calculus lifts."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ring import LaurentPoly

Letter = tuple  # (family 'x'|'y', index 1..g, exponent +-1)

_TOK = re.compile(r"^([xyXY])(\d+)$")


class WordError(ValueError):
    pass


def gen_index(family: str, index: int, genus: int) -> int:
    """Coordinate of a generator: x1..xg come first, then y1..yg."""
    return index - 1 if family == "x" else genus + index - 1


def gen_name(k: int, genus: int) -> str:
    return f"x{k + 1}" if k < genus else f"y{k - genus + 1}"


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((f, i, -e) for f, i, e in reversed(self.letters)))

    def reduced(self) -> "Word":
        out: list = []
        for f, i, e in self.letters:
            if out and out[-1] == (f, i, -e):
                out.pop()
            else:
                out.append((f, i, e))
        return Word(tuple(out))

    def max_index(self) -> int:
        return max((i for _, i, _ in self.letters), default=0)

    def __str__(self):
        return " ".join((f if e > 0 else f.upper()) + str(i) for f, i, e in self.letters)


def parse_word(text: str, genus: int) -> Word:
    letters = []
    for tok in text.split():
        m = _TOK.match(tok)
        if not m:
            raise WordError(f"unknown token {tok!r}")
        fam, idx = m.group(1), int(m.group(2))
        if not 1 <= idx <= genus:
            raise WordError(f"index {idx} out of range 1..{genus} in {tok!r}")
        letters.append((fam.lower(), idx, 1 if fam.islower() else -1))
    return Word(tuple(letters))


def default_relator(genus: int) -> Word:
    letters = []
    for i in range(1, genus + 1):
        letters += [("x", i, 1), ("y", i, 1), ("x", i, -1), ("y", i, -1)]
    return Word(tuple(letters))


def abelianize(w: Word, genus: int) -> list[int]:
    v = [0] * (2 * genus)
    for f, i, e in w.letters:
        v[gen_index(f, i, genus)] += e
    return v


class PhiMap:
    """Homomorphism from the free group on the 2g generators to Z^b, as monomials.

    values[k] is the exponent vector of the image of generator k (x's then y's).
    """

    def __init__(self, genus: int, rank: int, values: Sequence[Sequence[int]]):
        if len(values) != 2 * genus:
            raise ValueError(f"need {2 * genus} generator images, got {len(values)}")
        self.genus = genus
        self.rank = rank
        self.values = tuple(tuple(int(x) for x in v) for v in values)
        for v in self.values:
            if len(v) != rank:
                raise ValueError("image has wrong rank")

    @classmethod
    def trivial(cls, genus: int, rank: int = 0) -> "PhiMap":
        return cls(genus, rank, [(0,) * rank] * (2 * genus))

    @classmethod
    def from_dict(cls, genus: int, rank: int, values: Mapping[str, Sequence[int]]) -> "PhiMap":
        vals = [(0,) * rank] * (2 * genus)
        for name, v in values.items():
            m = _TOK.match(name)
            if not m or not m.group(1).islower():
                raise WordError(f"bad generator name {name!r}")
            idx = int(m.group(2))
            if not 1 <= idx <= genus:
                raise WordError(f"generator {name!r} out of range")
            vals[gen_index(m.group(1), idx, genus)] = tuple(v)
        return cls(genus, rank, vals)

    def to_dict(self) -> dict:
        return {gen_name(k, self.genus): list(v) for k, v in enumerate(self.values)}

    def is_trivial(self) -> bool:
        return self.rank == 0 or all(not any(v) for v in self.values)

    def exps(self, w: Word) -> tuple:
        out = [0] * self.rank
        for f, i, e in w.letters:
            for j, x in enumerate(self.values[gen_index(f, i, self.genus)]):
                out[j] += e * x
        return tuple(out)

    def of_gen(self, k: int) -> LaurentPoly:
        return LaurentPoly.monomial(self.values[k]) if self.rank else LaurentPoly.one(0)

    def __call__(self, w: Word) -> LaurentPoly:
        return LaurentPoly.monomial(self.exps(w)) if self.rank else LaurentPoly.one(0)

    def __eq__(self, other):
        return isinstance(other, PhiMap) and (self.genus, self.rank, self.values) == (
            other.genus, other.rank, other.values)

    def __repr__(self):
        return f"PhiMap(b={self.rank}, {self.to_dict()})"


def fox_lift(w: Word, phi: PhiMap) -> list[LaurentPoly]:
    """Chain in the free module on the 1-cells lifted from the loop w.

    Left-to-right derivation with a running prefix P: g contributes P e_g, g^-1
    contributes -P phi(g)^-1 e_g.
    """
    g, b = phi.genus, phi.rank
    out: list[dict] = [dict() for _ in range(2 * g)]
    P = [0] * b
    for f, i, e in w.letters:
        k = gen_index(f, i, g)
        img = phi.values[k]
        if e > 0:
            key = tuple(P)
            out[k][key] = out[k].get(key, 0) + 1
            P = [p + x for p, x in zip(P, img)]
        else:
            P = [p - x for p, x in zip(P, img)]
            key = tuple(P)
            out[k][key] = out[k].get(key, 0) - 1
    return [LaurentPoly(t, b) for t in out]
