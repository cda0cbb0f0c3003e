"""Free associative algebras over F2 and Z[t,t^-1], with signed derivations.

Elements are finite sums of words in named generators.  Coefficients are
integer Laurent polynomials in t; over F2 the exponent is forced to 0 and
integers are reduced mod 2.  Everything is kept in a canonical normal form
so that equality is literal equality of term dictionaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

F2 = "F2"
ZT = "ZT"

_RINGS = (F2, ZT)

_GEN_RE = re.compile(r"[A-Za-z_]\w*")
_INT_RE = re.compile(r"-?\d+")
_TPOW_RE = re.compile(r"t\^(-?\d+)")

Word = tuple[str, ...]
# coefficient = Laurent polynomial, exponent -> integer, no zero values stored
Coef = dict[int, int]


class GradingError(ValueError):
    """A sign or degree was requested for a generator with no grading."""


def _check_ring(ring: str) -> None:
    if ring not in _RINGS:
        raise ValueError(f"unknown ring {ring!r}")


def _natural_key(name: str):
    # x2 < x10, and mixed alpha/digit chunks compare without type errors
    parts = []
    for piece in re.split(r"(\d+)", name):
        if not piece:
            continue
        if piece.isdigit():
            parts.append((0, "", int(piece)))
        else:
            parts.append((1, piece, 0))
    return tuple(parts)


def word_key(word: Word):
    """Total order on words: length first, then natural order on names."""
    return (len(word), tuple(_natural_key(g) for g in word))


def _norm_coef(ring: str, coef: Coef) -> Coef:
    if ring == F2:
        out = {}
        for exp, c in coef.items():
            if exp != 0:
                raise ValueError("t is not allowed over F2")
            c %= 2
            if c:
                out[0] = 1
        return out
    return {exp: c for exp, c in coef.items() if c}


def _coef_add(acc: Coef, other: Coef) -> None:
    for exp, c in other.items():
        v = acc.get(exp, 0) + c
        if v:
            acc[exp] = v
        else:
            acc.pop(exp, None)


def _coef_mul(a: Coef, b: Coef) -> Coef:
    out: Coef = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


class NcPoly:
    """Normalized element of the free algebra; treat instances as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: str, terms: Mapping[Word, Coef] | None = None):
        _check_ring(ring)
        self.ring = ring
        clean: dict[Word, Coef] = {}
        for word, coef in (terms or {}).items():
            c = _norm_coef(ring, dict(coef))
            if c:
                clean[tuple(word)] = c
        self.terms = clean

    # ---- constructors ----

    @staticmethod
    def zero(ring: str) -> "NcPoly":
        return NcPoly(ring)

    @staticmethod
    def one(ring: str) -> "NcPoly":
        return NcPoly(ring, {(): {0: 1}})

    @staticmethod
    def const(c: int, ring: str) -> "NcPoly":
        return NcPoly(ring, {(): {0: c}})

    @staticmethod
    def gen(name: str, ring: str) -> "NcPoly":
        return NcPoly.word([name], ring)

    @staticmethod
    def word(names: Iterable[str], ring: str) -> "NcPoly":
        w = tuple(names)
        for g in w:
            if not _GEN_RE.fullmatch(g) or g == "t":
                raise ValueError(f"bad generator name {g!r}")
        return NcPoly(ring, {w: {0: 1}})

    @staticmethod
    def t_power(k: int) -> "NcPoly":
        return NcPoly(ZT, {(): {k: 1}})

    # ---- ring operations ----

    def __add__(self, other: "NcPoly") -> "NcPoly":
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        acc = {w: dict(c) for w, c in self.terms.items()}
        for w, c in other.terms.items():
            slot = acc.setdefault(w, {})
            _coef_add(slot, c)
        return NcPoly(self.ring, acc)

    def __neg__(self) -> "NcPoly":
        return NcPoly(
            self.ring,
            {w: {e: -c for e, c in coef.items()} for w, coef in self.terms.items()},
        )

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        acc: dict[Word, Coef] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                slot = acc.setdefault(w1 + w2, {})
                _coef_add(slot, _coef_mul(c1, c2))
        return NcPoly(self.ring, acc)

    def scale(self, n: int) -> "NcPoly":
        return NcPoly(
            self.ring,
            {w: {e: n * c for e, c in coef.items()} for w, coef in self.terms.items()},
        )

    def times_t(self, k: int) -> "NcPoly":
        if self.ring != ZT:
            if k == 0:
                return self
            raise ValueError("t powers only exist over ZT")
        return NcPoly(
            ZT,
            {w: {e + k: c for e, c in coef.items()} for w, coef in self.terms.items()},
        )

    # ---- predicates / inspection ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): {0: 1}}

    def generators(self) -> set[str]:
        seen: set[str] = set()
        for w in self.terms:
            seen.update(w)
        return seen

    def constant_coef(self) -> Coef:
        return dict(self.terms.get((), {}))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NcPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def key(self):
        return (
            self.ring,
            tuple(
                (w, tuple(sorted(self.terms[w].items())))
                for w in sorted(self.terms, key=word_key)
            ),
        )

    def __hash__(self) -> int:
        return hash(self.key())

    # ---- rendering / parsing ----

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w in sorted(self.terms, key=word_key):
            wpart = ".".join(w) if w else "1"
            for exp, c in sorted(self.terms[w].items()):
                prefix = "" if c == 1 else f"{c}*"
                tpart = "" if exp == 0 else f"t^{exp}*"
                pieces.append(prefix + tpart + wpart)
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"NcPoly({self.ring}, {self.render()})"


def zero(ring: str) -> NcPoly:
    return NcPoly.zero(ring)


def one(ring: str) -> NcPoly:
    return NcPoly.one(ring)


def gen(name: str, ring: str) -> NcPoly:
    return NcPoly.gen(name, ring)


def add(p: NcPoly, q: NcPoly) -> NcPoly:
    return p + q


def mul(p: NcPoly, q: NcPoly) -> NcPoly:
    return p * q


def parse(text: str, ring: str) -> NcPoly:
    """Parse the canonical flat rendering back into an NcPoly."""
    _check_ring(ring)
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return NcPoly.zero(ring)
    # a '-' not part of an exponent starts a new negated term
    pieces = [p.strip() for p in re.sub(r"(?<!\^)-", "+-", s).split("+")]
    acc: dict[Word, Coef] = {}
    saw_piece = False
    for piece in pieces:
        if not piece:
            continue
        saw_piece = True
        sign = 1
        if piece.startswith("-"):
            sign = -1
            piece = piece[1:].strip()
        coef = sign
        exp = 0
        word: list[str] = []
        for factor in piece.split("*"):
            factor = factor.strip()
            if _INT_RE.fullmatch(factor):
                coef *= int(factor)
            elif factor == "t":
                exp += 1
            elif _TPOW_RE.fullmatch(factor):
                exp += int(factor[2:])
            else:
                for g in factor.split("."):
                    if not _GEN_RE.fullmatch(g) or g == "t":
                        raise ValueError(f"bad factor {factor!r} in {text!r}")
                    word.append(g)
        if ring == F2 and exp != 0:
            raise ValueError("t is not allowed over F2")
        slot = acc.setdefault(tuple(word), {})
        _coef_add(slot, {exp: coef})
    if not saw_piece:
        raise ValueError(f"no terms in {text!r}")
    return NcPoly(ring, acc)


def substitute(p: NcPoly, sigma: Mapping[str, NcPoly]) -> NcPoly:
    """Algebra-homomorphic image of p; sigma must cover every generator in p."""
    out = NcPoly.zero(p.ring)
    cache: dict[Word, NcPoly] = {(): NcPoly.one(p.ring)}
    for w, coef in p.terms.items():
        img = cache.get(w)
        if img is None:
            img = NcPoly.one(p.ring)
            for g in w:
                if g not in sigma:
                    raise ValueError(f"no image for generator {g!r}")
                gi = sigma[g]
                if gi.ring != p.ring:
                    raise ValueError(f"ring mismatch: {gi.ring} vs {p.ring}")
                img = img * gi
            cache[w] = img
        out = out + NcPoly(p.ring, {u: _coef_mul(coef, c) for u, c in img.terms.items()})
    return out


def identity_map(p: NcPoly) -> dict[str, NcPoly]:
    return {g: NcPoly.gen(g, p.ring) for g in p.generators()}


def specialize(p: NcPoly) -> NcPoly:
    """Set t = 1 and reduce coefficients mod 2 (ZT -> F2)."""
    acc: dict[Word, Coef] = {}
    for w, coef in p.terms.items():
        total = sum(coef.values()) % 2
        if total:
            acc[w] = {0: 1}
    return NcPoly(F2, acc)


@dataclass
class GradedPresentation:
    """Ordered generators of a free algebra, with an optional grading.

    modulus 0 means an honest Z-grading; modulus m > 0 means Z/m.
    """

    generators: tuple[str, ...]
    grading: dict[str, int] | None = None
    ring: str = F2
    modulus: int = 0

    def __post_init__(self):
        _check_ring(self.ring)
        self.generators = tuple(self.generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        for g in self.generators:
            if not _GEN_RE.fullmatch(g) or g == "t":
                raise ValueError(f"bad generator name {g!r}")
        if self.grading is not None:
            unknown = set(self.grading) - set(self.generators)
            if unknown:
                raise ValueError(f"grading for unknown generators {sorted(unknown)}")

    def degree_of(self, name: str) -> int:
        if self.grading is None or name not in self.grading:
            raise GradingError(f"no grading for {name!r}")
        return self.grading[name]

    def word_degree(self, word: Word) -> int:
        d = sum(self.degree_of(g) for g in word)
        return d % self.modulus if self.modulus else d


def signed_derivation(
    pres: GradedPresentation, d: Mapping[str, NcPoly]
) -> Callable[[NcPoly], NcPoly]:
    """Extend d over words by the graded Leibniz rule.

    Over F2 signs vanish and no grading is consulted.  Over ZT the sign in
    front of w[:i]*d(w[i])*w[i+1:] is (-1)^(degree of the prefix); only the
    parity matters, so a Z/m grading with m even is fine too.
    """
    ring = pres.ring
    if ring == ZT and pres.modulus % 2:
        raise GradingError("signs need a Z or even-modulus grading")
    grading = pres.grading or {}

    def derive(p: NcPoly) -> NcPoly:
        if p.ring != ring:
            raise ValueError(f"ring mismatch: {p.ring} vs {ring}")
        acc: dict[Word, Coef] = {}
        for w, coef in p.terms.items():
            parity: int | None = 0
            for i, g in enumerate(w):
                dg = d.get(g)
                if dg is not None and dg.terms:
                    c = coef
                    if ring == ZT:
                        if parity is None:
                            raise GradingError(
                                f"sign for position {i} in {w} needs graded prefix"
                            )
                        if parity % 2:
                            c = {e: -v for e, v in c.items()}
                    head, tail = w[:i], w[i + 1 :]
                    for w2, c2 in dg.terms.items():
                        slot = acc.setdefault(head + w2 + tail, {})
                        _coef_add(slot, _coef_mul(c, c2))
                if ring == ZT and parity is not None:
                    if g in grading:
                        parity += grading[g]
                    else:
                        parity = None
        return NcPoly(ring, acc)

    return derive
