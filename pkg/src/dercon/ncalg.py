"""Quivers and noncommutative polynomial arithmetic.

Words multiply left to right: in the path algebra, ab means "follow a, then
b", so a word is composable when each arrow's target is the next arrow's
source, e_i * p = p iff p starts at i, and p * e_j = p iff p ends at j.
Maps between projectives e_i L act by left multiplication; composing maps
puts the later map's symbol on the left.

Generators carry a strictly positive integer weight (the Adams grading) and
an integer cohomological degree (zero in plain path algebras).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .exactlin import ONE, ZERO, format_rational


class Arrow:
    __slots__ = ("name", "src", "tgt", "weight", "degree")

    def __init__(self, name: str, src: str, tgt: str, weight: int = 1, degree: int = 0):
        if weight < 1:
            raise ValueError(f"arrow {name}: weight must be >= 1, got {weight}")
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) is None or name.startswith("e_"):
            raise ValueError(f"bad arrow name {name!r}")
        self.name = name
        self.src = src
        self.tgt = tgt
        self.weight = weight
        self.degree = degree

    def __repr__(self):
        return f"Arrow({self.name}: {self.src}->{self.tgt}, w={self.weight}, d={self.degree})"


class Quiver:
    """Finite quiver with named vertices and weighted (optionally graded) arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")
        self.arrows: dict[str, Arrow] = {}
        self.arrows_from: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in arrows:
            if a.name in self.arrows:
                raise ValueError(f"duplicate arrow {a.name}")
            if a.src not in self.arrows_from or a.tgt not in self.arrows_from:
                raise ValueError(f"arrow {a.name} references unknown vertex")
            self.arrows[a.name] = a
            self.arrows_from[a.src].append(a)
        for v in self.arrows_from:
            self.arrows_from[v].sort(key=lambda a: a.name)
        self._path_cache: dict[tuple[str, str, int], tuple["Word", ...]] = {}

    def arrow(self, name: str) -> Arrow:
        return self.arrows[name]

    def paths(self, src: str, tgt: str, weight: int) -> tuple["Word", ...]:
        """All paths src -> tgt of the given total weight, in lexicographic
        order of their arrow-name sequences.  Cached; fills are idempotent so
        concurrent computation is harmless."""
        key = (src, tgt, weight)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        if weight < 0:
            out: tuple[Word, ...] = ()
        elif weight == 0:
            out = (Word.idempotent(self, src),) if src == tgt else ()
        else:
            acc: list[Word] = []
            for a in self.arrows_from[src]:
                if a.weight > weight:
                    continue
                for rest in self.paths(a.tgt, tgt, weight - a.weight):
                    acc.append(Word(self, (a.name,) + rest.arrows))
            out = tuple(acc)
        self._path_cache[key] = out
        return out


class Word:
    """A path: either an idempotent e_i or a composable arrow sequence."""

    __slots__ = ("quiver", "arrows", "src", "tgt", "_hash")

    def __init__(self, quiver: Quiver, arrows: tuple[str, ...], src: str | None = None):
        self.quiver = quiver
        self.arrows = arrows
        if arrows:
            a0 = quiver.arrow(arrows[0])
            self.src = a0.src
            cur = a0.tgt
            for name in arrows[1:]:
                a = quiver.arrow(name)
                if a.src != cur:
                    raise ValueError(f"non-composable word {arrows}")
                cur = a.tgt
            self.tgt = cur
        else:
            if src is None:
                raise ValueError("empty word needs a vertex")
            self.src = self.tgt = src
        self._hash = hash((self.arrows, self.src))

    @classmethod
    def idempotent(cls, quiver: Quiver, vertex: str) -> "Word":
        return cls(quiver, (), src=vertex)

    @property
    def weight(self) -> int:
        return sum(self.quiver.arrow(n).weight for n in self.arrows)

    @property
    def degree(self) -> int:
        return sum(self.quiver.arrow(n).degree for n in self.arrows)

    def is_idempotent(self) -> bool:
        return not self.arrows

    def concat(self, other: "Word") -> "Word | None":
        """Left-to-right product; None when the endpoints do not match."""
        if self.tgt != other.src:
            return None
        if not self.arrows:
            return other
        if not other.arrows:
            return self
        return Word(self.quiver, self.arrows + other.arrows)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.arrows == other.arrows
            and self.src == other.src
        )

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.src)

    def __repr__(self):
        if not self.arrows:
            return f"e_{self.src}"
        return "*".join(self.arrows)


class NcPoly:
    """Q-linear combination of words of one quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Word, Fraction] | None = None):
        self.quiver = quiver
        self.terms: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def zero(cls, quiver: Quiver) -> "NcPoly":
        return cls(quiver)

    @classmethod
    def idempotent(cls, quiver: Quiver, vertex: str) -> "NcPoly":
        return cls(quiver, {Word.idempotent(quiver, vertex): ONE})

    @classmethod
    def generator(cls, quiver: Quiver, name: str) -> "NcPoly":
        return cls(quiver, {Word(quiver, (name,)): ONE})

    @classmethod
    def unit(cls, quiver: Quiver) -> "NcPoly":
        return cls(quiver, {Word.idempotent(quiver, v): ONE for v in quiver.vertices})

    @classmethod
    def from_word(cls, w: Word, coeff: Fraction | int = 1) -> "NcPoly":
        return cls(w.quiver, {w: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NcPoly") -> "NcPoly":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, ZERO) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NcPoly(self.quiver, t)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.quiver, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "NcPoly":
        c = Fraction(c)
        if not c:
            return NcPoly(self.quiver)
        return NcPoly(self.quiver, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        """Concatenation product; non-composable pairs vanish."""
        acc: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1.concat(w2)
                if w is None:
                    continue
                s = acc.get(w, ZERO) + c1 * c2
                if s:
                    acc[w] = s
                else:
                    acc.pop(w, None)
        return NcPoly(self.quiver, acc)

    def degree(self) -> int | None:
        """Common cohomological degree of all words, None for 0."""
        degs = {w.degree for w in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous degree: {sorted(degs)}")
        return degs.pop()

    def weight(self) -> int | None:
        ws = {w.weight for w in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError(f"inhomogeneous weight: {sorted(ws)}")
        return ws.pop()

    def words(self) -> list[Word]:
        return sorted(self.terms, key=Word.sort_key)

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(((w, c) for w, c in self.terms.items()), key=lambda t: t[0].sort_key())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.terms[w]
            if c == 1:
                parts.append(repr(w))
            elif c == -1:
                parts.append(f"-{w!r}")
            else:
                parts.append(f"{format_rational(c)}*{w!r}")
        return " + ".join(parts).replace("+ -", "- ")


def graded_commutator(x: NcPoly, y: NcPoly) -> NcPoly:
    """[x, y] = xy - (-1)^{|x||y|} yx, degrees read off the words."""
    dx = x.degree()
    dy = y.degree()
    sign = -1 if (dx or 0) * (dy or 0) % 2 else 1
    return x * y - (y * x).scale(sign)


class CyclicWord:
    """Cyclic path (src == tgt) up to rotation; canonical form is the
    lexicographically least rotation of the arrow-name sequence."""

    __slots__ = ("quiver", "arrows", "_hash")

    def __init__(self, quiver: Quiver, arrows: Sequence[str]):
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("cyclic word needs at least one arrow")
        w = Word(quiver, arrows)
        if w.src != w.tgt:
            raise ValueError(f"not a cycle: {arrows}")
        best = min(range(len(arrows)), key=lambda i: arrows[i:] + arrows[:i])
        self.quiver = quiver
        self.arrows = arrows[best:] + arrows[:best]
        self._hash = hash(self.arrows)

    @property
    def weight(self) -> int:
        return sum(self.quiver.arrow(n).weight for n in self.arrows)

    def word(self) -> Word:
        return Word(self.quiver, self.arrows)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.arrows == other.arrows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "(" + "*".join(self.arrows) + ")"


class Superpotential:
    """Linear combination of cyclic words, i.e. an element of kQ/[kQ,kQ]."""

    def __init__(self, quiver: Quiver, terms: Mapping[CyclicWord, Fraction]):
        self.quiver = quiver
        self.terms: dict[CyclicWord, Fraction] = {}
        for w, c in terms.items():
            c = Fraction(c)
            if c:
                self.terms[w] = c

    def weight(self) -> int | None:
        ws = {w.weight for w in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError(f"inhomogeneous superpotential: weights {sorted(ws)}")
        return ws.pop()

    def __repr__(self):
        parts = [f"{format_rational(c)}*{w!r}" for w, c in sorted(self.terms.items(), key=lambda t: t[0].arrows)]
        return " + ".join(parts) if parts else "0"


def cyclic_derivative(pot: Superpotential, arrow_name: str) -> NcPoly:
    """d_a W = sum over decompositions W = u a v of v u.

    Summing over arrow occurrences in the canonical representative of each
    cyclic word; the result is a path tgt(a) -> src(a)."""
    quiver = pot.quiver
    acc = NcPoly.zero(quiver)
    a = quiver.arrow(arrow_name)
    for cw, c in pot.terms.items():
        names = cw.arrows
        for i, n in enumerate(names):
            if n != arrow_name:
                continue
            vu = names[i + 1 :] + names[:i]
            if vu:
                w = Word(quiver, vu)
            else:
                w = Word.idempotent(quiver, a.tgt)
            acc = acc + NcPoly.from_word(w, c)
    return acc


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<idem>e_[A-Za-z0-9_]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[*+^()-]))"
)


def parse_poly(quiver: Quiver, text: str) -> NcPoly:
    """Parse polynomial text: terms over '+'/'-', factors over '*', powers
    with '^', rational coefficients 'p/q', idempotents 'e_<vertex>'."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ValueError(f"cannot tokenize {rest[:20]!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))  # type: ignore[arg-type]
    tokens.append(("end", ""))
    state = {"i": 0}

    def peek() -> tuple[str, str]:
        return tokens[state["i"]]

    def advance() -> tuple[str, str]:
        t = tokens[state["i"]]
        state["i"] += 1
        return t

    def parse_atom() -> NcPoly:
        kind, val = advance()
        if kind == "num":
            return NcPoly.unit(quiver).scale(Fraction(val))
        if kind == "idem":
            v = val[2:]
            if v not in quiver.arrows_from:
                raise ValueError(f"unknown vertex in {val}")
            return NcPoly.idempotent(quiver, v)
        if kind == "name":
            if val not in quiver.arrows:
                raise ValueError(f"unknown generator {val!r}")
            return NcPoly.generator(quiver, val)
        if kind == "op" and val == "(":
            e = parse_expr()
            k2, v2 = advance()
            if (k2, v2) != ("op", ")"):
                raise ValueError("missing )")
            return e
        raise ValueError(f"unexpected token {val!r}")

    def parse_factor() -> NcPoly:
        base = parse_atom()
        while peek() == ("op", "^"):
            advance()
            k, v = advance()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a nonnegative integer")
            n = int(v)
            if n == 0:
                acc = NcPoly.unit(quiver)
            else:
                acc = base
                for _ in range(n - 1):
                    acc = acc * base
            base = acc
        return base

    def parse_term() -> NcPoly:
        acc = parse_factor()
        while peek() == ("op", "*"):
            advance()
            acc = acc * parse_factor()
        return acc

    def parse_expr() -> NcPoly:
        sign = 1
        k, v = peek()
        if (k, v) == ("op", "-"):
            advance()
            sign = -1
        elif (k, v) == ("op", "+"):
            advance()
        acc = parse_term().scale(sign)
        while True:
            k, v = peek()
            if (k, v) == ("op", "+"):
                advance()
                acc = acc + parse_term()
            elif (k, v) == ("op", "-"):
                advance()
                acc = acc - parse_term()
            else:
                return acc

    out = parse_expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input near {peek()[1]!r}")
    return out


def format_poly(p: NcPoly) -> str:
    """Canonical text form, parseable by parse_poly."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for w in p.words():
        c = p.terms[w]
        body = "e_" + w.src if w.is_idempotent() else "*".join(w.arrows)
        if c == 1:
            term = body
        elif c == -1:
            term = "-" + body
        else:
            term = f"{format_rational(c)}*{body}"
        if parts and not term.startswith("-"):
            parts.append("+ " + term)
        elif parts:
            parts.append("- " + term[1:])
        else:
            parts.append(term)
    return " ".join(parts)


def enumerate_words(
    quiver: Quiver, src: str, tgt: str, weight: int
) -> tuple[Word, ...]:
    """Alias of Quiver.paths for graded quivers (degree is determined by
    the arrows, so weight slices already have finite bases)."""
    return quiver.paths(src, tgt, weight)
