"""Free Lie algebra on (Z/nZ)-graded generators over exact rationals.

Monomials are the standard (Chen-Fox-Lyndon) bracketings of Lyndon words,
with generators ordered by name and monomials by (length, word).  The
normal form of an arbitrary bracket expression is computed through the
associative expansion: the expansion of the standard bracketing of a
Lyndon word w is w plus lexicographically larger words, so peeling the
minimal word at each step is a terminating triangular reduction and the
minimal word of any Lie polynomial is Lyndon.

Everything is exact (fractions.Fraction coefficients); monomials and
elements are immutable; all computation is localized per fine degree
(multidegree), so no whole length layer is ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .residues import Residue

Word = tuple  # tuple of letters; letters are any orderable hashables
Tree = object  # a letter, or a pair (left_tree, right_tree)


@dataclass(frozen=True, order=True)
class Generator:
    """A graded generator; the name is the identity, the degree its Z/nZ class."""

    name: str
    degree: Residue


def check_generators(generators: Sequence[Generator]) -> tuple[Generator, ...]:
    """Validate and return the canonical (name-sorted) generator tuple."""
    gens = tuple(sorted(generators, key=lambda g: g.name))
    if not gens:
        raise ValueError("empty generator set")
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise ValueError(f"generator names must be unique, got {names}")
    n = gens[0].degree.modulus
    if any(g.degree.modulus != n for g in gens):
        raise ValueError("generator degrees must share one modulus")
    return gens


@dataclass(frozen=True)
class FineDegree:
    """Occurrence counts of each generator, with derived length and Z/nZ degree."""

    counts: tuple[tuple[str, int], ...]  # name-sorted, zero counts dropped
    length: int
    zn_degree: Residue

    @classmethod
    def of(cls, generators: Sequence[Generator], counts: Mapping[str, int]) -> "FineDegree":
        gens = check_generators(generators)
        by_name = {g.name: g for g in gens}
        for name in counts:
            if name not in by_name:
                raise ValueError(f"unknown generator {name!r}")
        items = tuple(
            (g.name, int(counts[g.name]))
            for g in gens
            if counts.get(g.name, 0) > 0
        )
        if any(c < 0 for _, c in tuple(counts.items())):
            raise ValueError("counts must be nonnegative")
        length = sum(c for _, c in items)
        if length < 1:
            raise ValueError("fine degree must have total length >= 1")
        n = gens[0].degree.modulus
        zn = Residue(0, n)
        for name, c in items:
            zn = zn + by_name[name].degree * c
        return cls(items, length, zn)

    def count(self, name: str) -> int:
        for nm, c in self.counts:
            if nm == name:
                return c
        return 0

    def __add__(self, other: "FineDegree") -> "FineDegree":
        acc: dict[str, int] = dict(self.counts)
        for name, c in other.counts:
            acc[name] = acc.get(name, 0) + c
        items = tuple(sorted(acc.items()))
        return FineDegree(items, self.length + other.length, self.zn_degree + other.zn_degree)

    def __str__(self):
        inner = ", ".join(f"{name}:{c}" for name, c in self.counts)
        return f"({inner})"


# ---------------------------------------------------------------------------
# word-level machinery (letters are generic: generator names or indices)


def words_with_content(letters: Sequence, counts: Sequence[int]):
    """All words using counts[i] copies of letters[i], in lexicographic order."""
    remaining = list(counts)
    word: list = []
    total = sum(counts)

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for i, letter in enumerate(letters):
            if remaining[i]:
                remaining[i] -= 1
                word.append(letter)
                yield from rec()
                word.pop()
                remaining[i] += 1

    yield from rec()


def is_lyndon(word: Word) -> bool:
    """True iff word is strictly smaller than each of its proper suffixes."""
    if not word:
        return False
    return all(word < word[i:] for i in range(1, len(word)))


def lyndon_words(letters: Sequence, counts: Sequence[int]) -> list[Word]:
    return [w for w in words_with_content(letters, counts) if is_lyndon(w)]


@lru_cache(maxsize=200_000)
def standard_tree(word: Word):
    """Standard bracketing of a Lyndon word: split before the least proper suffix."""
    if len(word) == 1:
        return word[0]
    cut = min(range(1, len(word)), key=lambda i: word[i:])
    return (standard_tree(word[:cut]), standard_tree(word[cut:]))


def tree_word(tree) -> Word:
    if not isinstance(tree, tuple):
        return (tree,)
    return tree_word(tree[0]) + tree_word(tree[1])


def expand_tree(tree, cache: dict | None = None) -> dict[Word, int]:
    """Associative expansion of a bracket tree into words with integer coefficients."""
    if cache is not None and tree in cache:
        return cache[tree]
    if not isinstance(tree, tuple):
        out = {(tree,): 1}
    else:
        left = expand_tree(tree[0], cache)
        right = expand_tree(tree[1], cache)
        out = {}
        for wl, cl in left.items():
            for wr, cr in right.items():
                c = cl * cr
                w = wl + wr
                out[w] = out.get(w, 0) + c
                w = wr + wl
                out[w] = out.get(w, 0) - c
        out = {w: c for w, c in out.items() if c}
    if cache is not None:
        cache[tree] = out
    return out


_shared_expand_cache: dict = {}


def reduce_to_lyndon_basis(poly: dict[Word, Fraction]) -> dict[Word, Fraction]:
    """Rewrite a Lie polynomial (word expansion) as Lyndon-word coordinates.

    Returns {lyndon word w: coefficient of the standard bracketing of w}.
    Raises if the input is not the expansion of a Lie element.
    """
    groups: dict[tuple, dict[Word, Fraction]] = {}
    for w, c in poly.items():
        if c:
            groups.setdefault(tuple(sorted(w)), {})[w] = c
    out: dict[Word, Fraction] = {}
    for group in groups.values():
        while group:
            w = min(group)
            c = group.pop(w)
            if not c:
                continue
            if not is_lyndon(w):
                raise ValueError(
                    f"not a Lie element: minimal word {w} of the expansion is not Lyndon"
                )
            out[w] = c
            for w2, c2 in expand_tree(standard_tree(w), _shared_expand_cache).items():
                if w2 == w:
                    continue
                group[w2] = group.get(w2, Fraction(0)) + (-c) * c2
            group = {k: v for k, v in group.items() if v}
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------------------
# public monomials and elements


@dataclass(frozen=True)
class HallMonomial:
    """Standard bracketing of a Lyndon word over the generator names."""

    tree: object  # name, or nested pair of trees
    word: tuple[str, ...]
    degree: FineDegree

    @classmethod
    def from_word(cls, generators: Sequence[Generator], word: Sequence[str]) -> "HallMonomial":
        gens = check_generators(generators)
        word = tuple(word)
        if not is_lyndon(word):
            raise ValueError(f"{word} is not a Lyndon word")
        counts: dict[str, int] = {}
        for name in word:
            counts[name] = counts.get(name, 0) + 1
        return cls(standard_tree(word), word, FineDegree.of(gens, counts))

    @classmethod
    def from_tree(cls, generators: Sequence[Generator], tree) -> "HallMonomial":
        word = tree_word(_tree_from_json(tree) if isinstance(tree, list) else tree)
        m = cls.from_word(generators, word)
        got = tree if not isinstance(tree, list) else _tree_from_json(tree)
        if m.tree != got:
            raise ValueError(f"{got} is not the standard bracketing of {word}")
        return m

    @property
    def length(self) -> int:
        return len(self.word)

    def sort_key(self):
        return (len(self.word), self.word)

    def __lt__(self, other: "HallMonomial"):
        return self.sort_key() < other.sort_key()

    def to_json(self):
        return _tree_to_json(self.tree)

    def __str__(self):
        return _tree_str(self.tree)


def _tree_to_json(tree):
    if not isinstance(tree, tuple):
        return tree
    return [_tree_to_json(tree[0]), _tree_to_json(tree[1])]


def _tree_from_json(data):
    if isinstance(data, str):
        return data
    if isinstance(data, list) and len(data) == 2:
        return (_tree_from_json(data[0]), _tree_from_json(data[1]))
    raise ValueError(f"malformed monomial JSON: {data!r}")


def _tree_str(tree):
    if not isinstance(tree, tuple):
        return str(tree)
    return f"[{_tree_str(tree[0])},{_tree_str(tree[1])}]"


@dataclass(frozen=True)
class LieElement:
    """Exact rational linear combination of Hall monomials over one generating set."""

    generators: tuple[Generator, ...]
    terms: tuple[tuple[HallMonomial, Fraction], ...]  # sorted, no zero coefficients

    @classmethod
    def make(cls, generators: Sequence[Generator], coeffs: Mapping[HallMonomial, Fraction]) -> "LieElement":
        gens = check_generators(generators)
        items = tuple(
            (m, Fraction(c)) for m, c in sorted(coeffs.items(), key=lambda mc: mc[0].sort_key()) if c
        )
        return cls(gens, items)

    @classmethod
    def zero(cls, generators: Sequence[Generator]) -> "LieElement":
        return cls.make(generators, {})

    @classmethod
    def from_generator(cls, generators: Sequence[Generator], name: str) -> "LieElement":
        m = HallMonomial.from_word(generators, (name,))
        return cls.make(generators, {m: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: HallMonomial) -> Fraction:
        for mm, c in self.terms:
            if mm == m:
                return c
        return Fraction(0)

    def fine_degree(self) -> FineDegree | None:
        """The common fine degree of all terms, or None if zero/inhomogeneous."""
        degs = {m.degree for m, _ in self.terms}
        if len(degs) == 1:
            return next(iter(degs))
        return None

    def is_homogeneous(self) -> bool:
        return len({m.degree for m, _ in self.terms}) <= 1

    def homogeneous_parts(self) -> list["LieElement"]:
        parts: dict[FineDegree, dict] = {}
        for m, c in self.terms:
            parts.setdefault(m.degree, {})[m] = c
        return [LieElement.make(self.generators, p) for p in parts.values()]

    def _compat(self, other: "LieElement") -> None:
        if self.generators != other.generators:
            raise ValueError("elements live over different generating sets")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._compat(other)
        acc = {m: c for m, c in self.terms}
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return LieElement.make(self.generators, acc)

    def __neg__(self) -> "LieElement":
        return LieElement.make(self.generators, {m: -c for m, c in self.terms})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, k) -> "LieElement":
        k = Fraction(k)
        return LieElement.make(self.generators, {m: k * c for m, c in self.terms})

    def expansion(self) -> dict[tuple[str, ...], Fraction]:
        """Associative (word) expansion; exact, used by zero-tests and quotients."""
        out: dict[tuple, Fraction] = {}
        for m, c in self.terms:
            for w, k in expand_tree(m.tree, _shared_expand_cache).items():
                out[w] = out.get(w, Fraction(0)) + c * k
        return {w: c for w, c in out.items() if c}

    def to_json(self):
        return [
            [m.to_json(), c.numerator, c.denominator] for m, c in self.terms
        ]

    @classmethod
    def from_json(cls, generators: Sequence[Generator], data) -> "LieElement":
        coeffs: dict[HallMonomial, Fraction] = {}
        for entry in data:
            tree, num, den = entry
            m = HallMonomial.from_tree(generators, tree)
            coeffs[m] = coeffs.get(m, Fraction(0)) + Fraction(int(num), int(den))
        return cls.make(generators, coeffs)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self.terms)


# ---------------------------------------------------------------------------
# the operations


def witt_dimension(target: FineDegree) -> int:
    """Dimension of the fine-degree component via the necklace (Witt) formula."""
    counts = tuple(c for _, c in target.counts)
    return witt_count(counts)


def witt_count(counts: Sequence[int]) -> int:
    counts = tuple(c for c in counts if c)
    if not counts:
        raise ValueError("fine degree must have total length >= 1")
    total = sum(counts)
    g = 0
    for c in counts:
        g = math.gcd(g, c)
    acc = 0
    for d in range(1, g + 1):
        if g % d:
            continue
        mu = _mobius(d)
        if not mu:
            continue
        term = math.factorial(total // d)
        for c in counts:
            term //= math.factorial(c // d)
        acc += mu * term
    assert acc % total == 0
    return acc // total


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def hall_basis(generators: Sequence[Generator], target: FineDegree) -> list[HallMonomial]:
    """All basis monomials of the given fine degree, ordered by (length, word)."""
    gens = check_generators(generators)
    letters = [g.name for g in gens]
    counts = [target.count(name) for name in letters]
    if sum(counts) < 1:
        raise ValueError("fine degree must have total length >= 1")
    return [HallMonomial.from_word(gens, w) for w in lyndon_words(letters, counts)]


def normalize(expression, generators: Sequence[Generator] | None = None) -> LieElement:
    """Canonical Hall-basis form of an arbitrary bracketing of elements.

    The expression grammar: a LieElement, a Generator, a HallMonomial, or a
    pair (left, right) of expressions denoting their bracket.
    """
    gens = check_generators(generators) if generators else _collect_generators(expression)
    poly = _expand_expression(expression, gens)
    coords = reduce_to_lyndon_basis(poly)
    coeffs = {HallMonomial.from_word(gens, w): c for w, c in coords.items()}
    return LieElement.make(gens, coeffs)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """The Lie bracket [x, y], normalized."""
    x._compat(y)
    return normalize((x, y), x.generators)


def left_normalized(elems: Sequence[LieElement]) -> LieElement:
    """The simple product [...[[e1,e2],e3],...,es]; a single element is itself."""
    if not elems:
        raise ValueError("left_normalized needs at least one element")
    acc = elems[0]
    if not isinstance(acc, LieElement):
        acc = normalize(acc)
    for e in elems[1:]:
        if not isinstance(e, LieElement):
            e = normalize(e, acc.generators)
        acc = bracket(acc, e)
    return acc


def _collect_generators(expression) -> tuple[Generator, ...]:
    found: dict[str, Generator] = {}

    def walk(e):
        if isinstance(e, LieElement):
            for g in e.generators:
                found[g.name] = g
        elif isinstance(e, Generator):
            found[e.name] = e
        elif isinstance(e, HallMonomial):
            raise ValueError("bare HallMonomial needs an explicit generator set")
        elif isinstance(e, (tuple, list)) and len(e) == 2:
            walk(e[0])
            walk(e[1])
        else:
            raise ValueError(f"malformed bracket expression: {e!r}")

    walk(expression)
    if not found:
        raise ValueError("empty generator set")
    return check_generators(tuple(found.values()))


def _expand_expression(e, gens) -> dict[Word, Fraction]:
    if isinstance(e, LieElement):
        if e.generators != gens:
            raise ValueError("elements live over different generating sets")
        return e.expansion()
    if isinstance(e, Generator):
        return {(e.name,): Fraction(1)}
    if isinstance(e, HallMonomial):
        return {w: Fraction(c) for w, c in expand_tree(e.tree, _shared_expand_cache).items()}
    if isinstance(e, (tuple, list)) and len(e) == 2:
        left = _expand_expression(e[0], gens)
        right = _expand_expression(e[1], gens)
        out: dict[Word, Fraction] = {}
        for wl, cl in left.items():
            for wr, cr in right.items():
                c = cl * cr
                out[wl + wr] = out.get(wl + wr, Fraction(0)) + c
                out[wr + wl] = out.get(wr + wl, Fraction(0)) - c
        return {w: c for w, c in out.items() if c}
    raise ValueError(f"malformed bracket expression: {e!r}")
