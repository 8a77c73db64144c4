"""Permutations of {1..n}: arithmetic, cycle structure, orbits, parsing, sampling.

Points are 1-based at every public interface; images are stored 0-based.
Composition is right-to-left: ``compose(p, q)(x) == p(q(x))``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "PermutationError",
    "CycleSyntaxError",
    "RngStream",
    "compose",
    "inverse",
    "commutator",
    "cycles",
    "cycle_type",
    "fixed_points",
    "parity",
    "orbits",
    "is_transitive",
    "parse_cycles",
    "format_cycles",
    "sample_uniform",
    "sample_conjugacy_class",
]


class PermutationError(ValueError):
    pass


class CycleSyntaxError(PermutationError):
    """Malformed or inconsistent cycle notation; ``pos`` is a 0-based column."""

    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")

    def caret(self):
        return f"{self.text}\n{' ' * self.pos}^"


class Permutation:
    """An immutable bijection of {1..n}."""

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int], *, zero_based: bool = False):
        img = tuple(int(x) for x in images)
        if not zero_based:
            img = tuple(x - 1 for x in img)
        n = len(img)
        if n < 1:
            raise PermutationError("degree must be at least 1")
        seen = [False] * n
        for x in img:
            if not 0 <= x < n or seen[x]:
                raise PermutationError(f"images do not form a bijection of 1..{n}")
            seen[x] = True
        self._img = img

    @classmethod
    def _trusted(cls, img: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise PermutationError("degree must be at least 1")
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cyc: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        seen = set()
        for c in cyc:
            for k, x in enumerate(c):
                if not 1 <= x <= n:
                    raise PermutationError(f"element {x} outside 1..{n}")
                if x in seen:
                    raise PermutationError(f"duplicate element {x}")
                seen.add(x)
                img[x - 1] = c[(k + 1) % len(c)] - 1
        return cls._trusted(tuple(img))

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        """1-based image tuple: ``images[i-1] == p(i)``."""
        return tuple(x + 1 for x in self._img)

    @property
    def zero_based(self) -> tuple:
        return self._img

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __len__(self):
        return len(self._img)

    def __repr__(self):
        return f"Permutation({format_cycles(self) or '()'}, n={self.n})"

    def __str__(self):
        return format_cycles(self)


def _check_degree(p: Permutation, q: Permutation):
    if p.n != q.n:
        raise PermutationError(f"degree mismatch: {p.n} != {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q, applying q first."""
    _check_degree(p, q)
    pi = p._img
    return Permutation._trusted(tuple(pi[x] for x in q._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, x in enumerate(p._img):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def commutator(p: Permutation, q: Permutation) -> Permutation:
    """[p, q] = p q p⁻¹ q⁻¹."""
    _check_degree(p, q)
    pi, qi = p._img, q._img
    pinv = inverse(p)._img
    qinv = inverse(q)._img
    return Permutation._trusted(tuple(pi[qi[pinv[qinv[x]]]] for x in range(p.n)))


def cycles(p: Permutation) -> list:
    """Cycles as 1-based tuples, each starting at its smallest element,
    ordered by decreasing length then by smallest element."""
    img = p._img
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = img[x]
        out.append(tuple(cyc))
    out.sort(key=lambda c: (-len(c), c[0]))
    return out


def _cycle_lengths(img: Sequence[int]) -> list:
    seen = [False] * len(img)
    lengths = []
    for start in range(len(img)):
        if seen[start]:
            continue
        k = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = img[x]
            k += 1
        lengths.append(k)
    return lengths


def cycle_type(p: Permutation) -> tuple:
    return tuple(sorted(_cycle_lengths(p._img), reverse=True))


def fixed_points(p: Permutation) -> set:
    return {i + 1 for i, x in enumerate(p._img) if i == x}


def parity(p: Permutation) -> str:
    """'even' or 'odd'."""
    return "even" if (p.n - len(_cycle_lengths(p._img))) % 2 == 0 else "odd"


def orbits(generators: Sequence[Permutation], n: int | None = None) -> list:
    """Orbit partition of {1..n} under the group generated by ``generators``.

    Returned as a list of sorted tuples ordered by smallest element.
    """
    if not generators:
        if n is None:
            raise PermutationError("degree unknown: no generators and no n")
        return [(i,) for i in range(1, n + 1)]
    if n is None:
        n = generators[0].n
    for g in generators:
        if g.n != n:
            raise PermutationError(f"degree mismatch: {g.n} != {n}")

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for i, x in enumerate(g._img):
            a, b = find(i), find(x)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i + 1)
    return sorted((tuple(v) for v in groups.values()), key=lambda o: o[0])


def is_transitive(generators: Sequence[Permutation], n: int | None = None) -> bool:
    return len(orbits(generators, n)) == 1


_TOKEN = re.compile(r"\s*(?:(\d+)|([(),])|(\S))")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse ``(1,2)(3,4,5)``-style notation into a degree-n permutation.

    Grammar: ``perm := cycle* ; cycle := '(' int (',' int)* ')'``, whitespace
    allowed between tokens. Elements not mentioned are fixed points.
    """
    if n < 1:
        raise PermutationError("degree must be at least 1")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(3) is not None:
            raise CycleSyntaxError(f"unexpected character {m.group(3)!r}", text, m.start(3))
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append((m.group(2), None, m.start(2)))
        pos = m.end()
    tokens.append(("end", None, len(text)))

    cyc_list = []
    seen: dict = {}
    i = 0

    def expect(kind):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1] if tok[0] == "int" else tok[0])
            want = "an integer" if kind == "int" else repr(kind)
            raise CycleSyntaxError(f"expected {want}, found {found}", text, tok[2])
        i += 1
        return tok

    while tokens[i][0] != "end":
        expect("(")
        cyc = []
        while True:
            _, val, at = expect("int")
            if not 1 <= val <= n:
                raise CycleSyntaxError(f"element {val} outside 1..{n}", text, at)
            if val in seen:
                raise CycleSyntaxError(f"duplicate element {val}", text, at)
            seen[val] = at
            cyc.append(val)
            if tokens[i][0] == ",":
                i += 1
                continue
            expect(")")
            break
        cyc_list.append(cyc)
    return Permutation.from_cycles(cyc_list, n)


def format_cycles(p: Permutation) -> str:
    """Cycle notation with fixed points omitted; the identity formats as ''."""
    cs = sorted((c for c in cycles(p) if len(c) > 1), key=lambda c: c[0])
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cs)


class RngStream:
    """Reproducible random stream keyed by ``(seed, stream_index)``.

    Backed by the counter-based Philox generator: ``seed`` is the key and the
    stream index occupies the high 128 bits of the counter, so distinct indices
    never overlap in practice. Not safe to share between threads.
    """

    __slots__ = ("seed", "stream_index", "gen")

    def __init__(self, seed: int, stream_index: int = 0):
        if not (0 <= seed < 2**64 and 0 <= stream_index < 2**64):
            raise ValueError("seed and stream_index must be unsigned 64-bit integers")
        self.seed = seed
        self.stream_index = stream_index
        bitgen = np.random.Philox(key=seed, counter=stream_index << 128)
        self.gen = np.random.Generator(bitgen)

    def permutation(self, n: int) -> np.ndarray:
        """Uniform 0-based permutation array of length n (Fisher–Yates)."""
        return self.gen.permutation(n)

    def randbelow(self, m: int) -> int:
        """Uniform integer in [0, m); exact for arbitrarily large m."""
        if m <= 0:
            raise ValueError("m must be positive")
        if m <= 2**63:
            return int(self.gen.integers(0, m))
        bits = m.bit_length()
        nbytes = (bits + 7) // 8
        while True:
            r = int.from_bytes(self.gen.bytes(nbytes), "little") >> (8 * nbytes - bits)
            if r < m:
                return r


def _array_parity_odd(img) -> bool:
    return (len(img) - len(_cycle_lengths(img))) % 2 == 1


def uniform_images(n: int, rng: RngStream, alternating: bool = False) -> np.ndarray:
    img = rng.permutation(n)
    if alternating and n >= 2 and _array_parity_odd(img.tolist()):
        # multiplying by a fixed transposition is a bijection odd -> even
        img[0], img[1] = img[1], img[0]
    return img


@lru_cache(maxsize=64)
def _successor_index(mu: tuple) -> np.ndarray:
    # position j -> position of the next entry in its block, wrapping per block
    nxt = np.arange(1, sum(mu) + 1)
    start = 0
    for length in mu:
        nxt[start + length - 1] = start
        start += length
    return nxt


def class_images(mu: Sequence[int], rng: RngStream) -> np.ndarray:
    """Uniform element of the conjugacy class of cycle type ``mu``, 0-based.

    A uniform word is cut into consecutive cycles of lengths mu; every class
    element arises from the same number of words.
    """
    word = rng.permutation(sum(mu))
    img = np.empty_like(word)
    img[word] = word[_successor_index(tuple(mu))]
    return img


def sample_uniform(space: str, n: int, rng: RngStream) -> Permutation:
    """Uniform element of S_n (``space='S'``) or A_n (``space='A'``)."""
    if space not in ("S", "A"):
        raise ValueError("space must be 'S' or 'A'")
    img = uniform_images(n, rng, alternating=(space == "A"))
    return Permutation._trusted(tuple(img.tolist()))


def sample_conjugacy_class(mu: Sequence[int], rng: RngStream) -> Permutation:
    return Permutation._trusted(tuple(class_images(mu, rng).tolist()))
