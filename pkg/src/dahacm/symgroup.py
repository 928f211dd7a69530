"""Permutations of {1..n} in one-line notation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itperms

MAX_N = 8


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[j - 1] = j, i
        return cls(tuple(imgs))

    @classmethod
    def simple(cls, n: int, i: int) -> "Permutation":
        """s_i = (i, i+1)."""
        if not 1 <= i < n:
            raise ValueError(f"s_{i} does not exist in S_{n}")
        return cls.transposition(n, i, i + 1)

    @classmethod
    def cycle(cls, n: int) -> "Permutation":
        """c(i) = i+1 for i < n, c(n) = 1."""
        return cls(tuple(list(range(2, n + 1)) + [1]))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def __repr__(self):
        return f"Permutation{self.images}"

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data) -> "Permutation":
        return cls(tuple(int(x) for x in data))


def _check_n(n: int):
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValueError(f"n out of supported range 1..{MAX_N}: {n!r}")


@lru_cache(maxsize=None)
def enumerate_sn(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic order of one-line notation (identity first)."""
    _check_n(n)
    return tuple(Permutation(p) for p in _itperms(range(1, n + 1)))


def coxeter_length(w: Permutation) -> int:
    imgs = w.images
    return sum(1 for a in range(len(imgs)) for b in range(a + 1, len(imgs)) if imgs[a] > imgs[b])


def reduced_word(w: Permutation) -> list[int]:
    """Peel off the smallest right descent repeatedly: w = (w s_i) s_i."""
    word = []
    imgs = list(w.images)
    while True:
        i = next((k for k in range(len(imgs) - 1) if imgs[k] > imgs[k + 1]), None)
        if i is None:
            break
        imgs[i], imgs[i + 1] = imgs[i + 1], imgs[i]
        word.append(i + 1)
    word.reverse()
    return word


def word_to_perm(word, n: int) -> Permutation:
    out = Permutation.identity(n)
    for i in word:
        out = out * Permutation.simple(n, i)
    return out


def braid_moves(word: list[int]) -> list[list[int]]:
    """Words obtained from `word` by a single braid or commutation move."""
    out = []
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if abs(a - b) > 1:
            out.append(word[:k] + [b, a] + word[k + 2:])
        if k + 2 < len(word) and abs(a - b) == 1 and word[k + 2] == a:
            out.append(word[:k] + [b, a, b] + word[k + 3:])
    return out


def reduced_words(w: Permutation, limit: int = 64) -> list[list[int]]:
    """Up to `limit` reduced words of w, explored from reduced_word(w) by braid moves."""
    start = reduced_word(w)
    seen = {tuple(start)}
    frontier = [start]
    while frontier and len(seen) < limit:
        nxt = []
        for word in frontier:
            for alt in braid_moves(word):
                t = tuple(alt)
                if t not in seen:
                    seen.add(t)
                    nxt.append(alt)
        frontier = nxt
    return [list(t) for t in sorted(seen)][:limit]
