"""Endomorphism classes under the trace relation, and their power operators.

Two endomorphisms are identified when they are the two ways around a
composable round trip: for f: x -> y and g: y -> x, the loops g∘f and f∘g
fall in the same class.  The classes of a finite category are computed by a
union-find sweep over all such pairs.  For a one-object group category the
classes are exactly the conjugacy classes.

Cyclic words (composable cycles of morphisms) represent classes too: a word
maps to the class of its composite, independently of the chosen basepoint.
The operator psi_r sends a class to the class of the r-th power of any
member; equivalently it repeats a cyclic word r times.
"""
from __future__ import annotations

import weakref

from .fincat import FinCat, Functor


def least_rotation_index(seq) -> int:
    """Booth's algorithm: index of the lexicographically least rotation."""
    s = list(seq) + list(seq)
    n = len(seq)
    assert n >= 1
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class HHClass:
    """One trace class: its representative (least morphism index) and all
    member endomorphisms."""

    def __init__(self, table: "HHTable", rep: str, members: tuple):
        self.table = table
        self.rep = rep
        self.members = members

    def __eq__(self, other):
        if not isinstance(other, HHClass):
            return NotImplemented
        return self.table is other.table and self.rep == other.rep

    def __hash__(self):
        return hash((id(self.table), self.rep))

    def __repr__(self):
        return f"HHClass({self.rep}: {{{', '.join(self.members)}}})"


class HHTable:
    def __init__(self, category: FinCat):
        self.category = category
        endos = category.endomorphisms()
        uf = UnionFind(endos)
        for f in category.morphisms:
            for g in category.hom(f.tgt, f.src):
                uf.union(category.comp(g, f.mid), category.comp(f.mid, g))
        self._class_of: dict[str, HHClass] = {}
        groups = sorted(
            uf.classes().values(),
            key=lambda ms: min(category.morphism_index(m) for m in ms))
        self.classes: list[HHClass] = []
        for members in groups:
            members = tuple(sorted(members, key=category.morphism_index))
            cls = HHClass(self, members[0], members)
            self.classes.append(cls)
            for m in members:
                self._class_of[m] = cls

    def class_of(self, endo: str) -> HHClass:
        if endo not in self._class_of:
            raise ValueError(f"{endo!r} is not an endomorphism of this category")
        return self._class_of[endo]

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"HHTable({len(self.classes)} classes of {self.category!r})"


_tables: "weakref.WeakKeyDictionary[FinCat, HHTable]" = weakref.WeakKeyDictionary()


def compute_hh(category: FinCat) -> HHTable:
    """The table of trace classes; cached per category instance so classes
    from repeated calls compare equal."""
    if category not in _tables:
        _tables[category] = HHTable(category)
    return _tables[category]


class CyclicWord:
    """A composable cycle of morphisms, read left to right; the target of
    the last wraps to the source of the first."""

    def __init__(self, category: FinCat, word):
        self.category = category
        self.word = tuple(word)
        assert len(self.word) >= 1, "cyclic words are nonempty"
        for a, b in zip(self.word, self.word[1:] + self.word[:1]):
            if category.tgt(a) != category.src(b):
                raise ValueError(f"{a!r} then {b!r} does not chain cyclically")

    def rotate(self, j: int) -> "CyclicWord":
        j %= len(self.word)
        return CyclicWord(self.category, self.word[j:] + self.word[:j])

    def canonical(self) -> "CyclicWord":
        idx = least_rotation_index(
            [self.category.morphism_index(m) for m in self.word])
        return self.rotate(idx)

    def repeat(self, r: int) -> "CyclicWord":
        assert r >= 1
        return CyclicWord(self.category, self.word * r)

    def composite(self) -> str:
        """The endomorphism at the basepoint: last ∘ ... ∘ first."""
        c = self.category
        out = c.identity(c.src(self.word[0]))
        for m in self.word:
            out = c.comp(m, out)
        return out

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return (self.category is other.category
                and self.canonical().word == other.canonical().word)

    def __hash__(self):
        return hash(self.canonical().word)

    def __repr__(self):
        return f"CyclicWord({' · '.join(self.word)})"


def class_of_word(w: CyclicWord) -> HHClass:
    """Basepoint-independent: rotations give the same class."""
    return compute_hh(w.category).class_of(w.composite())


def power_endo(category: FinCat, endo: str, r: int) -> str:
    assert r >= 1
    out = endo
    for _ in range(r - 1):
        out = category.comp(endo, out)
    return out


def psi(category: FinCat, r: int, x) -> HHClass:
    """The r-th power operator on trace classes.

    Accepts an endomorphism id, a cyclic word, or a class; for words it
    repeats the word, for endomorphisms it powers them -- the two agree on
    classes, and psi_r psi_s = psi_rs.
    """
    if isinstance(x, CyclicWord):
        return class_of_word(x.repeat(r))
    if isinstance(x, HHClass):
        endo = x.rep
    else:
        endo = x
    return compute_hh(category).class_of(power_endo(category, endo, r))


def trace_end(category: FinCat, endo: str) -> HHClass:
    return compute_hh(category).class_of(endo)


def trace_obj(category: FinCat, x: str) -> HHClass:
    """The class of the identity; fixed by every psi_r."""
    return compute_hh(category).class_of(category.identity(x))


def hh_map(functor: Functor, cls: HHClass) -> HHClass:
    """Push a class forward along a functor (well-defined on classes)."""
    assert cls.table.category is functor.source
    return compute_hh(functor.target).class_of(functor(cls.rep))
