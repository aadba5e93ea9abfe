"""Surface presentations and arithmetic in their fundamental groups.

A surface with boundary has free fundamental group on its generators, so
free homotopy classes of loops are conjugacy classes of a free group and are
decided by cyclic reduction.  Closed non-orientable surfaces
``a1^2 a2^2 ... ak^2 = 1`` only get homology-level operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = tuple[str, int]
Word = tuple[Letter, ...]


class UnsupportedSurfaceError(ValueError):
    """Raised for homotopy-level operations on a closed surface."""


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class SurfacePresentation:
    kind: str
    generators: tuple[tuple[str, int], ...]
    relator: Word = ()
    _bits: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind not in ("boundary", "closed"):
            raise ValueError(f"unknown surface kind {self.kind!r}")
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator symbols")
        for name, bit in self.generators:
            if not name or "." in name or "-" in name or bit not in (0, 1):
                raise ValueError(f"bad generator {name!r} {bit!r}")
        if not any(bit for _, bit in self.generators):
            raise ValueError("surface must be non-orientable: some generator needs w1 = 1")
        if self.kind == "closed":
            expected = tuple((g, 1) for g in names for _ in range(2))
            if self.relator != expected or not all(bit for _, bit in self.generators):
                raise ValueError("closed surface needs cross-cap generators and relator a1^2...ak^2")
        elif self.relator:
            raise ValueError("a surface with boundary has no relator")
        object.__setattr__(self, "_bits", dict(self.generators))

    @classmethod
    def with_boundary(cls, generators: Iterable[tuple[str, int]]) -> SurfacePresentation:
        return cls("boundary", tuple((str(g), int(b)) for g, b in generators))

    @classmethod
    def closed(cls, k: int) -> SurfacePresentation:
        if k < 1:
            raise ValueError("closed non-orientable surface needs k >= 1 cross-caps")
        gens = tuple((f"a{j}", 1) for j in range(1, k + 1))
        return cls("closed", gens, tuple((g, 1) for g, _ in gens for _ in range(2)))

    @property
    def is_closed(self) -> bool:
        return self.kind == "closed"

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    def w1_bit(self, symbol: str) -> int:
        try:
            return self._bits[symbol]
        except KeyError:
            raise WordError(f"unknown generator {symbol!r}") from None

    def has(self, symbol: str) -> bool:
        return symbol in self._bits


# --- words ----------------------------------------------------------------

def parse_word(text: str) -> Word:
    """Parse ``a.b-.a`` (``.`` alone is the empty word)."""
    if text == ".":
        return ()
    letters = []
    for tok in text.split("."):
        if not tok:
            raise WordError(f"empty letter in word {text!r}")
        exp = 1
        if tok.endswith("-"):
            tok, exp = tok[:-1], -1
        if not tok or "-" in tok:
            raise WordError(f"malformed letter in word {text!r}")
        letters.append((tok, exp))
    return tuple(letters)


def format_word(w: Sequence[Letter]) -> str:
    if not w:
        return "."
    return ".".join(s if e > 0 else s + "-" for s, e in w)


def inverse(w: Sequence[Letter]) -> Word:
    return tuple((s, -e) for s, e in reversed(w))


def reduce_word(w: Sequence[Letter], surface: SurfacePresentation | None = None) -> Word:
    out: list[Letter] = []
    for s, e in w:
        if surface is not None:
            surface.w1_bit(s)
        if out and out[-1][0] == s and out[-1][1] == -e:
            out.pop()
        else:
            out.append((s, e))
    return tuple(out)


def cyclic_reduce(w: Sequence[Letter]) -> Word:
    w = reduce_word(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i][0] == w[j - 1][0] and w[i][1] == -w[j - 1][1]:
        i += 1
        j -= 1
    return w[i:j]


def w1(w: Iterable[Letter], surface: SurfacePresentation) -> int:
    return sum(surface.w1_bit(s) for s, _ in w) % 2


def _letter_key(letter: Letter) -> tuple[str, int]:
    return (letter[0], 0 if letter[1] > 0 else 1)


@dataclass(frozen=True)
class FreeHomotopyClass:
    """Conjugacy class in a free group, stored as its least cyclic rotation."""

    word: Word

    @property
    def is_trivial(self) -> bool:
        return not self.word

    contractible = is_trivial

    def sort_key(self):
        return (len(self.word), tuple(_letter_key(x) for x in self.word))

    def __str__(self) -> str:
        return "[" + format_word(self.word) + "]"

    def inverse(self) -> FreeHomotopyClass:
        return _canonical_class(inverse(self.word))


def _canonical_class(w: Sequence[Letter]) -> FreeHomotopyClass:
    w = cyclic_reduce(w)
    if not w:
        return FreeHomotopyClass(())
    keys = [_letter_key(x) for x in w]
    n = len(w)
    best = min(range(n), key=lambda r: keys[r:] + keys[:r])
    return FreeHomotopyClass(tuple(w[best:] + w[:best]))


def free_homotopy_class(w: Sequence[Letter], surface: SurfacePresentation) -> FreeHomotopyClass:
    if surface.is_closed:
        raise UnsupportedSurfaceError(
            "free homotopy classes are only computed on surfaces with boundary")
    for s, _ in w:
        surface.w1_bit(s)
    return _canonical_class(w)


# --- homology -------------------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` diagonal, ``d_i | d_{i+1}``, U and V unimodular."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                       if a[i][j] % a[t][t]]
                if not bad:
                    break
                add_row(bad[0][0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


@dataclass(frozen=True)
class HomologyClass:
    """Element of H1 in Smith coordinates; ``moduli[i] == 0`` marks a free coordinate."""

    coords: tuple[int, ...]
    moduli: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.coords)

    is_null_homologous = is_trivial

    def sort_key(self):
        return self.coords

    def __str__(self) -> str:
        return "H(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class _HomologyBasis:
    v: tuple[tuple[int, ...], ...]
    moduli: tuple[int, ...]


_BASIS_CACHE: dict[SurfacePresentation, _HomologyBasis] = {}


def _homology_basis(surface: SurfacePresentation) -> _HomologyBasis:
    basis = _BASIS_CACHE.get(surface)
    if basis is not None:
        return basis
    k = len(surface.generators)
    if not surface.relator:
        basis = _HomologyBasis(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)),
                               (0,) * k)
    else:
        d, _, v = smith_normal_form([abelianize(surface.relator, surface)])
        diag = [d[i][i] if i < len(d) else 0 for i in range(k)]
        basis = _HomologyBasis(tuple(map(tuple, v)), tuple(diag))
    _BASIS_CACHE[surface] = basis
    return basis


def abelianize(w: Iterable[Letter], surface: SurfacePresentation) -> list[int]:
    index = {g: i for i, g in enumerate(surface.symbols)}
    vec = [0] * len(index)
    for s, e in w:
        surface.w1_bit(s)
        vec[index[s]] += e
    return vec


def homology_class(w: Iterable[Letter], surface: SurfacePresentation) -> HomologyClass:
    basis = _homology_basis(surface)
    vec = abelianize(w, surface)
    k = len(vec)
    coords = [sum(vec[i] * basis.v[i][j] for i in range(k)) for j in range(k)]
    kept, moduli = [], []
    for c, d in zip(coords, basis.moduli):
        if d == 1:
            continue
        kept.append(c % d if d else c)
        moduli.append(d)
    return HomologyClass(tuple(kept), tuple(moduli))
