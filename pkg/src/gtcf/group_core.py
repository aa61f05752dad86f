"""Finite groups, words, marked groups, product matrices and diagonal classes.

All indices in this API are 0-based; the JSON layer converts to the 1-based
convention (identity at position 1) used in group tables on disk.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import OracleError, ParseError, UnknownLetterError, ValidationError

# ---------------------------------------------------------------- finite groups


@dataclass(frozen=True)
class FiniteGroup:
    elements: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    inverses: Tuple[int, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise UnknownLetterError(f"{label!r} is not an element of {self.name or 'the group'}")

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "table": [[x + 1 for x in row] for row in self.table],
        }


def fg_validate(elements: Sequence[str], table: Sequence[Sequence[int]], one_based: bool = True,
                name: str = "") -> FiniteGroup:
    """Validate a multiplication table; entries are 1-based unless ``one_based`` is false."""
    e = len(elements)
    if e == 0:
        raise ValidationError("a group needs at least one element", kind="not-closed")
    if len(set(elements)) != e:
        raise ValidationError("duplicate element labels", kind="duplicate-label")
    shift = 1 if one_based else 0
    if len(table) != e or any(len(row) != e for row in table):
        raise ValidationError(f"table must be {e}x{e}", kind="not-closed")
    t = []
    for row in table:
        r = []
        for x in row:
            if not isinstance(x, int) or not (shift <= x < e + shift):
                raise ValidationError(f"table entry {x!r} outside 1..{e}", kind="not-closed")
            r.append(x - shift)
        t.append(tuple(r))
    for i in range(e):
        if t[0][i] != i or t[i][0] != i:
            raise ValidationError("element 1 is not a two-sided identity", kind="no-identity-at-1")
    inverses = []
    for i in range(e):
        inv = [j for j in range(e) if t[i][j] == 0 and t[j][i] == 0]
        if not inv:
            raise ValidationError(f"element {elements[i]!r} has no inverse", kind="missing-inverse")
        inverses.append(inv[0])
    if e <= 64:
        for a, b, c in iproduct(range(e), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValidationError(
                    f"({elements[a]}*{elements[b]})*{elements[c]} differs from "
                    f"{elements[a]}*({elements[b]}*{elements[c]})",
                    kind="non-associative",
                )
    return FiniteGroup(tuple(elements), tuple(t), tuple(inverses), name)


def cyclic_group(n: int, labels: Optional[Sequence[str]] = None, name: str = "") -> FiniteGroup:
    if labels is None:
        labels = ["1"] + [f"g{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return fg_validate(labels, table, one_based=False, name=name or f"C{n}")


def klein_group(labels: Sequence[str] = ("1", "sigma", "tau", "gamma")) -> FiniteGroup:
    # bit encoding: sigma = 01, tau = 10, gamma = 11
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return fg_validate(labels, table, one_based=False, name="C2xC2")


def group_from_spec(spec) -> FiniteGroup:
    """Build from ``{"elements", "table"}`` or the shorthands ``{"cyclic": n, "labels": [...]}``."""
    if isinstance(spec, FiniteGroup):
        return spec
    if "cyclic" in spec:
        return cyclic_group(int(spec["cyclic"]), spec.get("labels"), spec.get("name", ""))
    if spec.get("klein"):
        return klein_group(spec.get("labels", ("1", "sigma", "tau", "gamma")))
    if "elements" not in spec or "table" not in spec:
        raise ValidationError("group spec needs 'elements' and 'table'", kind="invalid-spec")
    return fg_validate(spec["elements"], spec["table"], one_based=True, name=spec.get("name", ""))


# ---------------------------------------------------------------- words

_GREEK = {
    "σ": "sigma", "τ": "tau", "γ": "gamma", "α": "alpha", "β": "beta",
    "δ": "delta", "ε": "epsilon", "ζ": "zeta", "ρ": "rho", "λ": "lambda",
}
_PRIME = {"′": "'", "’": "'"}
_SUPERSCRIPT = str.maketrans("⁻¹²³⁴⁵⁶⁷⁸⁹⁰", "-1234567890")


@dataclass(frozen=True)
class Word:
    """A group word: letters are (name, +1 | -1); the empty word is the identity."""

    letters: Tuple[Tuple[str, int], ...] = ()

    @staticmethod
    def of(*names: str) -> "Word":
        return Word(tuple((n, 1) for n in names))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def power(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __str__(self):
        if not self.letters:
            return "1"
        out = []
        i = 0
        L = self.letters
        while i < len(L):
            n, e = L[i]
            j = i
            while j + 1 < len(L) and L[j + 1] == (n, e):
                j += 1
            k = (j - i + 1) * e
            out.append(n if k == 1 else f"{n}^{k}")
            i = j + 1
        return "*".join(out)

    def __repr__(self):
        return f"Word({self})"


_WORD_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_']*|1)(?:\^(-?\d+))?$")


def _split_unicode(token: str) -> List[str]:
    """Split juxtaposed Greek letters, e.g. 'τσ′' -> ['tau', "sigma'"]."""
    parts: List[str] = []
    buf = ""
    greek = False
    for ch in token:
        if ch in _GREEK or (greek and ch.isalpha()):
            if buf:
                parts.append(buf)
            buf = _GREEK.get(ch, ch)
            greek = ch in _GREEK
        else:
            buf += _PRIME.get(ch, ch)
    if buf:
        parts.append(buf)
    return parts


def parse_word(text: str) -> Word:
    """Parse ``sigma*tau^-1``, ``t tau``, ``σ·τ`` and the like; ``1`` or empty is the identity."""
    if isinstance(text, Word):
        return text
    if isinstance(text, (list, tuple)):
        return Word(tuple((str(n), int(e)) for n, e in text))
    s = str(text).translate(_SUPERSCRIPT)
    raw = [tok for tok in re.split(r"[*·\s]+", s.strip()) if tok]
    letters: List[Tuple[str, int]] = []
    pos = 0
    for tok in raw:
        for piece in _split_unicode(tok):
            m = _WORD_TOKEN.match(piece)
            if m is None:
                raise ParseError(f"bad word token {piece!r}", position=s.find(piece, pos))
            name, exp = m.group(1), int(m.group(2) or 1)
            if name == "1":
                continue
            if exp == 0:
                continue
            sign = 1 if exp > 0 else -1
            letters.extend([(name, sign)] * abs(exp))
        pos = s.find(tok, pos) + len(tok)
    return Word(tuple(letters))


# ---------------------------------------------------------------- marked groups


class WordOracle:
    """Interface of a word-problem oracle."""

    alphabet: frozenset = frozenset()

    def normal_form(self, w: Word) -> Word:  # pragma: no cover - interface
        raise NotImplementedError

    def key(self, w: Word):
        return self.normal_form(w).letters

    def words_equal(self, a: Word, b: Word) -> bool:
        return self.key(a) == self.key(b)

    def check_letters(self, w: Word):
        for n, _ in w.letters:
            if n not in self.alphabet:
                raise UnknownLetterError(f"unknown letter {n!r}", letter=n)


class FiniteGroupOracle(WordOracle):
    """Word problem of a finite group by table lookup."""

    certificate = "finite-table"

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.alphabet = frozenset(group.elements[1:]) | {group.elements[0]}

    def evaluate(self, w: Word) -> int:
        self.check_letters(w)
        g = self.group
        x = 0
        for n, e in w.letters:
            a = g.index(n)
            if e < 0:
                a = g.inv(a)
            x = g.mul(x, a)
        return x

    def normal_form(self, w: Word) -> Word:
        x = self.evaluate(w)
        return Word() if x == 0 else Word.of(self.group.elements[x])

    def key(self, w: Word):
        return self.evaluate(w)


@dataclass
class MarkedGroup:
    """A group with a generator sequence rho and a word oracle.

    ``identity_index`` is the position of the identity in rho (0 unless a
    bespoke marking such as (sigma^-1, 1, sigma, ...) puts it elsewhere).
    ``structure`` carries the sub-sequences used by the pair checks.
    """

    rho: Tuple[Word, ...]
    oracle: WordOracle
    kind: str
    name: str = ""
    structure: dict = field(default_factory=dict)
    identity_index: int = 0

    def __post_init__(self):
        self.rho = tuple(self.rho)
        for w in self.rho:
            self.oracle.check_letters(w)
        keys = [self.oracle.key(w) for w in self.rho]
        if len(set(keys)) != len(keys):
            raise ValidationError("rho entries are not pairwise distinct", kind="duplicate-generator")
        if keys[self.identity_index] != self.oracle.key(Word()):
            raise ValidationError("rho does not hold the identity at its identity position",
                                  kind="no-identity-at-1")
        self._index = {k: i for i, k in enumerate(keys)}
        self._nf_cache: Dict[Tuple, Word] = {}

    @property
    def m(self) -> int:
        return len(self.rho)

    @property
    def alphabet(self):
        return self.oracle.alphabet

    def key(self, w: Word):
        return self.oracle.key(w)

    def normal_form(self, w: Word) -> Word:
        nf = self._nf_cache.get(w.letters)
        if nf is None:
            nf = self.oracle.normal_form(w)
            self._nf_cache[w.letters] = nf
        return nf

    def words_equal(self, a: Word, b: Word) -> bool:
        return self.oracle.words_equal(a, b)

    def index_of(self, w: Word) -> Optional[int]:
        return self._index.get(self.oracle.key(w))

    def mul(self, a: Word, b: Word) -> Word:
        return self.normal_form(a * b)

    def sub_indices(self, name: str) -> List[int]:
        return list(self.structure.get(name, []))


# ---------------------------------------------------------------- permutations and matrices


@dataclass(frozen=True)
class PartialPermutation:
    """Partial map j -> k on {0..m-1}."""

    m: int
    mapping: Tuple[Tuple[int, int], ...]

    def as_dict(self, one_based: bool = False) -> Dict[int, int]:
        s = 1 if one_based else 0
        return {j + s: k + s for j, k in self.mapping}

    @property
    def domain(self) -> List[int]:
        return [j for j, _ in self.mapping]

    def is_total(self) -> bool:
        return len(self.mapping) == self.m

    def __call__(self, j: int) -> Optional[int]:
        return dict(self.mapping).get(j)

    def cycles(self) -> List[List[int]]:
        """Cycle decomposition (1-based, fixed points omitted); total maps only."""
        if not self.is_total():
            raise ValidationError("cycle notation needs a total permutation", kind="partial-permutation")
        d = dict(self.mapping)
        seen = set()
        out = []
        for start in range(self.m):
            if start in seen or d[start] == start:
                seen.add(start)
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x + 1)
                x = d[x]
            out.append(cyc)
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        sep = "" if self.m < 10 else ","
        return "".join("(" + sep.join(str(x) for x in c) + ")" for c in cyc)


def left_mul_permutation(M: MarkedGroup, g: Word) -> PartialPermutation:
    M.oracle.check_letters(g)
    pairs = []
    for j, r in enumerate(M.rho):
        k = M.index_of(g * r)
        if k is not None:
            pairs.append((j, k))
    return PartialPermutation(M.m, tuple(pairs))


def rho_product_matrix(M: MarkedGroup) -> List[List[Word]]:
    try:
        return [[M.mul(a, b) for b in M.rho] for a in M.rho]
    except (UnknownLetterError, ValidationError):
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise OracleError(f"oracle failed: {exc}")


@dataclass
class DiagonalClasses:
    """Partition of the m x m grid by equality of rho_i * rho_j.

    ``relations`` lists every nontrivial identification (i, j, k, l) with
    (i, j) < (k, l) lexicographically, once each.
    """

    m: int
    classes: List[Tuple[Tuple[int, int], ...]]
    representatives: List[Word]
    class_of: Dict[Tuple[int, int], int]
    relations: List[Tuple[int, int, int, int]]

    def same(self, i, j, k, l) -> bool:
        return self.class_of[(i, j)] == self.class_of[(k, l)]

    def all_relations(self) -> List[Tuple[int, int, int, int]]:
        """The full set P, including trivial and symmetric quadruples."""
        out = []
        for cls in self.classes:
            for a in cls:
                for b in cls:
                    out.append(a + b)
        return sorted(out)

    def nontrivial_classes(self):
        return [c for c in self.classes if len(c) > 1]


def diagonal_classes(M: MarkedGroup) -> DiagonalClasses:
    keys: Dict[object, int] = {}
    classes: List[List[Tuple[int, int]]] = []
    reps: List[Word] = []
    class_of: Dict[Tuple[int, int], int] = {}
    for i, a in enumerate(M.rho):
        for j, b in enumerate(M.rho):
            w = a * b
            k = M.key(w)
            c = keys.get(k)
            if c is None:
                c = len(classes)
                keys[k] = c
                classes.append([])
                reps.append(M.normal_form(w))
            classes[c].append((i, j))
            class_of[(i, j)] = c
    relations = []
    for cls in classes:
        for x in range(len(cls)):
            for y in range(x + 1, len(cls)):
                relations.append(cls[x] + cls[y])
    relations.sort()
    return DiagonalClasses(M.m, [tuple(c) for c in classes], reps, class_of, relations)
