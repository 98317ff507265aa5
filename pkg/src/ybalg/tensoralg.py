"""Exact sparse tensor algebra over the rationals.

Basis tensors are indexed by *words*: the word ``(i1, ..., im)`` stands for
``e_{i1} (x) ... (x) e_{im}`` in the m-th tensor power of a fixed
finite-dimensional space with basis ``e_0, ..., e_{dim-1}``.  Every
coefficient is a ``fractions.Fraction``; nothing in this module ever rounds.

Permutations are kept in one-line form as 0-indexed tuples under the *left
action* convention: ``p[j]`` is the slot that the content of slot ``j`` moves
to, so ``(p . t)_{p(j)} = t_j``.  The pretty printer emits the 1-indexed
one-line string ``(312)`` used in reports, meaning the permutation sending
``v (x) w1 (x) w2`` to ``w1 (x) w2 (x) v`` when read with this convention.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

Word = tuple[int, ...]
Perm = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    """Coerce ints, strings like ``"2/3"``, and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def words(dim: int, length: int) -> Iterator[Word]:
    """All basis words of the given length, in lexicographic order."""
    return itertools.product(range(dim), repeat=length)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Composite ``p o q`` (apply ``q`` first, then ``p``)."""
    if len(p) != len(q):
        raise ValueError("size mismatch")
    return tuple(p[q[j]] for j in range(len(q)))


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for j, image in enumerate(p):
        inv[image] = j
    return tuple(inv)


def perm_sign(p: Perm) -> int:
    """Sign of a permutation, computed from its inversion count."""
    n = len(p)
    inversions = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
    return -1 if inversions % 2 else 1


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def perm_str(p: Perm) -> str:
    """1-indexed one-line notation, e.g. ``(312)``."""
    if len(p) <= 9:
        return "(" + "".join(str(i + 1) for i in p) + ")"
    return "(" + " ".join(str(i + 1) for i in p) + ")"


def parse_perm(text: str) -> Perm:
    """Inverse of :func:`perm_str`; accepts ``(312)`` or ``(3 1 2)``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if " " in body:
        images = [int(tok) - 1 for tok in body.split()]
    else:
        images = [int(ch) - 1 for ch in body]
    p = tuple(images)
    if not is_perm(p):
        raise ValueError(f"not a permutation: {text!r}")
    return p


def word_permute(p: Perm, w: Word) -> Word:
    """Left action on words: the letter in slot ``j`` moves to slot ``p[j]``."""
    if len(p) != len(w):
        raise ValueError("size mismatch")
    out = [0] * len(w)
    for j, letter in enumerate(w):
        out[p[j]] = letter
    return tuple(out)


def block_permutation_expand(tau: Perm, sizes: Sequence[int]) -> Perm:
    """Expand a block permutation to a permutation of the individual slots.

    Block ``j`` (of ``sizes[j]`` consecutive slots, in source order) moves as a
    contiguous unit to block position ``tau[j]``; slots inside a block keep
    their relative order.  Example: ``block_permutation_expand((1, 0), (1, 2))``
    is ``(2, 0, 1)``, printed ``(312)``, which sends ``v (x) w1 (x) w2`` to
    ``w1 (x) w2 (x) v``.
    """
    if len(tau) != len(sizes) or not is_perm(tau):
        raise ValueError("invalid block permutation")
    src_offset = [0] * len(sizes)
    for j in range(1, len(sizes)):
        src_offset[j] = src_offset[j - 1] + sizes[j - 1]
    out_offset = [0] * len(sizes)
    for j in range(len(sizes)):
        out_offset[j] = sum(sizes[k] for k in range(len(sizes)) if tau[k] < tau[j])
    total = sum(sizes)
    expanded = [0] * total
    for j, size in enumerate(sizes):
        for t in range(size):
            expanded[src_offset[j] + t] = out_offset[j] + t
    return tuple(expanded)


class BlockPermutation(NamedTuple):
    """A permutation of blocks together with the block sizes."""

    tau: Perm
    sizes: tuple[int, ...]

    def expand(self) -> Perm:
        return block_permutation_expand(self.tau, self.sizes)

    def __str__(self) -> str:
        sup = ",".join(str(s) for s in self.sizes)
        return f"{perm_str(self.tau)}^{{{sup}}}"


def sigma_prime(
    target_order: Sequence[Hashable],
    current: Sequence[tuple[Hashable, int]],
) -> Perm:
    """Slot realignment permutation for multilinear expansion bookkeeping.

    ``current`` lists the symbols of an expression in the order their slot
    blocks actually appear, each with the number of slots it occupies;
    ``target_order`` lists the same symbols in the order they should appear.
    Returns the expanded permutation that moves each block to its target
    position.  Symbols must be pairwise distinct.
    """
    symbols = [sym for sym, _ in current]
    if sorted(map(repr, symbols)) != sorted(map(repr, target_order)):
        raise ValueError("target order and expression order disagree on symbols")
    if len(set(target_order)) != len(target_order):
        raise ValueError("symbols must be distinct")
    position = {sym: k for k, sym in enumerate(target_order)}
    tau = tuple(position[sym] for sym in symbols)
    sizes = tuple(size for _, size in current)
    return block_permutation_expand(tau, sizes)


# ---------------------------------------------------------------------------
# graded tensors
# ---------------------------------------------------------------------------


class GradedTensor:
    """A finitely supported rational combination of basis words.

    Terms of different lengths may coexist (an element of the tensor algebra).
    Zero coefficients are purged eagerly, so structural equality of the term
    dictionaries is semantic equality.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Word, Fraction] | None = None):
        self.dim = dim
        purged: dict[Word, Fraction] = {}
        if terms:
            for word, coeff in terms.items():
                c = frac(coeff)
                if c:
                    purged[word] = c
        self.terms = purged

    @classmethod
    def basis(cls, dim: int, word: Word) -> "GradedTensor":
        return cls(dim, {tuple(word): ONE})

    @classmethod
    def zero(cls, dim: int) -> "GradedTensor":
        return cls(dim, {})

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        lengths = {len(w) for w in self.terms}
        return len(lengths) <= 1

    def degree(self) -> int:
        """Common word length; raises on mixed or zero tensors."""
        lengths = {len(w) for w in self.terms}
        if len(lengths) != 1:
            raise ValueError("tensor is zero or not homogeneous")
        return lengths.pop()

    def __add__(self, other: "GradedTensor") -> "GradedTensor":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        merged = dict(self.terms)
        for word, coeff in other.terms.items():
            merged[word] = merged.get(word, ZERO) + coeff
        return GradedTensor(self.dim, merged)

    def __sub__(self, other: "GradedTensor") -> "GradedTensor":
        return self + other.scale(-1)

    def __neg__(self) -> "GradedTensor":
        return self.scale(-1)

    def scale(self, scalar) -> "GradedTensor":
        c = frac(scalar)
        return GradedTensor(self.dim, {w: c * v for w, v in self.terms.items()})

    def tensor(self, other: "GradedTensor") -> "GradedTensor":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                out[word] = out.get(word, ZERO) + c1 * c2
        return GradedTensor(self.dim, out)

    def permute(self, p: Perm) -> "GradedTensor":
        return GradedTensor(
            self.dim, {word_permute(p, w): c for w, c in self.terms.items()}
        )

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), ZERO)

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedTensor)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for word, coeff in self.sorted_terms():
            bits.append(f"{coeff}*{''.join(map(str, word))}")
        return " + ".join(bits)


def apply_permutation(p: Perm, t: GradedTensor) -> GradedTensor:
    """Left action of a permutation on a graded tensor (see module docstring)."""
    return t.permute(p)


# ---------------------------------------------------------------------------
# tensor maps
# ---------------------------------------------------------------------------


class TensorMap:
    """A linear map from the ``dom_deg``-th to the ``cod_deg``-th tensor power.

    Stored sparsely as ``entries[(out_word, in_word)] = coefficient`` with
    zero entries purged eagerly; equality of entry dictionaries is equality of
    maps.
    """

    __slots__ = ("dim", "dom_deg", "cod_deg", "entries")

    def __init__(
        self,
        dim: int,
        dom_deg: int,
        cod_deg: int,
        entries: Mapping[tuple[Word, Word], Fraction] | None = None,
    ):
        self.dim = dim
        self.dom_deg = dom_deg
        self.cod_deg = cod_deg
        purged: dict[tuple[Word, Word], Fraction] = {}
        if entries:
            for (out_word, in_word), coeff in entries.items():
                if len(out_word) != cod_deg or len(in_word) != dom_deg:
                    raise ValueError("entry word length does not match degrees")
                c = frac(coeff)
                if c:
                    purged[(tuple(out_word), tuple(in_word))] = c
        self.entries = purged

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, dom_deg: int, cod_deg: int | None = None) -> "TensorMap":
        return cls(dim, dom_deg, dom_deg if cod_deg is None else cod_deg, {})

    @classmethod
    def identity(cls, dim: int, deg: int) -> "TensorMap":
        return cls(dim, deg, deg, {(w, w): ONE for w in words(dim, deg)})

    @classmethod
    def from_permutation(cls, p: Perm, dim: int) -> "TensorMap":
        return cls(
            dim,
            len(p),
            len(p),
            {(word_permute(p, w), w): ONE for w in words(dim, len(p))},
        )

    @classmethod
    def swap(cls, dim: int) -> "TensorMap":
        return cls.from_permutation((1, 0), dim)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def is_degree_preserving(self) -> bool:
        return self.dom_deg == self.cod_deg

    def sorted_entries(self) -> list[tuple[tuple[Word, Word], Fraction]]:
        return sorted(self.entries.items())

    def first_nonzero(self) -> tuple[Word, Word, Fraction] | None:
        """Lexicographically first nonzero entry, as ``(out, in, value)``."""
        if not self.entries:
            return None
        (out_word, in_word), coeff = min(self.entries.items())
        return (out_word, in_word, coeff)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorMap)
            and (self.dim, self.dom_deg, self.cod_deg)
            == (other.dim, other.dom_deg, other.cod_deg)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash(
            (self.dim, self.dom_deg, self.cod_deg, frozenset(self.entries.items()))
        )

    def __repr__(self) -> str:
        return (
            f"TensorMap(dim={self.dim}, {self.dom_deg}->{self.cod_deg}, "
            f"{len(self.entries)} entries)"
        )

    # -- linear algebra -----------------------------------------------------

    def apply(self, t: GradedTensor) -> GradedTensor:
        if t.dim != self.dim:
            raise ValueError("dimension mismatch")
        out: dict[Word, Fraction] = {}
        for word, coeff in t.terms.items():
            if len(word) != self.dom_deg:
                raise ValueError("input degree does not match map domain")
        for (out_word, in_word), c in self.entries.items():
            v = t.terms.get(in_word)
            if v:
                out[out_word] = out.get(out_word, ZERO) + c * v
        return GradedTensor(self.dim, out)

    def apply_word(self, w: Word) -> GradedTensor:
        return self.apply(GradedTensor.basis(self.dim, w))

    def __add__(self, other: "TensorMap") -> "TensorMap":
        self._check_same_shape(other)
        merged = dict(self.entries)
        for key, coeff in other.entries.items():
            merged[key] = merged.get(key, ZERO) + coeff
        return TensorMap(self.dim, self.dom_deg, self.cod_deg, merged)

    def __sub__(self, other: "TensorMap") -> "TensorMap":
        return self + other.scale(-1)

    def __neg__(self) -> "TensorMap":
        return self.scale(-1)

    def scale(self, scalar) -> "TensorMap":
        c = frac(scalar)
        return TensorMap(
            self.dim,
            self.dom_deg,
            self.cod_deg,
            {k: c * v for k, v in self.entries.items()},
        )

    def compose(self, other: "TensorMap") -> "TensorMap":
        """``self o other`` (apply ``other`` first)."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.dom_deg != other.cod_deg:
            raise ValueError("degree mismatch in composition")
        by_mid: dict[Word, list[tuple[Word, Fraction]]] = {}
        for (out_word, mid_word), c in self.entries.items():
            by_mid.setdefault(mid_word, []).append((out_word, c))
        out: dict[tuple[Word, Word], Fraction] = {}
        for (mid_word, in_word), c2 in other.entries.items():
            for out_word, c1 in by_mid.get(mid_word, ()):
                key = (out_word, in_word)
                out[key] = out.get(key, ZERO) + c1 * c2
        return TensorMap(self.dim, other.dom_deg, self.cod_deg, out)

    def __matmul__(self, other: "TensorMap") -> "TensorMap":
        return self.compose(other)

    def tensor_product(self, other: "TensorMap") -> "TensorMap":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: dict[tuple[Word, Word], Fraction] = {}
        for (o1, i1), c1 in self.entries.items():
            for (o2, i2), c2 in other.entries.items():
                out[(o1 + o2, i1 + i2)] = c1 * c2
        return TensorMap(
            self.dim, self.dom_deg + other.dom_deg, self.cod_deg + other.cod_deg, out
        )

    def conjugate_by_perm(self, p: Perm) -> "TensorMap":
        """``P o self o P^{-1}`` for the permutation operator ``P``."""
        if not self.is_degree_preserving() or len(p) != self.dom_deg:
            raise ValueError("conjugation needs a degree-preserving map")
        return TensorMap(
            self.dim,
            self.dom_deg,
            self.cod_deg,
            {
                (word_permute(p, o), word_permute(p, i)): c
                for (o, i), c in self.entries.items()
            },
        )

    def r21(self) -> "TensorMap":
        """``swap o r o swap`` for maps on the square of the base space."""
        if self.dom_deg != 2 or self.cod_deg != 2:
            raise ValueError("r21 is defined for maps on tensor squares")
        return self.conjugate_by_perm((1, 0))

    def _check_same_shape(self, other: "TensorMap") -> None:
        if (self.dim, self.dom_deg, self.cod_deg) != (
            other.dim,
            other.dom_deg,
            other.cod_deg,
        ):
            raise ValueError("shape mismatch")


def embed_components(r: TensorMap, slots: Sequence[int], n: int) -> TensorMap:
    """Embed a degree-preserving map so it acts on the given slots of ``n``.

    ``slots`` are 1-indexed, pairwise distinct, and may appear in any order:
    the ``t``-th tensor factor of the map acts on slot ``slots[t]``.
    ``embed_components(r, (1, 3), 3)`` is the usual ``r^{13}``;
    ``embed_components(r, (3, 1), 3)`` is ``r^{31}``.
    """
    if not r.is_degree_preserving():
        raise ValueError("embedding needs a degree-preserving map")
    k = r.dom_deg
    if len(slots) != k or len(set(slots)) != k:
        raise ValueError("slots must be distinct and match the map degree")
    if any(s < 1 or s > n for s in slots):
        raise ValueError("slot out of range")
    idx = [s - 1 for s in slots]
    passive = [j for j in range(n) if j not in idx]
    out: dict[tuple[Word, Word], Fraction] = {}
    for (o, i), c in r.entries.items():
        for filler in words(r.dim, len(passive)):
            out_word = [0] * n
            in_word = [0] * n
            for t, j in enumerate(idx):
                out_word[j] = o[t]
                in_word[j] = i[t]
            for t, j in enumerate(passive):
                out_word[j] = filler[t]
                in_word[j] = filler[t]
            out[(tuple(out_word), tuple(in_word))] = c
    return TensorMap(r.dim, n, n, out)


def commutator(f: TensorMap, g: TensorMap) -> TensorMap:
    return f.compose(g) - g.compose(f)
