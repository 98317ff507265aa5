"""R-twisted symmetric-group actions and graded bialgebra components.

A unitary solution ``R`` of the quantum equation turns the usual
permutation action of ``S_m`` on the m-th tensor power into a twisted one:
the adjacent transposition ``(b, b+1)`` acts as the component swap composed
with ``R`` placed in slots ``b, b+1``.  Three computations hang off that
action, all by exact linear algebra:

* Young symmetrizers evaluated in the twisted action cut out the
  irreducible pieces of the tensor power;
* the degree-``m`` component of the quadratic quotient bialgebra built
  from ``R`` is realized inside ``End(V)^{\\otimes m}`` as the commutant of
  the twisted action (its dimension is computed both by row reduction of
  the inserted quadratic relations and as that commutant, and the two
  counts are asserted equal);
* the double commutant closes up onto the span of the twisted group
  image, giving the multiplicity-free decomposition bookkeeping.

Everything is brute force over ``Fraction`` and deterministic: words are
enumerated lexicographically, permutations in sorted one-line order, and
partitions in descending lexicographic order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from . import ybe
from .linalg import Vector, rank, row_space_equal, rref
from .tensoralg import (
    Perm,
    TensorMap,
    identity_perm,
    is_perm,
    perm_compose,
    perm_sign,
    perm_str,
    words,
)

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# group algebra of S_m


class GroupAlgebraElement:
    """Sparse rational element of the group algebra of one fixed ``S_m``.

    Permutations are stored in one-line image form; the product is
    convolution, with ``perm_compose`` (apply the right factor first) as
    the group law so that evaluation in any left action is a homomorphism.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Perm, Fraction] | None = None):
        if m < 1:
            raise ValueError("the symmetric group index must be at least 1")
        self.m = m
        purged: dict[Perm, Fraction] = {}
        for perm, coeff in (terms or {}).items():
            p = tuple(perm)
            if len(p) != m or not is_perm(p):
                raise ValueError(f"not a permutation of {m} letters: {perm!r}")
            c = Fraction(coeff)
            if c:
                purged[p] = c
        self.terms = purged

    @classmethod
    def identity(cls, m: int) -> "GroupAlgebraElement":
        return cls(m, {identity_perm(m): ONE})

    @classmethod
    def basis(cls, perm: Perm) -> "GroupAlgebraElement":
        return cls(len(perm), {tuple(perm): ONE})

    def support(self) -> list[Perm]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), ZERO)

    def scale(self, scalar) -> "GroupAlgebraElement":
        c = Fraction(scalar)
        return GroupAlgebraElement(
            self.m, {p: c * v for p, v in self.terms.items()}
        )

    def __neg__(self) -> "GroupAlgebraElement":
        return self.scale(-1)

    def _check_m(self, other: "GroupAlgebraElement") -> None:
        if self.m != other.m:
            raise ValueError("elements live in different symmetric groups")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_m(other)
        total = dict(self.terms)
        for p, c in other.terms.items():
            total[p] = total.get(p, ZERO) + c
        return GroupAlgebraElement(self.m, total)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_m(other)
        total: dict[Perm, Fraction] = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                key = perm_compose(p, q)
                total[key] = total.get(key, ZERO) + cp * cq
        return GroupAlgebraElement(self.m, total)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupAlgebraElement)
            and self.m == other.m
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return f"GroupAlgebraElement({self.m}, 0)"
        body = " + ".join(f"{c}*{perm_str(p)}" for p, c in sorted(self.terms.items()))
        return f"GroupAlgebraElement({self.m}, {body})"


def group_algebra_rank(x: GroupAlgebraElement) -> int:
    """Rank of right multiplication by ``x`` on the group algebra.

    For a Young symmetrizer this equals the dimension of the irreducible
    representation the symmetrizer generates, which makes it an oracle
    independent of the hook-length count.
    """
    perms = sorted(itertools.permutations(range(x.m)))
    index = {p: k for k, p in enumerate(perms)}
    rows = []
    for sigma in perms:
        row = [ZERO] * len(perms)
        for tau, c in x.terms.items():
            row[index[perm_compose(sigma, tau)]] += c
        rows.append(row)
    return rank(rows, len(perms))


# ---------------------------------------------------------------------------
# partitions and Young symmetrizers


class YoungDiagram:
    """A partition drawn as left-justified rows of cells."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[int]):
        r = tuple(int(k) for k in rows)
        if not r or any(k < 1 for k in r):
            raise ValueError("row lengths must be positive")
        if any(r[i] < r[i + 1] for i in range(len(r) - 1)):
            raise ValueError("row lengths must be weakly decreasing")
        self.rows = r

    @property
    def m(self) -> int:
        return sum(self.rows)

    def conjugate(self) -> "YoungDiagram":
        return YoungDiagram(
            [sum(1 for k in self.rows if k > j) for j in range(self.rows[0])]
        )

    def hooks(self) -> list[int]:
        out = []
        for i, length in enumerate(self.rows):
            for j in range(length):
                arm = length - j - 1
                leg = sum(1 for k in self.rows[i + 1 :] if k > j)
                out.append(arm + leg + 1)
        return out

    def irrep_dimension(self) -> int:
        product = math.prod(self.hooks())
        dim, rem = divmod(math.factorial(self.m), product)
        if rem:
            raise ArithmeticError("hook product does not divide the factorial")
        return dim

    def __eq__(self, other: object) -> bool:
        return isinstance(other, YoungDiagram) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(("YoungDiagram", self.rows))

    def __repr__(self) -> str:
        return f"YoungDiagram({list(self.rows)})"

    def label(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")"


def partitions(m: int) -> list[YoungDiagram]:
    """All partitions of ``m`` in descending lexicographic order."""
    if m < 1:
        raise ValueError("partitions are defined for positive integers")
    found: list[tuple[int, ...]] = []

    def grow(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            found.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            grow(remaining - part, part, prefix + (part,))

    grow(m, m, ())
    return [YoungDiagram(rows) for rows in found]


def _canonical_filling(lam: YoungDiagram) -> list[list[int]]:
    filling = []
    next_entry = 0
    for length in lam.rows:
        filling.append(list(range(next_entry, next_entry + length)))
        next_entry += length
    return filling


def _group_sum(blocks: list[list[int]], m: int, signed: bool) -> GroupAlgebraElement:
    """Sum over all permutations preserving each block, optionally signed."""
    terms: dict[Perm, Fraction] = {}
    for images in itertools.product(
        *[itertools.permutations(block) for block in blocks]
    ):
        p = list(range(m))
        for block, image in zip(blocks, images):
            for pos, target in zip(block, image):
                p[pos] = target
        perm = tuple(p)
        terms[perm] = Fraction(perm_sign(perm)) if signed else ONE
    return GroupAlgebraElement(m, terms)


def row_symmetrizer(lam: YoungDiagram) -> GroupAlgebraElement:
    return _group_sum(_canonical_filling(lam), lam.m, signed=False)


def column_antisymmetrizer(lam: YoungDiagram) -> GroupAlgebraElement:
    filling = _canonical_filling(lam)
    columns = [
        [filling[i][j] for i in range(len(filling)) if lam.rows[i] > j]
        for j in range(lam.rows[0])
    ]
    return _group_sum(columns, lam.m, signed=True)


def young_symmetrizer(lam: YoungDiagram | Sequence[int]) -> GroupAlgebraElement:
    """Row symmetrizer times signed column sum for the row-major filling."""
    diagram = lam if isinstance(lam, YoungDiagram) else YoungDiagram(lam)
    return row_symmetrizer(diagram) * column_antisymmetrizer(diagram)


# ---------------------------------------------------------------------------
# the twisted permutation action


def permutation_operator(p: Perm, dim: int) -> TensorMap:
    """The operator sending the slot-``j`` factor to slot ``p[j]``."""
    from .tensoralg import word_permute

    deg = len(p)
    return TensorMap(
        dim, deg, deg, {(word_permute(p, w), w): ONE for w in words(dim, deg)}
    )


def _adjacent_perm(b: int, m: int) -> Perm:
    p = list(range(m))
    p[b - 1], p[b] = p[b], p[b - 1]
    return tuple(p)


def _map_witness(defect: TensorMap) -> str:
    (out_w, in_w), coeff = sorted(defect.entries.items())[0]
    o = ",".join(map(str, out_w))
    i = ",".join(map(str, in_w))
    return f"out=({o}) in=({i}) value={coeff}"


def _check_twist_shape(big_r: TensorMap) -> None:
    if big_r.dom_deg != 2 or big_r.cod_deg != 2:
        raise ValueError("the twist must be an operator on a tensor square")


def _twist_generators(big_r: TensorMap, m: int) -> tuple[TensorMap, ...]:
    from .tensoralg import embed_components

    gens = []
    for b in range(1, m):
        swap = permutation_operator(_adjacent_perm(b, m), big_r.dim)
        gens.append(swap.compose(embed_components(big_r, (b, b + 1), m)))
    return tuple(gens)


def _verify_braid_relations(gens: Sequence[TensorMap], dim: int, m: int) -> None:
    for b in range(len(gens) - 1):
        lhs = gens[b].compose(gens[b + 1]).compose(gens[b])
        rhs = gens[b + 1].compose(gens[b]).compose(gens[b + 1])
        if not (lhs - rhs).is_zero():
            raise RuntimeError(f"internal: braid relation fails at {b + 1}")
    for a in range(len(gens)):
        for b in range(a + 2, len(gens)):
            defect = gens[a].compose(gens[b]) - gens[b].compose(gens[a])
            if not defect.is_zero():
                raise RuntimeError(
                    f"internal: distant generators {a + 1},{b + 1} do not commute"
                )


@dataclass(frozen=True)
class RPermutationAction:
    """Generators of the twisted ``S_m`` action; iterating yields the maps."""

    dim: int
    m: int
    generators: tuple[TensorMap, ...]

    def __iter__(self) -> Iterator[TensorMap]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def r_permutation_action(big_r: TensorMap, m: int) -> RPermutationAction:
    """Adjacent-transposition generators ``swap o R^{b,b+1}`` on ``m`` slots.

    Requires a unitary solution of the quantum equation; the resulting
    generators are verified to satisfy the full Coxeter presentation
    (squares from unitarity, braiding from the quantum equation).
    """
    _check_twist_shape(big_r)
    if m < 1:
        raise ValueError("the number of tensor factors must be at least 1")
    unit_defect = ybe.unitarity_defect(big_r)
    if not unit_defect.is_zero():
        raise ValueError(
            f"twist is not unitary (R^21 R != Id): {_map_witness(unit_defect)}"
        )
    q_defect = ybe.qybe_residual(big_r)
    if not q_defect.is_zero():
        raise ValueError(
            "twist fails the quantum Yang-Baxter equation:"
            f" {_map_witness(q_defect)}"
        )
    gens = _twist_generators(big_r, m)
    ident = TensorMap.identity(big_r.dim, m)
    for b, g in enumerate(gens):
        if not (g.compose(g) - ident).is_zero():
            raise RuntimeError(f"internal: generator {b + 1} squared is not Id")
    _verify_braid_relations(gens, big_r.dim, m)
    return RPermutationAction(big_r.dim, m, gens)


def braid_generators(big_r: TensorMap, m: int) -> list[TensorMap]:
    """Twisted generators for a not-necessarily-unitary quantum solution.

    Only the braid and distant-commutation relations are available here,
    so the return value is meant for commutant computations, not for the
    symmetric-group decomposition.
    """
    _check_twist_shape(big_r)
    q_defect = ybe.qybe_residual(big_r)
    if not q_defect.is_zero():
        raise ValueError(
            "twist fails the quantum Yang-Baxter equation:"
            f" {_map_witness(q_defect)}"
        )
    gens = _twist_generators(big_r, m)
    _verify_braid_relations(gens, big_r.dim, m)
    return list(gens)


def action_table(action: RPermutationAction) -> dict[Perm, TensorMap]:
    """Operator for every permutation, grown from the generators.

    Breadth-first growth assigns each permutation a shortest word in the
    adjacent transpositions; the Coxeter verification performed when the
    action was built guarantees independence of the chosen word.
    """
    table = {identity_perm(action.m): TensorMap.identity(action.dim, action.m)}
    adjacents = [_adjacent_perm(b, action.m) for b in range(1, action.m)]
    frontier = [identity_perm(action.m)]
    while frontier:
        grown = []
        for sigma in frontier:
            for s, gen in zip(adjacents, action.generators):
                tau = perm_compose(s, sigma)
                if tau not in table:
                    table[tau] = gen.compose(table[sigma])
                    grown.append(tau)
        frontier = grown
    return table


def _evaluate_with_table(
    x: GroupAlgebraElement, table: Mapping[Perm, TensorMap], dim: int, m: int
) -> TensorMap:
    total = TensorMap.zero(dim, m)
    for perm in sorted(x.terms):
        total = total + table[perm].scale(x.terms[perm])
    return total


def evaluate_in_action(
    x: GroupAlgebraElement, action: RPermutationAction
) -> TensorMap:
    """Substitute each permutation in ``x`` by its twisted-action operator."""
    if x.m != action.m:
        raise ValueError(
            f"m mismatch: element lives in S_{x.m},"
            f" the action is on {action.m} factors"
        )
    return _evaluate_with_table(x, action_table(action), action.dim, action.m)


# ---------------------------------------------------------------------------
# exact linear algebra on operators


def map_matrix(tmap: TensorMap) -> list[Vector]:
    """Dense matrix rows (out-word index by in-word index), words lex."""
    win = list(words(tmap.dim, tmap.dom_deg))
    wout = list(words(tmap.dim, tmap.cod_deg))
    index_in = {w: j for j, w in enumerate(win)}
    index_out = {w: i for i, w in enumerate(wout)}
    rows = [[ZERO] * len(win) for _ in wout]
    for (out_w, in_w), coeff in tmap.entries.items():
        rows[index_out[out_w]][index_in[in_w]] = coeff
    return rows


def image_dimension(tmap: TensorMap) -> int:
    """Exact rank of the operator."""
    return rank(map_matrix(tmap), tmap.dim**tmap.dom_deg)


def image_vectors(tmap: TensorMap) -> list[Vector]:
    """Columns of the matrix: spanning vectors of the image, in-word order."""
    rows = map_matrix(tmap)
    ncols = tmap.dim**tmap.dom_deg
    return [[row[j] for row in rows] for j in range(ncols)]


def apply_to_vector(tmap: TensorMap, vec: Sequence[Fraction]) -> Vector:
    """Matrix-vector product in the lexicographic word coordinates."""
    win = list(words(tmap.dim, tmap.dom_deg))
    index_in = {w: j for j, w in enumerate(win)}
    index_out = {w: i for i, w in enumerate(words(tmap.dim, tmap.cod_deg))}
    if len(vec) != len(win):
        raise ValueError("length mismatch")
    out = [ZERO] * tmap.dim**tmap.cod_deg
    for (out_w, in_w), coeff in tmap.entries.items():
        c = vec[index_in[in_w]]
        if c:
            out[index_out[out_w]] += coeff * c
    return out


def _flatten_operator(tmap: TensorMap, index: Mapping[Perm, int]) -> Vector:
    n = len(index)
    vec = [ZERO] * (n * n)
    for (out_w, in_w), coeff in tmap.entries.items():
        vec[index[out_w] * n + index[in_w]] = coeff
    return vec


def commutant(
    generators: Sequence[TensorMap],
    dim: int | None = None,
    deg: int | None = None,
) -> list[TensorMap]:
    """Deterministic basis of everything commuting with the generators.

    The unknown operator is flattened over (out-word, in-word) pairs and
    ``[X, g] = 0`` becomes one exact linear system per generator; the basis
    comes out of the reduced echelon nullspace, one map per free column.
    With no generators the full endomorphism space is returned, which is
    why ``dim`` and ``deg`` must then be supplied.
    """
    if generators:
        dim = generators[0].dim
        deg = generators[0].dom_deg
    elif dim is None or deg is None:
        raise ValueError("empty generator list needs explicit dim and deg")
    word_list = list(words(dim, deg))
    index = {w: i for i, w in enumerate(word_list)}
    n = len(word_list)
    rows: list[Vector] = []
    for g in generators:
        if g.dim != dim or g.dom_deg != deg or g.cod_deg != deg:
            raise ValueError("generators must act on one common tensor power")
        by_in: dict[int, list[tuple[int, Fraction]]] = {}
        by_out: dict[int, list[tuple[int, Fraction]]] = {}
        for (out_w, in_w), coeff in g.entries.items():
            by_in.setdefault(index[in_w], []).append((index[out_w], coeff))
            by_out.setdefault(index[out_w], []).append((index[in_w], coeff))
        for u in range(n):
            for v in range(n):
                row = [ZERO] * (n * n)
                for w, coeff in by_in.get(v, ()):
                    row[u * n + w] += coeff
                for w, coeff in by_out.get(u, ()):
                    row[w * n + v] -= coeff
                if any(row):
                    rows.append(row)
    basis = []
    for vec in rref(rows, n * n).nullspace():
        entries = {}
        for flat, coeff in enumerate(vec):
            if coeff:
                entries[(word_list[flat // n], word_list[flat % n])] = coeff
        basis.append(TensorMap(dim, deg, deg, entries))
    return basis


# ---------------------------------------------------------------------------
# graded components of the quadratic quotient


def _quadratic_relation_vectors(big_r: TensorMap) -> list[list[tuple[int, Fraction]]]:
    """Degree-two relation vectors over ordered generator pairs.

    Generators are indexed ``(i, j) -> i*n + j``; a pair ``(g1, g2)`` is the
    word ``g1 then g2``.  For each choice of output rows ``a, b`` and input
    columns ``c, d`` the relation reads: twist applied on the left of the
    pair ``(row side)`` minus the reversed pair hit by the twist on the
    column side.  The identity twist yields plain commutators.
    """
    n = big_r.dim
    n2 = n * n
    sparse_rows: list[list[tuple[int, Fraction]]] = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        acc: dict[int, Fraction] = {}
        for (out_w, in_w), coeff in big_r.entries.items():
            if out_w == (a, b):
                key = (in_w[0] * n + c) * n2 + (in_w[1] * n + d)
                acc[key] = acc.get(key, ZERO) + coeff
            if in_w == (c, d):
                key = (b * n + out_w[1]) * n2 + (a * n + out_w[0])
                acc[key] = acc.get(key, ZERO) - coeff
        cleaned = sorted((k, v) for k, v in acc.items() if v)
        if cleaned:
            sparse_rows.append(cleaned)
    return sparse_rows


def hr_relation_rank(big_r: TensorMap, m: int) -> int:
    """Rank of the degree-``m`` slice of the two-sided relation ideal."""
    if m < 1:
        raise ValueError("the degree must be at least 1")
    n2 = big_r.dim**2
    ncols = n2**m
    if m == 1:
        return 0
    relations = _quadratic_relation_vectors(big_r)
    windex = {w: i for i, w in enumerate(words(n2, m))}
    rows: list[Vector] = []
    for t in range(m - 1):
        for u in words(n2, t):
            for v in words(n2, m - 2 - t):
                for rel in relations:
                    row = [ZERO] * ncols
                    for pair_key, coeff in rel:
                        g1, g2 = divmod(pair_key, n2)
                        row[windex[u + (g1, g2) + v]] += coeff
                    rows.append(row)
    return rank(rows, ncols)


def hr_dimension_oracles(big_r: TensorMap, m: int) -> tuple[int, int]:
    """The component dimension by relations and by commutant, unasserted."""
    action = r_permutation_action(big_r, m)
    by_relations = big_r.dim ** (2 * m) - hr_relation_rank(big_r, m)
    by_commutant = len(commutant(action.generators, dim=big_r.dim, deg=m))
    return by_relations, by_commutant


def hr_graded_dimension(big_r: TensorMap, m: int) -> int:
    """Dimension of the degree-``m`` bialgebra component, doubly computed."""
    by_relations, by_commutant = hr_dimension_oracles(big_r, m)
    if by_relations != by_commutant:
        raise RuntimeError(
            "internal consistency failure: relation reduction gives"
            f" {by_relations}, the commutant gives {by_commutant}"
        )
    return by_relations


def hr_component_dual_basis(big_r: TensorMap, m: int) -> list[TensorMap]:
    """The degree-``m`` component realized dually inside the operator space."""
    action = r_permutation_action(big_r, m)
    return commutant(action.generators, dim=big_r.dim, deg=m)


# ---------------------------------------------------------------------------
# the decomposition report


@dataclass(frozen=True)
class PartitionBlock:
    partition: tuple[int, ...]
    rho_dim: int
    comodule_dim: int
    included: bool


@dataclass(frozen=True)
class DecompositionReport:
    """Multiplicity-free decomposition bookkeeping for one twist."""

    m: int
    dim: int
    blocks: tuple[PartitionBlock, ...]
    total: int
    expected: int
    sr_commutant_dim: int
    hr_commutant_dim: int
    sr_span_dim: int
    double_commutant_ok: bool

    @property
    def passed(self) -> bool:
        return self.total == self.expected and self.double_commutant_ok

    def lines(self) -> list[str]:
        out = ["check: schur-weyl", f"m: {self.m}", f"dimV: {self.dim}"]
        for block in self.blocks:
            label = "(" + ",".join(map(str, block.partition)) + ")"
            status = "" if block.included else " (absent)"
            out.append(
                f"lambda {label}: rho dim {block.rho_dim},"
                f" comodule dim {block.comodule_dim}{status}"
            )
        out.append(f"total: {self.total}")
        out.append(f"expected: dimV^m = {self.expected}")
        out.append(f"sr commutant dim: {self.sr_commutant_dim}")
        out.append(f"double commutant dim: {self.hr_commutant_dim}")
        out.append(f"sr span dim: {self.sr_span_dim}")
        closure = "PASS" if self.double_commutant_ok else "FAIL"
        out.append(f"double commutant closure: {closure}")
        out.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return out


def schur_weyl_decompose(big_r: TensorMap, m: int, dim_v: int) -> DecompositionReport:
    """Cut the tensor power along partitions and audit the bookkeeping.

    For every partition the irreducible dimension (hook lengths,
    cross-checked against the group-algebra rank of the symmetrizer) is
    paired with the exact rank of the evaluated symmetrizer; the weighted
    total must account for the whole tensor power, and the double
    commutant of the twisted action must close onto its span.
    """
    if big_r.dim != dim_v:
        raise ValueError(
            f"the twist acts on dimension {big_r.dim}, not {dim_v}"
        )
    action = r_permutation_action(big_r, m)
    table = action_table(action)
    blocks = []
    total = 0
    for lam in partitions(m):
        rho_dim = lam.irrep_dimension()
        by_rank = group_algebra_rank(young_symmetrizer(lam))
        if rho_dim != by_rank:
            raise RuntimeError(
                "internal: hook-length dimension disagrees with the"
                f" group-algebra rank for {lam.label()}"
            )
        comodule_dim = image_dimension(
            _evaluate_with_table(young_symmetrizer(lam), table, dim_v, m)
        )
        total += rho_dim * comodule_dim
        blocks.append(
            PartitionBlock(lam.rows, rho_dim, comodule_dim, comodule_dim > 0)
        )
    word_list = list(words(dim_v, m))
    index = {w: i for i, w in enumerate(word_list)}
    sr_rows = [_flatten_operator(table[p], index) for p in sorted(table)]
    ncols = len(word_list) ** 2
    sr_span_dim = rank(sr_rows, ncols)
    first = commutant(action.generators, dim=dim_v, deg=m)
    second = commutant(first, dim=dim_v, deg=m)
    second_rows = [_flatten_operator(x, index) for x in second]
    double_ok = row_space_equal(sr_rows, second_rows, ncols)
    return DecompositionReport(
        m=m,
        dim=dim_v,
        blocks=tuple(blocks),
        total=total,
        expected=dim_v**m,
        sr_commutant_dim=len(first),
        hr_commutant_dim=len(second),
        sr_span_dim=sr_span_dim,
        double_commutant_ok=double_ok,
    )
