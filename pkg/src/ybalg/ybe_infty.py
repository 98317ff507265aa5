"""Higher Yang-Baxter residuals and n-ary double-bracket checks.

Element side: a family ``r = (r_1, r_2, ...)`` with ``r_n`` living in the
n-th tensor power of a graded Lie algebra (classical case) or of a graded
associative algebra (associative case), each component homogeneous of
degree ``2 - n``.  The n-th residual couples every split ``i + j = n + 1``
through a single shared slot, so every term stays inside the n-th tensor
power and no enveloping algebra is needed: Koszul signs come from stably
sorting the interleaved tensor factors by slot, and at the shared slot the
two factors meet in a supercommutator (Lie case) or a product (associative
case).

Map side: an n-ary bracket family ``{}_k`` acting on tensor powers of a
truncated algebra's basis alphabet.  The cyclic residual generalizes the
three-term double-Jacobi composition sum, and the skew-symmetry and
double-Leibniz clauses are verified alongside it.

The classical-side shuffle set is recorded ambiguously in the source
display (its subscript does not match the number of indices in use), so
every classical report carries two readings: the default restricts to
(i, n-i)-shuffles, the literal one sums over all of S_n.  See the
``conventions`` attached to each report.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebras import TruncatedAlgebra, TruncationOverflow, el, el_add, el_scale
from .linfty import shuffles, sign_odd
from .tensoralg import TensorMap, Word, embed_components, frac, word_permute, words

ZERO = Fraction(0)
ONE = Fraction(1)

Element = dict[int, Fraction]
Tensor = dict[Word, Fraction]


# ---------------------------------------------------------------------------
# structure constants


class LieStructure:
    """A graded Lie algebra presented by structure constants.

    ``table[(i, j)]`` is the bracket of basis elements ``i`` and ``j`` as a
    sparse element; missing keys mean zero.  ``degrees`` default to all
    zero (the ungraded case).
    """

    def __init__(self, labels, table, degrees=None):
        self.labels = tuple(labels)
        if degrees is None:
            degrees = (0,) * len(self.labels)
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.degrees) != len(self.labels):
            raise ValueError("one degree per basis label is required")
        norm: dict[tuple[int, int], Element] = {}
        for (i, j), value in table.items():
            if not (0 <= i < len(self.labels) and 0 <= j < len(self.labels)):
                raise ValueError("bracket table index out of range")
            entry = el(value)
            if entry:
                norm[(i, j)] = entry
        self.table = norm

    @property
    def nbasis(self) -> int:
        return len(self.labels)

    def bracket_basis(self, i: int, j: int) -> Element:
        return dict(self.table.get((i, j), {}))

    def bracket(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in self.table.get((i, j), {}).items():
                    out[k] = out.get(k, ZERO) + ci * cj * ck
        return {k: c for k, c in out.items() if c}

    def defects(self) -> list[str]:
        """Violations of grading, graded antisymmetry, or graded Jacobi."""
        found: list[str] = []
        deg = self.degrees
        for (i, j), entry in sorted(self.table.items()):
            if any(deg[k] != deg[i] + deg[j] for k in entry):
                found.append(
                    f"bracket [{self.labels[i]}, {self.labels[j]}]"
                    " is not degree-homogeneous"
                )
        for i in range(self.nbasis):
            for j in range(self.nbasis):
                twist = -ONE if (deg[i] * deg[j]) % 2 else ONE
                defect = el_add(
                    self.bracket_basis(i, j),
                    el_scale(self.bracket_basis(j, i), twist),
                )
                if defect:
                    found.append(
                        f"graded antisymmetry fails on"
                        f" ({self.labels[i]}, {self.labels[j]})"
                    )
        for i in range(self.nbasis):
            for j in range(self.nbasis):
                twist = -ONE if (deg[i] * deg[j]) % 2 else ONE
                for k in range(self.nbasis):
                    lhs = self.bracket({i: ONE}, self.bracket_basis(j, k))
                    rhs = el_add(
                        self.bracket(self.bracket_basis(i, j), {k: ONE}),
                        el_scale(
                            self.bracket({j: ONE}, self.bracket_basis(i, k)),
                            twist,
                        ),
                    )
                    if el_add(lhs, el_scale(rhs, -1)):
                        found.append(
                            "graded Jacobi fails on ("
                            f"{self.labels[i]}, {self.labels[j]},"
                            f" {self.labels[k]})"
                        )
        return found

    def require_lie(self) -> None:
        found = self.defects()
        if found:
            raise ValueError(f"not a graded Lie algebra: {found[0]}")


class RnFamily:
    """A sequence of tensors ``r_n`` over a graded basis alphabet.

    Every stored word must be homogeneous of total degree ``2 - n``; with
    the default all-zero degrees only the binary component can be nonzero,
    which is exactly the classical specialization.
    """

    def __init__(self, dim, elements, degrees=None):
        self.dim = int(dim)
        if degrees is None:
            degrees = (0,) * self.dim
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.degrees) != self.dim:
            raise ValueError("one degree per basis index is required")
        norm: dict[int, Tensor] = {}
        for n, tensor in elements.items():
            n = int(n)
            if n < 1:
                raise ValueError("component arity must be at least 1")
            cleaned: Tensor = {}
            for word, coeff in tensor.items():
                w = tuple(word)
                if len(w) != n:
                    raise ValueError(
                        f"component {n} holds a word of length {len(w)}"
                    )
                if any(not 0 <= k < self.dim for k in w):
                    raise ValueError("word letter out of range")
                c = frac(coeff)
                if not c:
                    continue
                total = sum(self.degrees[k] for k in w)
                if total != 2 - n:
                    raise ValueError(
                        f"component {n} entry {w} has degree {total},"
                        f" expected {2 - n}"
                    )
                cleaned[w] = c
            if cleaned:
                norm[n] = cleaned
        self.elements = norm

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def component(self, n: int) -> Tensor:
        return dict(self.elements.get(n, {}))


# ---------------------------------------------------------------------------
# embedded pair products


def _interleave(placed, degrees):
    """Stable-sort ``(slot, letter)`` factors by slot; Koszul sign of the sort."""
    seq = list(placed)
    sign = 1
    for top in range(1, len(seq)):
        pos = top
        while pos > 0 and seq[pos - 1][0] > seq[pos][0]:
            if (degrees[seq[pos - 1][1]] * degrees[seq[pos][1]]) % 2:
                sign = -sign
            seq[pos - 1], seq[pos] = seq[pos], seq[pos - 1]
            pos -= 1
    return seq, sign


def _pair_product(resolve, degrees, wx, slots_x, wy, slots_y, n):
    """Expand ``x^(slots_x) . y^(slots_y)`` into words of length ``n``.

    Slots covered once keep their letter; a slot covered by both factors
    resolves through ``resolve`` with the x-factor first.  Together the
    slots must cover the tensor power exactly.
    """
    placed = [(s, wx[t]) for t, s in enumerate(slots_x)]
    placed += [(s, wy[t]) for t, s in enumerate(slots_y)]
    seq, sign = _interleave(placed, degrees)
    per_slot: dict[int, list[int]] = {}
    for slot, letter in seq:
        per_slot.setdefault(slot, []).append(letter)
    if sorted(per_slot) != list(range(n)):
        raise ValueError("slot tuples must cover the tensor power")
    choices: list[list[tuple[int, Fraction]]] = []
    for slot in range(n):
        letters = per_slot[slot]
        if len(letters) == 1:
            choices.append([(letters[0], ONE)])
        elif len(letters) == 2:
            choices.append(sorted(resolve(letters[0], letters[1]).items()))
        else:
            raise ValueError("a slot may hold at most two factors")
    for combo in itertools.product(*choices):
        coeff = Fraction(sign)
        for _, c in combo:
            coeff *= c
        yield tuple(k for k, _ in combo), coeff


def _accumulate(total: Tensor, terms, scalar: Fraction = ONE) -> None:
    for word, coeff in terms:
        c = total.get(word, ZERO) + scalar * coeff
        if c:
            total[word] = c
        else:
            total.pop(word, None)


def lie_pair_bracket(g: LieStructure, x: Tensor, slots_x, y: Tensor, slots_y, n: int) -> Tensor:
    """``[x^(slots_x), y^(slots_y)]`` inside the n-th tensor power of ``g``.

    The overlap of the slot tuples is where the supercommutator acts, and
    the supercommutator of basis elements is the bracket itself; the
    interleaving sign makes this exact for graded ``g``.  Exactly one slot
    must be shared — factors in disjoint slots supercommute, so their
    bracket would vanish identically.
    """
    if len(set(slots_x) & set(slots_y)) != 1:
        raise ValueError("slot tuples must share exactly one slot")
    total: Tensor = {}
    for wx, cx in sorted(x.items()):
        for wy, cy in sorted(y.items()):
            _accumulate(
                total,
                _pair_product(
                    g.bracket_basis, g.degrees, wx, tuple(slots_x), wy, tuple(slots_y), n
                ),
                cx * cy,
            )
    return total


def assoc_pair_product(
    algebra: TruncatedAlgebra, x: Tensor, slots_x, y: Tensor, slots_y, n: int,
    super_degrees=None,
) -> Tensor:
    """``x^(slots_x) . y^(slots_y)`` inside the n-th tensor power of ``algebra``.

    ``super_degrees`` drive the Koszul interchange; they default to zero
    because a truncated algebra's own degrees measure word length, not
    parity.
    """
    degrees = _bracket_degrees(algebra, super_degrees)
    total: Tensor = {}
    for wx, cx in sorted(x.items()):
        for wy, cy in sorted(y.items()):
            _accumulate(
                total,
                _pair_product(
                    algebra.mul_basis, degrees, wx, tuple(slots_x), wy, tuple(slots_y), n
                ),
                cx * cy,
            )
    return total


# ---------------------------------------------------------------------------
# selections


def shuffle_selections(n: int, i: int) -> list[tuple[int, ...]]:
    """The (i, n-i)-shuffles of ``range(n)`` as image tuples."""
    return shuffles(i, n - i)


def full_selections(n: int) -> list[tuple[int, ...]]:
    """All of S_n, the unrestricted transcription of the display."""
    return [tuple(p) for p in itertools.permutations(range(n))]


def cyclic_selections(n: int) -> list[tuple[int, ...]]:
    """The n cyclic rotations of ``range(n)``."""
    return [tuple((k + c) % n for k in range(n)) for c in range(n)]


def _split_slots(sel: Sequence[int], i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Slot tuples for the (i, n+1-i) split: both sides share ``sel[0]``."""
    return tuple(sel[:i]), (sel[0],) + tuple(sel[i:])


def _check_family(fam: RnFamily, dim: int, degrees) -> None:
    if fam.dim != dim or fam.degrees != tuple(degrees):
        raise ValueError("family does not match the algebra basis")


def _bracket_degrees(algebra: TruncatedAlgebra, super_degrees) -> tuple[int, ...]:
    if super_degrees is None:
        return (0,) * algebra.nbasis
    degs = tuple(int(d) for d in super_degrees)
    if len(degs) != algebra.nbasis:
        raise ValueError("one degree per basis element is required")
    return degs


# ---------------------------------------------------------------------------
# classical residuals


def cybe_infty_sum(g: LieStructure, fam: RnFamily, n: int, reading: str = "shuffle") -> Tensor:
    """One evaluation of the n-th classical residual under a chosen reading."""
    if reading not in ("shuffle", "literal"):
        raise ValueError("reading must be 'shuffle' or 'literal'")
    g.require_lie()
    _check_family(fam, g.nbasis, g.degrees)
    total: Tensor = {}
    for i in range(1, n + 1):
        j = n + 1 - i
        x = fam.elements.get(i)
        y = fam.elements.get(j)
        if not x or not y:
            continue
        scalar = ONE if i % 2 == 0 else -ONE
        sels = full_selections(n) if reading == "literal" else shuffle_selections(n, i)
        for sel in sels:
            slots_x, slots_y = _split_slots(sel, i)
            term = lie_pair_bracket(g, x, slots_x, y, slots_y, n)
            _accumulate(total, term.items(), scalar)
    return total


def aybe_infty_sum(
    algebra: TruncatedAlgebra, fam: RnFamily, n: int, super_degrees=None
) -> Tensor:
    """The n-th associative residual over the cyclic selections."""
    ok, failure, _ = algebra.check_associativity()
    if not ok:
        raise ValueError(f"structure constants are not associative: {failure}")
    degs = _bracket_degrees(algebra, super_degrees)
    _check_family(fam, algebra.nbasis, degs)
    total: Tensor = {}
    for i in range(1, n + 1):
        j = n + 1 - i
        x = fam.elements.get(i)
        y = fam.elements.get(j)
        if not x or not y:
            continue
        scalar = ONE if i % 2 == 0 else -ONE
        for sel in cyclic_selections(n):
            slots_x, slots_y = _split_slots(sel, i)
            term = assoc_pair_product(algebra, x, slots_x, y, slots_y, n, degs)
            _accumulate(total, term.items(), scalar)
    return total


def classical_cybe_element(g: LieStructure, r2: Tensor) -> Tensor:
    """``[r^12, r^13] + [r^12, r^23] + [r^13, r^23]`` in the cube."""
    total: Tensor = {}
    for slots_x, slots_y in (((0, 1), (0, 2)), ((0, 1), (1, 2)), ((0, 2), (1, 2))):
        _accumulate(total, lie_pair_bracket(g, r2, slots_x, r2, slots_y, 3).items())
    return total


def classical_aybe_element(
    algebra: TruncatedAlgebra, r2: Tensor, super_degrees=None
) -> Tensor:
    """``r^12 r^13 - r^23 r^12 + r^13 r^23`` in the cube."""
    total: Tensor = {}
    for slots_x, slots_y, scalar in (
        ((0, 1), (0, 2), ONE),
        ((1, 2), (0, 1), -ONE),
        ((0, 2), (1, 2), ONE),
    ):
        _accumulate(
            total,
            assoc_pair_product(
                algebra, r2, slots_x, r2, slots_y, 3, super_degrees
            ).items(),
            scalar,
        )
    return total


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class ReadingResult:
    name: str
    zero: bool
    terms: tuple[tuple[Word, Fraction], ...]


@dataclass(frozen=True)
class InftyReport:
    """Deterministic outcome of one infinity-residual evaluation."""

    kind: str
    n: int
    dim: int
    arities: tuple[int, ...]
    governing: str
    readings: tuple[ReadingResult, ...]
    notes: tuple[str, ...]
    conventions: tuple[tuple[str, str], ...]

    @property
    def passed(self) -> bool:
        for reading in self.readings:
            if reading.name == self.governing:
                return reading.zero
        return False

    def lines(self) -> list[str]:
        out = [f"check: {self.kind}", f"n: {self.n}", f"dim: {self.dim}"]
        arities = ",".join(map(str, self.arities)) if self.arities else "none"
        out.append(f"arities: {arities}")
        for reading in self.readings:
            status = "zero" if reading.zero else f"nonzero ({len(reading.terms)} terms)"
            out.append(f"reading {reading.name}: {status}")
            if reading.terms:
                word, coeff = reading.terms[0]
                out.append(f"  witness: ({','.join(map(str, word))}) -> {coeff}")
        out.append(f"governing reading: {self.governing}")
        out.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        for note in self.notes:
            out.append(f"note: {note}")
        for key, text in self.conventions:
            out.append(f"convention {key}: {text}")
        return out


def _reading_result(name: str, total: Tensor) -> ReadingResult:
    terms = tuple(sorted(total.items()))
    return ReadingResult(name, not terms, terms)


_SHARED_SLOT_NOTE = (
    "both tensors of a split use the first selected slot; the overlap"
    " carries the supercommutator/product"
)


def cybe_infty_residual(
    g: LieStructure, fam: RnFamily, n: int, literal_shuffles: bool = False
) -> InftyReport:
    """Both readings of the n-th classical residual, one governing the verdict."""
    readings = (
        _reading_result("shuffle", cybe_infty_sum(g, fam, n, "shuffle")),
        _reading_result("literal", cybe_infty_sum(g, fam, n, "literal")),
    )
    notes: list[str] = []
    if n == 3 and fam.arities == (2,):
        r2 = fam.component(2)
        single = lie_pair_bracket(g, r2, (1, 2), r2, (1, 0), 3)
        reduced = dict(readings[0].terms) == single
        notes.append(
            f"n=3 r_2-only: shuffle reading equals the single bracket"
            f" [r^23, r^21]: {reduced}"
        )
        classical = classical_cybe_element(g, r2)
        notes.append(
            "classical three-term bracket sum [r^12,r^13]+[r^12,r^23]+[r^13,r^23]:"
            f" {'zero' if not classical else 'nonzero'}"
        )
        notes.append(
            "shuffle reading equals the classical sum:"
            f" {dict(readings[0].terms) == classical}"
        )
    return InftyReport(
        kind="cybe-infty",
        n=n,
        dim=g.nbasis,
        arities=fam.arities,
        governing="literal" if literal_shuffles else "shuffle",
        readings=readings,
        notes=tuple(notes),
        conventions=(
            ("shuffle reading", "sum over (i, n-i)-shuffles of range(n)"),
            ("literal reading", "sum over all permutations of range(n)"),
            ("shared slot", _SHARED_SLOT_NOTE),
            ("split sign", "(-1)^i on the (i, n+1-i) split"),
        ),
    )


def aybe_infty_residual(
    algebra: TruncatedAlgebra, fam: RnFamily, n: int, super_degrees=None
) -> InftyReport:
    """The n-th associative residual; the cyclic reading is the only one."""
    readings = (
        _reading_result("cyclic", aybe_infty_sum(algebra, fam, n, super_degrees)),
    )
    notes: list[str] = []
    if n == 3 and fam.arities == (2,):
        r2 = fam.component(2)
        classical = classical_aybe_element(algebra, r2, super_degrees)
        notes.append(
            "classical three-term product sum r^12 r^13 - r^23 r^12 + r^13 r^23:"
            f" {'zero' if not classical else 'nonzero'}"
        )
        notes.append(
            f"cyclic residual equals the classical sum:"
            f" {dict(readings[0].terms) == classical}"
        )
    return InftyReport(
        kind="aybe-infty",
        n=n,
        dim=algebra.nbasis,
        arities=fam.arities,
        governing="cyclic",
        readings=readings,
        notes=tuple(notes),
        conventions=(
            ("cyclic reading", "sum over the n cyclic rotations of range(n)"),
            ("shared slot", _SHARED_SLOT_NOTE),
            ("split sign", "(-1)^i on the (i, n+1-i) split"),
        ),
    )


# ---------------------------------------------------------------------------
# n-ary double brackets on a truncated algebra's basis alphabet


def _validate_bracket_family(fam, algebra: TruncatedAlgebra, degs) -> None:
    for arity, b in sorted(fam.items()):
        if b.dim != algebra.nbasis:
            raise ValueError(
                "arity mismatch: bracket alphabet differs from the algebra basis"
            )
        if b.dom_deg != arity or b.cod_deg != arity:
            raise ValueError(
                f"arity mismatch: component {arity} is a"
                f" {b.dom_deg}->{b.cod_deg} map"
            )
        for (out_word, in_word) in b.entries:
            drop = sum(degs[k] for k in out_word) - sum(degs[k] for k in in_word)
            if drop != 2 - arity:
                raise ValueError(
                    f"component {arity} is not homogeneous of degree {2 - arity}"
                )


def jacobi_infty_residual(
    fam: Mapping[int, TensorMap],
    algebra: TruncatedAlgebra,
    n: int,
    super_degrees=None,
) -> TensorMap:
    """Cyclic-sum residual of an n-ary bracket family on the n-th power.

    Each split composes the inner bracket on the first ``i`` selected
    slots with the outer bracket on the shared slot plus the remaining
    ones, weighted by ``(-1)^i`` and the odd Koszul sign of the rotation.
    """
    degs = _bracket_degrees(algebra, super_degrees)
    _validate_bracket_family(fam, algebra, degs)
    total = TensorMap.zero(algebra.nbasis, n, n)
    for i in range(1, n + 1):
        j = n + 1 - i
        inner = fam.get(i)
        outer = fam.get(j)
        if inner is None or outer is None:
            continue
        split_sign = 1 if i % 2 == 0 else -1
        for sel in cyclic_selections(n):
            slots_x, slots_y = _split_slots(sel, i)
            inner_map = embed_components(inner, tuple(s + 1 for s in slots_x), n)
            outer_map = embed_components(outer, tuple(s + 1 for s in slots_y), n)
            composite = outer_map.compose(inner_map)
            entries: dict[tuple[Word, Word], Fraction] = {}
            for (out_word, in_word), coeff in composite.entries.items():
                arg_degrees = tuple(degs[k] for k in in_word)
                entries[(out_word, in_word)] = coeff * (
                    split_sign * sign_odd(arg_degrees, sel)
                )
            total = total + TensorMap(algebra.nbasis, n, n, entries)
    return total


def skew_clause_defects(fam: Mapping[int, TensorMap], super_degrees=None) -> list[str]:
    """Adjacent-transposition violations of the skew-symmetry clause.

    The clause asks that permuting the arguments and then the output slots
    costs exactly the odd Koszul sign of the permutation; transpositions
    of neighbours generate all of it.
    """
    defects: list[str] = []
    for arity, b in sorted(fam.items()):
        degs = (
            (0,) * b.dim
            if super_degrees is None
            else tuple(int(d) for d in super_degrees)
        )
        for t in range(arity - 1):
            tau = list(range(arity))
            tau[t], tau[t + 1] = tau[t + 1], tau[t]
            tau = tuple(tau)
            for w in words(b.dim, arity):
                permuted_args = word_permute(tau, w)
                lhs: Tensor = {}
                for v, c in b.apply_word(permuted_args).terms.items():
                    u = word_permute(tau, v)
                    lhs[u] = lhs.get(u, ZERO) + c
                sign = sign_odd(tuple(degs[k] for k in w), tau)
                rhs = {v: sign * c for v, c in b.apply_word(w).terms.items()}
                diff = dict(lhs)
                for v, c in rhs.items():
                    diff[v] = diff.get(v, ZERO) - c
                if any(diff.values()):
                    defects.append(
                        f"arity {arity}: swap ({t + 1} {t + 2}) fails on word"
                        f" ({','.join(map(str, w))})"
                    )
                    break
    return defects


def double_leibniz_defects(
    fam: Mapping[int, TensorMap],
    algebra: TruncatedAlgebra,
    super_degrees=None,
) -> tuple[list[str], int]:
    """Violations of the double-Leibniz clause on basis triples.

    The last argument is replaced by a basis product x*y: the bracket with
    y keeps x multiplied onto the first output slot with the Koszul sign
    of moving x past the other arguments, the bracket with x keeps y
    multiplied onto the last output slot.  The display's unclosed exponent
    on the second term is read as ``(-1)^(arity * |y|)``.  Products that
    leave the truncation window are skipped and counted.
    """
    degs = _bracket_degrees(algebra, super_degrees)
    defects: list[str] = []
    skipped = 0
    for arity, b in sorted(fam.items()):
        for args in words(algebra.nbasis, arity - 1):
            arg_deg = sum(degs[k] for k in args)
            for x in range(algebra.nbasis):
                for y in range(algebra.nbasis):
                    try:
                        product = algebra.mul_basis(x, y)
                        lhs: Tensor = {}
                        for p, cp in sorted(product.items()):
                            for v, c in b.apply_word(args + (p,)).terms.items():
                                lhs[v] = lhs.get(v, ZERO) + cp * c
                        left: Tensor = {}
                        for v, c in b.apply_word(args + (y,)).terms.items():
                            for q, cq in algebra.mul_basis(x, v[0]).items():
                                u = (q,) + v[1:]
                                left[u] = left.get(u, ZERO) + c * cq
                        right: Tensor = {}
                        for v, c in b.apply_word(args + (x,)).terms.items():
                            for q, cq in algebra.mul_basis(v[-1], y).items():
                                u = v[:-1] + (q,)
                                right[u] = right.get(u, ZERO) + c * cq
                    except TruncationOverflow:
                        skipped += 1
                        continue
                    sign_left = -1 if (degs[x] * arg_deg) % 2 else 1
                    sign_right = -1 if (arity * degs[y]) % 2 else 1
                    diff = dict(lhs)
                    for v, c in left.items():
                        diff[v] = diff.get(v, ZERO) - sign_left * c
                    for v, c in right.items():
                        diff[v] = diff.get(v, ZERO) - sign_right * c
                    if any(diff.values()):
                        defects.append(
                            f"arity {arity}: leibniz fails at args="
                            f"({','.join(algebra.labels[k] for k in args)}),"
                            f" x={algebra.labels[x]}, y={algebra.labels[y]}"
                        )
    return defects, skipped


@dataclass(frozen=True)
class DoubleInftyReport:
    """Skew clause, cyclic residual, and double-Leibniz clause, in that order."""

    n: int
    nbasis: int
    arities: tuple[int, ...]
    skew_defects: tuple[str, ...]
    residual_zero: bool | None
    residual_witness: tuple[Word, Word, Fraction] | None
    leibniz_defects: tuple[str, ...]
    leibniz_skipped: int
    conventions: tuple[tuple[str, str], ...]

    @property
    def skew_ok(self) -> bool:
        return not self.skew_defects

    @property
    def passed(self) -> bool:
        return self.skew_ok and bool(self.residual_zero) and not self.leibniz_defects

    def lines(self) -> list[str]:
        out = [
            "check: double-jacobi-infty",
            f"n: {self.n}",
            f"alphabet: {self.nbasis}",
            f"arities: {','.join(map(str, self.arities)) if self.arities else 'none'}",
        ]
        out.append(f"skew-symmetry clause: {'holds' if self.skew_ok else 'FAILS'}")
        for defect in self.skew_defects:
            out.append(f"  {defect}")
        if self.residual_zero is None:
            out.append("residual: skipped (skew-symmetry clause failed)")
        else:
            out.append(f"residual zero: {self.residual_zero}")
            if self.residual_witness is not None:
                o, w, c = self.residual_witness
                out.append(
                    f"  witness: out=({','.join(map(str, o))})"
                    f" in=({','.join(map(str, w))}) value={c}"
                )
        out.append(
            "double-leibniz clause: "
            + ("holds" if not self.leibniz_defects else "FAILS")
            + (
                f" ({self.leibniz_skipped} products outside the window skipped)"
                if self.leibniz_skipped
                else ""
            )
        )
        for defect in self.leibniz_defects[:3]:
            out.append(f"  {defect}")
        out.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        for key, text in self.conventions:
            out.append(f"convention {key}: {text}")
        return out


def jacobi_infty_check(
    fam: Mapping[int, TensorMap],
    algebra: TruncatedAlgebra,
    n: int,
    super_degrees=None,
) -> DoubleInftyReport:
    """Full n-ary double-bracket verdict; a failed skew clause is reported
    before any residual is evaluated."""
    degs = _bracket_degrees(algebra, super_degrees)
    _validate_bracket_family(fam, algebra, degs)
    skew = tuple(skew_clause_defects(fam, super_degrees=degs))
    residual_zero: bool | None = None
    witness: tuple[Word, Word, Fraction] | None = None
    if not skew:
        residual = jacobi_infty_residual(fam, algebra, n, super_degrees=degs)
        residual_zero = residual.is_zero()
        if not residual_zero:
            witness = residual.first_nonzero()
    leibniz, skipped = double_leibniz_defects(fam, algebra, super_degrees=degs)
    return DoubleInftyReport(
        n=n,
        nbasis=algebra.nbasis,
        arities=tuple(sorted(fam)),
        skew_defects=skew,
        residual_zero=residual_zero,
        residual_witness=witness,
        leibniz_defects=tuple(leibniz),
        leibniz_skipped=skipped,
        conventions=(
            ("cyclic sum", "rotations of range(n) with sign (-1)^i sign_odd"),
            (
                "skew clause",
                "permuted arguments and output slots cost the odd Koszul sign;"
                " the ungraded binary case is the usual minus",
            ),
            (
                "leibniz sign",
                "second term read as (-1)^(arity * |y|); the source display"
                " leaves the exponent unclosed",
            ),
        ),
    )


# ---------------------------------------------------------------------------
# fixtures


def gl_lie(size: int = 2) -> LieStructure:
    """gl_size with matrix-unit basis and commutator structure constants."""
    labels = [f"e{a + 1}{b + 1}" for a in range(size) for b in range(size)]

    def idx(a: int, b: int) -> int:
        return a * size + b

    table: dict[tuple[int, int], Element] = {}
    for a in range(size):
        for b in range(size):
            for c in range(size):
                for d in range(size):
                    entry: Element = {}
                    if b == c:
                        entry[idx(a, d)] = entry.get(idx(a, d), ZERO) + ONE
                    if d == a:
                        entry[idx(c, b)] = entry.get(idx(c, b), ZERO) - ONE
                    entry = {k: v for k, v in entry.items() if v}
                    if entry:
                        table[(idx(a, b), idx(c, d))] = entry
    return LieStructure(labels, table)


def abelian_lie(dim: int, degrees=None) -> LieStructure:
    """The abelian Lie algebra: every bracket vanishes."""
    return LieStructure([f"x{k + 1}" for k in range(dim)], {}, degrees)


def matrix_algebra(size: int = 2) -> TruncatedAlgebra:
    """Matrix units with the closed product table e_ab e_cd = [b=c] e_ad."""
    labels = [f"e{a + 1}{b + 1}" for a in range(size) for b in range(size)]

    def idx(a: int, b: int) -> int:
        return a * size + b

    table = {
        (idx(a, b), idx(b, d)): {idx(a, d): ONE}
        for a in range(size)
        for b in range(size)
        for d in range(size)
    }
    unit = {idx(a, a): ONE for a in range(size)}
    return TruncatedAlgebra(
        labels,
        [0] * len(labels),
        table,
        unit,
        mode="quotient",
        cap=0,
        info={"kind": "matrix", "size": size},
    )


def scalar_algebra() -> TruncatedAlgebra:
    """The ground field as a one-element basis."""
    return TruncatedAlgebra(
        ["1"],
        [0],
        {(0, 0): {0: ONE}},
        {0: ONE},
        mode="quotient",
        cap=0,
        info={"kind": "scalar"},
    )


def matrix_element_to_map(tensor: Tensor, size: int, n: int) -> TensorMap:
    """Words of matrix units as an endomorphism of the n-fold column space."""
    entries: dict[tuple[Word, Word], Fraction] = {}
    for word, coeff in tensor.items():
        out_word = tuple(k // size for k in word)
        in_word = tuple(k % size for k in word)
        key = (out_word, in_word)
        entries[key] = entries.get(key, ZERO) + coeff
    return TensorMap(size, n, n, entries)


def matrix_map_to_element(r: TensorMap, size: int) -> Tensor:
    """The inverse dictionary: an endomorphism as a word of matrix units."""
    out: Tensor = {}
    for (out_word, in_word), coeff in r.entries.items():
        word = tuple(a * size + b for a, b in zip(out_word, in_word))
        out[word] = out.get(word, ZERO) + coeff
    return {w: c for w, c in out.items() if c}
