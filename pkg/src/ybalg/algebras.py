"""Finite truncated algebras: polynomial quotients, free and path algebras,
and (deformed) preprojective quotients computed by exact row reduction.

Elements are sparse dictionaries ``{basis_index: Fraction}``.  Each algebra
carries a truncation ``mode``:

* ``"quotient"`` — products beyond the cap are genuinely zero (the algebra is
  the intended quotient, like a truncated polynomial ring);
* ``"window"`` — products beyond the cap are *unknown*; using one raises
  :class:`TruncationOverflow` so checks can flag the triple instead of
  silently treating it as zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import rref
from .tensoralg import ONE, ZERO, frac

Element = dict[int, Fraction]

_OVERFLOW = object()


class TruncationOverflow(Exception):
    """A product left the truncation window."""


def el(pairs) -> Element:
    out: Element = {}
    for idx, coeff in dict(pairs).items():
        c = frac(coeff)
        if c:
            out[idx] = c
    return out


def el_add(x: Element, y: Element) -> Element:
    out = dict(x)
    for idx, coeff in y.items():
        out[idx] = out.get(idx, ZERO) + coeff
    return {i: c for i, c in out.items() if c}


def el_scale(x: Element, scalar) -> Element:
    c = frac(scalar)
    return {i: c * v for i, v in x.items()} if c else {}


class TruncatedAlgebra:
    """An algebra with a finite labeled basis and exact structure constants.

    ``table[(i, j)]`` holds the product of basis elements ``i`` and ``j`` as a
    sparse element, or the overflow marker in window mode.  Missing keys mean
    the product is zero.  ``factorizations[i]`` optionally records a peeling
    ``i = generator * rest`` used by derivation-style bracket extensions;
    atoms (generators, idempotents, the unit) have ``None`` there.
    """

    def __init__(
        self,
        labels: list[str],
        degrees: list[int],
        table: dict[tuple[int, int], Element | object],
        unit: Element,
        mode: str,
        cap: int,
        idempotents: list[int] | None = None,
        factorizations: list[tuple[int, Element] | None] | None = None,
        info: dict | None = None,
    ):
        if mode not in ("quotient", "window"):
            raise ValueError("mode must be 'quotient' or 'window'")
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.table = table
        self.unit = el(unit)
        self.mode = mode
        self.cap = cap
        self.idempotents = idempotents
        self.factorizations = factorizations
        self.info = info or {}

    @property
    def nbasis(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element(self, label: str) -> Element:
        return {self.index(label): ONE}

    def mul_basis(self, i: int, j: int) -> Element:
        value = self.table.get((i, j), {})
        if value is _OVERFLOW:
            raise TruncationOverflow(
                f"product {self.labels[i]} * {self.labels[j]} leaves the window"
            )
        return value

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in self.mul_basis(i, j).items():
                    out[k] = out.get(k, ZERO) + ci * cj * ck
        return {k: c for k, c in out.items() if c}

    def check_associativity(self):
        """Exact check of (ab)c = a(bc) on all basis triples within the cap.

        Returns ``(ok, first_failure, skipped)`` where ``skipped`` counts
        window-mode triples whose products overflow.
        """
        skipped = 0
        n = self.nbasis
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    try:
                        left = self.mul(self.mul_basis(i, j), {k: ONE})
                        right = self.mul({i: ONE}, self.mul_basis(j, k))
                    except TruncationOverflow:
                        skipped += 1
                        continue
                    if el_add(left, el_scale(right, -1)):
                        return False, (i, j, k), skipped
        return True, None, skipped

    def format_element(self, x: Element) -> str:
        if not x:
            return "0"
        bits = []
        for idx in sorted(x):
            bits.append(f"{x[idx]}*{self.labels[idx]}")
        return " + ".join(bits)


def _build_table(labels, degrees, raw_product, cap, mode, structural_zero=None):
    """Tabulate products given a callback for in-cap pairs.

    Out-of-cap pairs are zero in quotient mode and overflow in window mode,
    except where ``structural_zero`` certifies the product vanishes for
    reasons independent of the truncation (e.g. path endpoint mismatch).
    """
    table: dict[tuple[int, int], Element | object] = {}
    n = len(labels)
    for i in range(n):
        for j in range(n):
            if degrees[i] + degrees[j] > cap:
                if mode == "window" and not (
                    structural_zero is not None and structural_zero(i, j)
                ):
                    table[(i, j)] = _OVERFLOW
                continue
            prod = raw_product(i, j)
            if prod:
                table[(i, j)] = prod
    return table


# ---------------------------------------------------------------------------
# polynomial and free algebras
# ---------------------------------------------------------------------------


def polynomial_quotient_algebra(n: int) -> TruncatedAlgebra:
    """The quotient of a one-variable polynomial ring by the n-th power."""
    labels = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, n)]
    degrees = list(range(n))
    raw = lambda i, j: {i + j: ONE}
    table = _build_table(labels, degrees, raw, n - 1, "quotient")
    factorizations: list[tuple[int, Element] | None] = [None, None]
    factorizations += [(1, {k - 1: ONE}) for k in range(2, n)]
    return TruncatedAlgebra(
        labels,
        degrees,
        table,
        unit={0: ONE},
        mode="quotient",
        cap=n - 1,
        factorizations=factorizations,
        info={"kind": "polynomial_quotient", "power": n},
    )


def free_algebra(dim: int, cap: int, mode: str = "window") -> TruncatedAlgebra:
    """Tensor algebra on ``dim`` letters, truncated at word length ``cap``."""
    basis_words = [()]
    for length in range(1, cap + 1):
        basis_words.extend(itertools.product(range(dim), repeat=length))
    labels = ["1"] + ["".join(f"x{i}" for i in w) for w in basis_words[1:]]
    degrees = [len(w) for w in basis_words]
    index = {w: k for k, w in enumerate(basis_words)}
    raw = lambda i, j: {index[basis_words[i] + basis_words[j]]: ONE}
    table = _build_table(labels, degrees, raw, cap, mode)
    factorizations: list[tuple[int, Element] | None] = []
    for w in basis_words:
        if len(w) <= 1:
            factorizations.append(None)
        else:
            factorizations.append((index[w[:1]], {index[w[1:]]: ONE}))
    return TruncatedAlgebra(
        labels,
        degrees,
        table,
        unit={0: ONE},
        mode=mode,
        cap=cap,
        factorizations=factorizations,
        info={"kind": "free", "dim": dim},
    )


# ---------------------------------------------------------------------------
# quivers and path algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (label, source, target)

    def __post_init__(self):
        labels = [e[0] for e in self.edges]
        if len(set(labels)) != len(labels):
            raise ValueError("edge labels must be unique")
        for label, src, tgt in self.edges:
            if src not in self.vertices or tgt not in self.vertices:
                raise ValueError(f"edge {label} has an endpoint off the vertex list")

    def is_strongly_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        forward: dict[str, set[str]] = {v: set() for v in self.vertices}
        backward: dict[str, set[str]] = {v: set() for v in self.vertices}
        for _, src, tgt in self.edges:
            forward[src].add(tgt)
            backward[tgt].add(src)

        def reach(adj):
            seen = {self.vertices[0]}
            frontier = [self.vertices[0]]
            while frontier:
                v = frontier.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
            return seen

        return len(reach(forward)) == len(self.vertices) and len(
            reach(backward)
        ) == len(self.vertices)


def double_quiver(q: Quiver) -> Quiver:
    doubled = list(q.edges) + [(f"{label}*", tgt, src) for label, src, tgt in q.edges]
    return Quiver(q.vertices, tuple(doubled))


def structural_primeness_report(q: Quiver) -> list[str]:
    """Sufficient structural criteria for primeness/noncommutativity of the
    path algebra; explicitly labeled as criteria, not a decision procedure."""
    sc = q.is_strongly_connected()
    big = len(q.vertices) >= 2 or len(q.edges) >= 2
    return [
        f"strongly connected: {sc}",
        f"at least two vertices or two edges: {big}",
        "primeness per cited criteria (strong connectivity), not verified from first principles",
    ]


def path_algebra(q: Quiver, cap: int, mode: str = "window") -> TruncatedAlgebra:
    """All paths of length up to ``cap``; product is concatenation when the
    terminal vertex of the left factor equals the initial vertex of the right.
    """
    vidx = {v: k for k, v in enumerate(q.vertices)}
    esrc = [vidx[e[1]] for e in q.edges]
    etgt = [vidx[e[2]] for e in q.edges]

    # paths as (initial_vertex, terminal_vertex, edge_tuple); trivial = empty tuple
    paths: list[tuple[int, int, tuple[int, ...]]] = [
        (v, v, ()) for v in range(len(q.vertices))
    ]
    frontier = [(esrc[i], etgt[i], (i,)) for i in range(len(q.edges))]
    for _ in range(cap):
        paths.extend(frontier)
        nxt = []
        for ini, ter, edges in frontier:
            if len(edges) == cap:
                continue
            for i in range(len(q.edges)):
                if esrc[i] == ter:
                    nxt.append((ini, etgt[i], edges + (i,)))
        frontier = nxt
        if not frontier:
            break
    paths = [p for p in paths if len(p[2]) <= cap]
    paths.sort(key=lambda p: (len(p[2]), p[2], p[0]))

    labels = []
    for ini, ter, edges in paths:
        if not edges:
            labels.append(f"e_{q.vertices[ini]}")
        else:
            labels.append("".join(q.edges[i][0] for i in edges))
    degrees = [len(p[2]) for p in paths]
    index = {p: k for k, p in enumerate(paths)}

    def raw(i, j):
        pi, pj = paths[i], paths[j]
        if pi[1] != pj[0]:
            return {}
        return {index[(pi[0], pj[1], pi[2] + pj[2])]: ONE}

    def mismatch(i, j):
        return paths[i][1] != paths[j][0]

    table = _build_table(labels, degrees, raw, cap, mode, structural_zero=mismatch)
    unit = {k: ONE for k, p in enumerate(paths) if not p[2]}
    factorizations: list[tuple[int, Element] | None] = []
    for ini, ter, edges in paths:
        if len(edges) <= 1:
            factorizations.append(None)
        else:
            head = index[(esrc[edges[0]], etgt[edges[0]], edges[:1])]
            rest = index[(etgt[edges[0]], ter, edges[1:])]
            factorizations.append((head, {rest: ONE}))
    return TruncatedAlgebra(
        labels,
        degrees,
        table,
        unit=unit,
        mode=mode,
        cap=cap,
        idempotents=[k for k, p in enumerate(paths) if not p[2]],
        factorizations=factorizations,
        info={"kind": "path", "quiver": q},
    )


# ---------------------------------------------------------------------------
# quotients by two-sided ideals (preprojective and deformed preprojective)
# ---------------------------------------------------------------------------


def preprojective_relation(q: Quiver, algebra: TruncatedAlgebra) -> Element:
    """The moment-map element ``sum_e (e e* - e* e)`` in the doubled path algebra."""
    rel: Element = {}
    for label, _, _ in q.edges:
        e = algebra.element(label)
        estar = algebra.element(f"{label}*")
        rel = el_add(rel, algebra.mul(e, estar))
        rel = el_add(rel, el_scale(algebra.mul(estar, e), -1))
    return rel


def quotient_algebra(
    parent: TruncatedAlgebra, relation: Element, relation_degree_span: int
) -> TruncatedAlgebra:
    """Quotient of a truncated algebra by the two-sided ideal of a relation.

    The ideal is spanned by ``p * relation * q`` over basis pairs whose total
    degree keeps the product inside the cap (``relation_degree_span`` is the
    top degree appearing in the relation).  With a homogeneous relation the
    computation is exact degreewise; an inhomogeneous relation is supported
    by the same row reduction and the result is flagged in ``info``.
    """
    n = parent.nbasis
    span_rows = []
    for p in range(n):
        for s in range(n):
            if (
                parent.degrees[p] + relation_degree_span + parent.degrees[s]
                > parent.cap
            ):
                continue
            prod = parent.mul(parent.mul({p: ONE}, relation), {s: ONE})
            if prod:
                row = [ZERO] * n
                for idx, coeff in prod.items():
                    row[idx] = coeff
                span_rows.append(row)
    reduced = rref(span_rows, n)
    reps = reduced.free_cols()
    rep_pos = {col: k for k, col in enumerate(reps)}

    def reduce_to_quotient(element: Element) -> Element:
        vec = [ZERO] * n
        for idx, coeff in element.items():
            vec[idx] = coeff
        residual = reduced.reduce(vec)
        return {rep_pos[c]: residual[c] for c in reps if residual[c]}

    labels = [parent.labels[c] for c in reps]
    degrees = [parent.degrees[c] for c in reps]
    homogeneous = (
        len({parent.degrees[i] for i in relation}) <= 1 if relation else True
    )

    def raw(i, j):
        try:
            prod = parent.mul_basis(reps[i], reps[j])
        except TruncationOverflow:
            return None
        return reduce_to_quotient(prod)

    table: dict[tuple[int, int], Element | object] = {}
    for i in range(len(reps)):
        for j in range(len(reps)):
            if degrees[i] + degrees[j] > parent.cap:
                if parent.mode == "window":
                    table[(i, j)] = _OVERFLOW
                continue
            value = raw(i, j)
            if value is None:
                table[(i, j)] = _OVERFLOW
            elif value:
                table[(i, j)] = value

    dims: dict[int, int] = {}
    for d in degrees:
        dims[d] = dims.get(d, 0) + 1
    return TruncatedAlgebra(
        labels,
        degrees,
        table,
        unit=reduce_to_quotient(parent.unit),
        mode=parent.mode,
        cap=parent.cap,
        info={
            "kind": "quotient",
            "parent": parent.info.get("kind"),
            "relation_rank": reduced.rank,
            "inhomogeneous": not homogeneous,
            "dims_by_degree": dims,
        },
    )


def preprojective_algebra(q: Quiver, cap: int) -> TruncatedAlgebra:
    doubled = double_quiver(q)
    parent = path_algebra(doubled, cap, mode="window")
    relation = preprojective_relation(q, parent)
    out = quotient_algebra(parent, relation, relation_degree_span=2)
    out.info["kind"] = "preprojective"
    return out


def deformed_preprojective_algebra(
    q: Quiver, weights: dict[str, Fraction], cap: int
) -> TruncatedAlgebra:
    """Quotient by ``lambda - sum_e (e e* - e* e)`` with vertexwise weights."""
    doubled = double_quiver(q)
    parent = path_algebra(doubled, cap, mode="window")
    relation = el_scale(preprojective_relation(q, parent), -1)
    for v, weight in weights.items():
        relation = el_add(relation, el_scale(parent.element(f"e_{v}"), weight))
    out = quotient_algebra(parent, relation, relation_degree_span=2)
    out.info["kind"] = "deformed_preprojective"
    return out
