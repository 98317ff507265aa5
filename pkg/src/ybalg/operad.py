"""Classification of quadratic relations compatible with biderivation extension.

A binary operation ``*`` on a commutative algebra that is a derivation in
both arguments (the generalized Leibniz rule)

    (uv)*w = u(v*w) + v(u*w)        u*(vw) = v(u*w) + w(u*v)

does not extend along an arbitrary quadratic relation: substituting a product
into one slot of the relation produces cross terms ``(x*y)(z*w)`` that must
cancel identically.  This module expands the substitution symbolically,
extracts the exact linear constraints on the relation coefficients, computes
the admissible relation space, and names the resulting operads.  A numeric
oracle re-derives every verdict on genuine polynomial algebras with the
operation implemented as an honest biderivation, bypassing the symbolic
expansion entirely.

Relation coordinates: a quadratic relation in arguments ``b1, b2, b3`` is

    sum over sigma in S3, shape in {1, 2} of lambda[sigma, shape] * term

with shape 1 = ``b_{s(1)} * (b_{s(2)} * b_{s(3)})`` (right-nested) and
shape 2 = ``(b_{s(1)} * b_{s(2)}) * b_{s(3)}`` (left-nested).  Under a
declared symmetry ``x*y = eps y*x`` the left-nested shapes collapse and the
three-term cyclic basis

    lambda1 b1*(b2*b3) + lambda2 b2*(b3*b1) + lambda3 b3*(b1*b2)

is used instead.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .linalg import nullspace, rref
from .tensoralg import ONE, ZERO, frac, perm_str

# ---------------------------------------------------------------------------
# formal trees and Leibniz normal form
# ---------------------------------------------------------------------------

# a tree is a leaf (string) or ('s'|'p', left, right)
Tree = object


def star(left, right) -> tuple:
    return ("s", left, right)


def prod(left, right) -> tuple:
    return ("p", left, right)


def _atom_key(atom):
    if isinstance(atom, str):
        return (0, atom)
    return (1, _atom_key(atom[1]), _atom_key(atom[2]))


def _atom_str(atom) -> str:
    if isinstance(atom, str):
        return atom
    return f"({_atom_str(atom[1])}*{_atom_str(atom[2])})"


def monomial_str(monomial: tuple) -> str:
    return ".".join(_atom_str(a) for a in monomial)


class LeibnizExpander:
    """Normalize trees of ``*`` and commutative products on distinct leaves.

    Normal form: a sum of commutative monomials whose atoms are leaves and
    irreducible ``*``-trees (both arguments atomic).  ``epsilon`` declares the
    symmetry ``x*y = eps y*x``; atomic stars are then stored with arguments in
    canonical order and the swap sign absorbed into the coefficient.
    """

    def __init__(self, epsilon: Fraction | None = None):
        self.epsilon = epsilon

    def _canon_star(self, left, right) -> tuple[tuple, Fraction]:
        if self.epsilon is None or _atom_key(left) <= _atom_key(right):
            return ("s", left, right), ONE
        return ("s", right, left), self.epsilon

    def expand(self, tree) -> dict[tuple, Fraction]:
        if isinstance(tree, str):
            return {(tree,): ONE}
        kind, left, right = tree
        lx, rx = self.expand(left), self.expand(right)
        out: dict[tuple, Fraction] = {}
        if kind == "p":
            for ml, cl in lx.items():
                for mr, cr in rx.items():
                    key = tuple(sorted(ml + mr, key=_atom_key))
                    out[key] = out.get(key, ZERO) + cl * cr
        elif kind == "s":
            # star of two monomials: derivation in each argument peels one
            # atom from each side, the rest multiply the atomic star
            for ml, cl in lx.items():
                for mr, cr in rx.items():
                    for i in range(len(ml)):
                        for j in range(len(mr)):
                            atom, sign = self._canon_star(ml[i], mr[j])
                            rest = ml[:i] + ml[i + 1 :] + mr[:j] + mr[j + 1 :]
                            key = tuple(sorted(rest + (atom,), key=_atom_key))
                            out[key] = out.get(key, ZERO) + cl * cr * sign
        else:
            raise ValueError(f"unknown node kind {kind!r}")
        return {k: c for k, c in out.items() if c}


# ---------------------------------------------------------------------------
# relation bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationTerm:
    label: str
    build: Callable  # (b1, b2, b3) -> tree


def general_basis() -> list[RelationTerm]:
    """The 12 terms (sigma in S3) x (right-nested, left-nested)."""
    terms = []
    for sigma in itertools.permutations((0, 1, 2)):
        i, j, k = sigma

        def right_nested(b1, b2, b3, _s=(i, j, k)):
            bs = (b1, b2, b3)
            return star(bs[_s[0]], star(bs[_s[1]], bs[_s[2]]))

        def left_nested(b1, b2, b3, _s=(i, j, k)):
            bs = (b1, b2, b3)
            return star(star(bs[_s[0]], bs[_s[1]]), bs[_s[2]])

        name = perm_str(sigma)
        terms.append(
            RelationTerm(f"b{i+1}*(b{j+1}*b{k+1}) [sigma={name}]", right_nested)
        )
        terms.append(
            RelationTerm(f"(b{i+1}*b{j+1})*b{k+1} [sigma={name}]", left_nested)
        )
    return terms


def cyclic_basis() -> list[RelationTerm]:
    """Three-term cyclic basis used once a symmetry is declared."""
    return [
        RelationTerm("b1*(b2*b3)", lambda b1, b2, b3: star(b1, star(b2, b3))),
        RelationTerm("b2*(b3*b1)", lambda b1, b2, b3: star(b2, star(b3, b1))),
        RelationTerm("b3*(b1*b2)", lambda b1, b2, b3: star(b3, star(b1, b2))),
    ]


SYMMETRY_EPSILON: dict[str, Fraction | None] = {
    "none": None,
    "symmetric": frac(1),
    "skew": frac(-1),
}


def relation_basis(sym: str) -> list[RelationTerm]:
    if sym not in SYMMETRY_EPSILON:
        raise ValueError(f"symmetry must be one of {sorted(SYMMETRY_EPSILON)}")
    return general_basis() if sym == "none" else cyclic_basis()


# ---------------------------------------------------------------------------
# obstruction systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    slot: int
    monomial: tuple  # the cross-term monomial whose coefficient must vanish
    row: tuple[Fraction, ...]

    def pretty(self, basis: list[RelationTerm]) -> str:
        parts = []
        for coeff, term in zip(self.row, basis):
            if not coeff:
                continue
            sign = "+" if coeff > 0 else "-"
            mag = abs(coeff)
            scale = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign} {scale}lam[{term.label}]")
        lhs = " ".join(parts) if parts else "0"
        return f"slot {self.slot}, coefficient of {monomial_str(self.monomial)}: {lhs} = 0"


@dataclass(frozen=True)
class ObstructionSystem:
    sym: str
    constraints: tuple[Constraint, ...]
    nullspace_basis: tuple[tuple[Fraction, ...], ...]

    @property
    def nullspace_dim(self) -> int:
        return len(self.nullspace_basis)

    def unique_rows(self) -> list[tuple[Fraction, ...]]:
        seen = []
        for c in self.constraints:
            row = _normalize_row(c.row)
            if row and row not in seen:
                seen.append(row)
        return seen

    def violated_by(self, coeffs) -> list[tuple[Constraint, Fraction]]:
        out = []
        for c in self.constraints:
            value = sum((r * x for r, x in zip(c.row, coeffs)), ZERO)
            if value:
                out.append((c, value))
        return out


def _normalize_row(row) -> tuple[Fraction, ...] | None:
    lead = next((x for x in row if x), None)
    if lead is None:
        return None
    return tuple(x / lead for x in row)


def leibniz_obstruction(sym: str, slot: int) -> ObstructionSystem:
    """Constraints from substituting a product into one slot of the relation.

    Expands ``rel(..., b'b'', ...)`` minus the outer-multiple form
    ``b' rel(..., b'', ...) + b'' rel(..., b', ...)`` and equates the
    coefficient of every residual monomial to zero.  Only cross-term
    monomials ``(x*y).(z*w)`` survive the subtraction.
    """
    if slot not in (1, 2, 3):
        raise ValueError("slot must be 1, 2 or 3")
    basis = relation_basis(sym)
    expander = LeibnizExpander(SYMMETRY_EPSILON[sym])
    leaves = ["b1", "b2", "b3"]
    split = leaves[slot - 1]
    prime, dprime = split + "'", split + "''"

    defect_by_term: list[dict[tuple, Fraction]] = []
    for term in basis:
        args_sub = list(leaves)
        args_sub[slot - 1] = prod(prime, dprime)
        lhs = expander.expand(term.build(*args_sub))

        args_p = list(leaves)
        args_p[slot - 1] = dprime
        args_q = list(leaves)
        args_q[slot - 1] = prime
        rhs = expander.expand(prod(prime, term.build(*args_p)))
        for mono, coeff in expander.expand(prod(dprime, term.build(*args_q))).items():
            rhs[mono] = rhs.get(mono, ZERO) + coeff

        defect = dict(lhs)
        for mono, coeff in rhs.items():
            defect[mono] = defect.get(mono, ZERO) - coeff
        defect_by_term.append({m: c for m, c in defect.items() if c})

    monomials = sorted(
        {m for d in defect_by_term for m in d}, key=lambda m: tuple(map(_atom_key, m))
    )
    constraints = []
    for mono in monomials:
        row = tuple(d.get(mono, ZERO) for d in defect_by_term)
        constraints.append(Constraint(slot, mono, row))
    rows = [list(c.row) for c in constraints]
    basis_vecs = nullspace(rows, len(basis)) if rows else _full_space(len(basis))
    return ObstructionSystem(sym, tuple(constraints), tuple(map(tuple, basis_vecs)))


def _full_space(n: int) -> list[list[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def full_constraint_system(sym: str) -> ObstructionSystem:
    """Union of the slot-1, slot-2 and slot-3 obstruction systems."""
    constraints: list[Constraint] = []
    for slot in (1, 2, 3):
        constraints.extend(leibniz_obstruction(sym, slot).constraints)
    nbasis = len(relation_basis(sym))
    rows = [list(c.row) for c in constraints]
    basis_vecs = nullspace(rows, nbasis) if rows else _full_space(nbasis)
    return ObstructionSystem(sym, tuple(constraints), tuple(map(tuple, basis_vecs)))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

LIE_ADMISSIBLE_LABEL = (
    "alternating sum over S3 of [ (b1*b2)*b3 - b1*(b2*b3) ] (Lie-admissibility)"
)
JACOBI_LABEL = "b1*(b2*b3) + b2*(b3*b1) + b3*(b1*b2) (Jacobi)"


@dataclass(frozen=True)
class ClassificationResult:
    sym: str
    verdict: str  # operad name or "not distributive"
    relation_dim: int
    violated: tuple[tuple[Constraint, Fraction], ...]

    def lines(self, basis: list[RelationTerm]) -> list[str]:
        out = [f"symmetry: {self.sym}", f"relation space dimension: {self.relation_dim}"]
        if self.verdict == "not distributive":
            out.append("verdict: not distributive")
            for constraint, value in self.violated:
                out.append(f"violated: {constraint.pretty(basis)}  [evaluates to {value}]")
        else:
            out.append(f"verdict: operad of {self.verdict}")
        return out


def classify(sym: str, r3_vectors: list) -> ClassificationResult:
    """Name the operad presented by (symmetry choice, quadratic relations).

    ``r3_vectors`` spans the imposed degree-3 relations in the coordinates of
    ``relation_basis(sym)``.  Vectors outside the admissible nullspace yield
    "not distributive" with the violated constraints as witnesses.
    """
    system = full_constraint_system(sym)
    violated: list[tuple[Constraint, Fraction]] = []
    for vec in r3_vectors:
        violated.extend(system.violated_by(vec))
    if violated:
        return ClassificationResult(sym, "not distributive", _span_dim(r3_vectors), tuple(violated))

    dim = _span_dim(r3_vectors)
    if sym == "none":
        verdict = "magmas" if dim == 0 else "Lie-admissible algebras"
    elif sym == "symmetric":
        verdict = "symmetric magmas"  # nullspace is {0}: dim is forcibly 0
    else:
        verdict = "skew magmas" if dim == 0 else "Lie algebras"
    return ClassificationResult(sym, verdict, dim, ())


def _span_dim(vectors) -> int:
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return 0
    return rref(vecs, len(vecs[0])).rank


def lie_admissible_vector() -> list[Fraction]:
    """The generator of the admissible line in the 12-term basis."""
    from .tensoralg import perm_sign

    vec = []
    for sigma in itertools.permutations((0, 1, 2)):
        sgn = frac(perm_sign(sigma))
        vec.extend([-sgn, sgn])  # right-nested then left-nested
    return vec


def associativity_vector() -> list[Fraction]:
    """b1*(b2*b3) - (b1*b2)*b3 in the 12-term basis."""
    vec = [ZERO] * 12
    vec[0] = ONE  # identity permutation, right-nested
    vec[1] = -ONE  # identity permutation, left-nested
    return vec


def jacobi_vector() -> list[Fraction]:
    return [ONE, ONE, ONE]


# ---------------------------------------------------------------------------
# numeric oracle: honest biderivations on polynomial algebras
# ---------------------------------------------------------------------------

# polynomials over named variables: {((var, exponent), ...) sorted: coefficient}
Poly = dict[tuple, Fraction]


def poly_const(c) -> Poly:
    c = frac(c)
    return {(): c} if c else {}


def poly_var(name: str) -> Poly:
    return {((name, 1),): ONE}


def poly_add(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for m, c in p.items():
            out[m] = out.get(m, ZERO) + c
    return {m: c for m, c in out.items() if c}


def poly_scale(p: Poly, c) -> Poly:
    c = frac(c)
    return {m: c * x for m, x in p.items()} if c else {}


def _mono_mul(a: tuple, b: tuple) -> tuple:
    exps: dict = {}
    for var, e in a + b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            key = _mono_mul(ma, mb)
            out[key] = out.get(key, ZERO) + ca * cb
    return {m: c for m, c in out.items() if c}


def _mono_delete(m: tuple, var: str) -> tuple:
    out = []
    for v, e in m:
        if v == var:
            if e > 1:
                out.append((v, e - 1))
        else:
            out.append((v, e))
    return tuple(out)


class Biderivation:
    """``*`` on a polynomial ring, a derivation in each argument.

    ``gen(a, b)`` supplies the value on a pair of variables; the extension to
    monomials is the honest double-derivation sum with multiplicities, and to
    polynomials by bilinearity.  This is the independent numeric route: no
    tree rewriting is involved.
    """

    def __init__(self, gen: Callable[[str, str], Poly]):
        self.gen = gen

    def __call__(self, p: Poly, q: Poly) -> Poly:
        out: Poly = {}
        for mp, cp in p.items():
            for mq, cq in q.items():
                for var_a, exp_a in mp:
                    rest_a = {_mono_delete(mp, var_a): frac(exp_a)}
                    for var_b, exp_b in mq:
                        rest_b = {_mono_delete(mq, var_b): frac(exp_b)}
                        piece = poly_mul(poly_mul(rest_a, rest_b), self.gen(var_a, var_b))
                        for m, c in piece.items():
                            out[m] = out.get(m, ZERO) + cp * cq * c
        return {m: c for m, c in out.items() if c}


def eval_tree(tree, env: dict[str, Poly], op: Callable[[Poly, Poly], Poly]) -> Poly:
    if isinstance(tree, str):
        return env[tree]
    kind, left, right = tree
    lv = eval_tree(left, env, op)
    rv = eval_tree(right, env, op)
    return poly_mul(lv, rv) if kind == "p" else op(lv, rv)


def generic_assignment(sym: str) -> Biderivation:
    """A faithful instantiation: each variable pair gets a fresh variable.

    Values of the operation on base variables are fresh symbols (with the
    declared symmetry), and pairs involving fresh symbols get further fresh
    symbols.  Distinct cross terms then land on distinct monomials, so the
    numeric defect vanishes iff the symbolic constraints are satisfied.
    """
    eps = SYMMETRY_EPSILON[sym]

    def gen(a: str, b: str) -> Poly:
        if eps is not None and a > b:
            return poly_scale(gen(b, a), eps)
        return poly_var(f"<{a}|{b}>")

    return Biderivation(gen)


def zero_assignment() -> Biderivation:
    """The operation on a free commutative algebra with zero generator values
    (a polynomial ring on an abelian Lie algebra)."""
    return Biderivation(lambda a, b: {})


def sl2_poisson_assignment() -> Biderivation:
    """Linear Poisson structure with standard three-dimensional structure
    constants: e*f = h, h*e = 2e, h*f = -2f, extended skew."""
    values = {
        ("e", "f"): poly_var("h"),
        ("h", "e"): poly_scale(poly_var("e"), 2),
        ("h", "f"): poly_scale(poly_var("f"), -2),
    }

    def gen(a: str, b: str) -> Poly:
        if (a, b) in values:
            return values[(a, b)]
        if (b, a) in values:
            return poly_scale(values[(b, a)], -1)
        return {}

    return Biderivation(gen)


def relation_value(coeffs, basis, env, op) -> Poly:
    total: Poly = {}
    for coeff, term in zip(coeffs, basis):
        if not coeff:
            continue
        total = poly_add(
            total, poly_scale(eval_tree(term.build("b1", "b2", "b3"), env, op), coeff)
        )
    return total


def symbolic_expand_oracle(coeffs, sym: str, op: Biderivation | None = None) -> bool:
    """Numerically confirm (or refute) compatibility of a relation.

    Substitutes a product of two fresh variables into each slot in turn and
    compares against the outer-multiple form, with the operation realized
    concretely on polynomials.  With the generic assignment (the default)
    the verdict agrees exactly with the linear constraint system.
    """
    basis = relation_basis(sym)
    if op is None:
        op = generic_assignment(sym)
    base_env = {"b1": poly_var("u1"), "b2": poly_var("u2"), "b3": poly_var("u3")}
    for slot in (1, 2, 3):
        name = f"b{slot}"
        p, q = poly_var(f"v{slot}"), poly_var(f"w{slot}")
        env_split = dict(base_env)
        env_split[name] = poly_mul(p, q)
        lhs = relation_value(coeffs, basis, env_split, op)
        env_p = dict(base_env)
        env_p[name] = q
        env_q = dict(base_env)
        env_q[name] = p
        rhs = poly_add(
            poly_mul(p, relation_value(coeffs, basis, env_p, op)),
            poly_mul(q, relation_value(coeffs, basis, env_q, op)),
        )
        if poly_add(lhs, poly_scale(rhs, -1)):
            return False
    return True


def random_relation(sym: str, rng: random.Random, lo: int = -3, hi: int = 3):
    n = len(relation_basis(sym))
    return [frac(rng.randint(lo, hi)) for _ in range(n)]


def oracle_agreement_trial(sym: str, rng: random.Random, count: int = 50) -> int:
    """Compare the linear-system verdict against the numeric oracle on random
    relations; returns the number of agreements (should equal ``count``)."""
    system = full_constraint_system(sym)
    agreements = 0
    for _ in range(count):
        coeffs = random_relation(sym, rng)
        linear_ok = not system.violated_by(coeffs)
        numeric_ok = symbolic_expand_oracle(coeffs, sym)
        agreements += linear_ok == numeric_ok
    return agreements
