"""Residuals for the classical, associative, and quantum Yang-Baxter equations.

All residuals are returned as exact tensor maps on the third tensor power;
an equation "holds" precisely when its residual map has no entries.  The
component-embedding and r21 conventions live in :mod:`ybalg.tensoralg`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .tensoralg import TensorMap, Word, commutator, embed_components

CONVENTIONS: dict[str, str] = {
    "permutation_action": "left action: content of slot j moves to slot p(j)",
    "r21": "r21 = swap o r o swap",
    "skew": "skew means r + r21 = 0",
    "cybe": "cybe(r) = [r12, r13] - [r23, r12] + [r13, r23]",
    "aybe": "aybe(r) = r12 r13 - r23 r12 + r13 r23",
    "aybe_prime": "aybe_prime(r) = r13 r12 - r12 r23 + r23 r13",
    "qybe": "qybe(R) = R12 R13 R23 - R23 R13 R12",
    "unitarity": "unitarity means R21 o R = id",
    "cae": "cae defect = cybe(r) - (aybe(r) - P23 aybe(r) P23), P23 printed (132)",
}


def _comp(r: TensorMap, i: int, j: int) -> TensorMap:
    return embed_components(r, (i, j), 3)


def is_skew(r: TensorMap) -> bool:
    """Whether ``r + r21 = 0``."""
    return (r + r.r21()).is_zero()


def skew_defect(r: TensorMap) -> TensorMap:
    return r + r.r21()


def cybe_residual(r: TensorMap) -> TensorMap:
    r12, r13, r23 = _comp(r, 1, 2), _comp(r, 1, 3), _comp(r, 2, 3)
    return commutator(r12, r13) - commutator(r23, r12) + commutator(r13, r23)


def aybe_residual(r: TensorMap) -> TensorMap:
    r12, r13, r23 = _comp(r, 1, 2), _comp(r, 1, 3), _comp(r, 2, 3)
    return r12.compose(r13) - r23.compose(r12) + r13.compose(r23)


def aybe_prime_residual(r: TensorMap) -> TensorMap:
    r12, r13, r23 = _comp(r, 1, 2), _comp(r, 1, 3), _comp(r, 2, 3)
    return r13.compose(r12) - r12.compose(r23) + r23.compose(r13)


def qybe_residual(big_r: TensorMap) -> TensorMap:
    r12, r13, r23 = _comp(big_r, 1, 2), _comp(big_r, 1, 3), _comp(big_r, 2, 3)
    return r12.compose(r13).compose(r23) - r23.compose(r13).compose(r12)


def unitarity_defect(big_r: TensorMap) -> TensorMap:
    return big_r.r21().compose(big_r) - TensorMap.identity(big_r.dim, 2)


def cae_defect(r: TensorMap) -> TensorMap:
    """Difference between the classical residual and its associative expansion.

    For skew ``r`` this is identically zero:
    ``cybe(r) = aybe(r) - P aybe(r) P`` with ``P`` the operator exchanging
    the second and third slots (one-line form ``(132)``).
    """
    a = aybe_residual(r)
    return cybe_residual(r) - (a - a.conjugate_by_perm((0, 2, 1)))


RESIDUALS = {
    "cybe": cybe_residual,
    "aybe": aybe_residual,
    "aybe-prime": aybe_prime_residual,
    "qybe": qybe_residual,
    "unitarity": unitarity_defect,
    "cae": cae_defect,
    "skew": skew_defect,
}

_RELEVANT_FLAGS = {
    "cybe": ("permutation_action", "r21", "skew", "cybe"),
    "aybe": ("permutation_action", "aybe"),
    "aybe-prime": ("permutation_action", "aybe_prime"),
    "qybe": ("permutation_action", "qybe"),
    "unitarity": ("permutation_action", "r21", "unitarity"),
    "cae": ("permutation_action", "r21", "skew", "cybe", "aybe", "cae"),
    "skew": ("permutation_action", "r21", "skew"),
}


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one residual check, with enough context to reproduce it."""

    kind: str
    dim: int
    passed: bool
    witness: tuple[Word, Word, Fraction] | None
    conventions: tuple[tuple[str, str], ...]
    preconditions: tuple[tuple[str, bool], ...] = field(default=())
    notes: tuple[str, ...] = field(default=())

    def lines(self) -> list[str]:
        out = [f"check: {self.kind}", f"dim: {self.dim}"]
        for name, ok in self.preconditions:
            out.append(f"precondition {name}: {'holds' if ok else 'FAILS'}")
        out.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        if self.witness is not None:
            o, i, c = self.witness
            o_s = ",".join(map(str, o))
            i_s = ",".join(map(str, i))
            out.append(f"witness: out=({o_s}) in=({i_s}) value={c}")
        for note in self.notes:
            out.append(f"note: {note}")
        for key, text in self.conventions:
            out.append(f"convention {key}: {text}")
        return out


def check(kind: str, r: TensorMap) -> ResidualReport:
    """Run one named residual check and wrap the outcome in a report."""
    if kind not in RESIDUALS:
        raise ValueError(f"unknown check kind: {kind!r}")
    preconditions: list[tuple[str, bool]] = []
    notes: list[str] = []
    if kind == "cae":
        skew_ok = is_skew(r)
        preconditions.append(("skew", skew_ok))
        if not skew_ok:
            notes.append("the expansion identity is only asserted for skew r")
    residual = RESIDUALS[kind](r)
    passed = residual.is_zero() and all(ok for _, ok in preconditions)
    return ResidualReport(
        kind=kind,
        dim=r.dim,
        passed=passed,
        witness=residual.first_nonzero(),
        conventions=tuple((k, CONVENTIONS[k]) for k in _RELEVANT_FLAGS[kind]),
        preconditions=tuple(preconditions),
        notes=tuple(notes),
    )
