"""Exact-arithmetic verification toolkit for Yang-Baxter-type identities.

Everything is computed over the rationals with sparse word-indexed tensors;
checks report exact zero/nonzero residuals, never approximations.

The submodules group by subject:

- :mod:`ybalg.tensoralg` — words, graded tensors, maps, block permutations.
- :mod:`ybalg.linalg` — fraction-free row reduction, ranks, nullspaces.
- :mod:`ybalg.ybe` — classical/associative/quantum residuals and the
  combination identity.
- :mod:`ybalg.twisted` — the bracket extension to tensor words and its
  axiom checks.
- :mod:`ybalg.algebras` — quiver path algebras, preprojective quotients,
  truncated polynomial rings.
- :mod:`ybalg.double` — double brackets, their axioms, and the one-sided
  multiplication comparison.
- :mod:`ybalg.operad` — quadratic relation classification under a
  distributivity constraint.
- :mod:`ybalg.linfty` — homotopy bracket families, their identities, and
  the product extension.
- :mod:`ybalg.ybe_infty` — arity-indexed families and their higher
  residual sums.
- :mod:`ybalg.frt` — twisted symmetric-group actions, Young symmetrizers,
  commutants, and the tensor-power decomposition.
- :mod:`ybalg.fixtures` — exhaustive skew grid searches and named example
  maps.
- :mod:`ybalg.io` / :mod:`ybalg.harness` / :mod:`ybalg.cli` — file
  formats, the job runner, and the command line.
"""

__version__ = "0.1.0"

from .fixtures import (
    diagonal_unitary_qybe_solution,
    random_skew_map,
    search_skew_solutions,
)
from .harness import Job, JobSpec, Report, default_suite, fixture_search, run_suite
from .io import SchemaError, parse_inputs
from .tensoralg import (
    BlockPermutation,
    GradedTensor,
    TensorMap,
    apply_permutation,
    block_permutation_expand,
    commutator,
    embed_components,
    frac,
    sigma_prime,
)
from .ybe import (
    ResidualReport,
    aybe_residual,
    cae_defect,
    check,
    cybe_residual,
    qybe_residual,
    skew_defect,
    unitarity_defect,
)

__all__ = [
    "BlockPermutation",
    "GradedTensor",
    "Job",
    "JobSpec",
    "Report",
    "ResidualReport",
    "SchemaError",
    "TensorMap",
    "apply_permutation",
    "aybe_residual",
    "block_permutation_expand",
    "cae_defect",
    "check",
    "commutator",
    "cybe_residual",
    "default_suite",
    "diagonal_unitary_qybe_solution",
    "embed_components",
    "fixture_search",
    "frac",
    "parse_inputs",
    "qybe_residual",
    "random_skew_map",
    "run_suite",
    "search_skew_solutions",
    "sigma_prime",
    "skew_defect",
    "unitarity_defect",
    "__version__",
]
