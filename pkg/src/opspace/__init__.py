"""Finite-dimensional operator-space norms, certified complex-interpolation
bounds, tensor-norm estimators, and a verification suite."""

from .errors import (DimensionMismatchError, InfeasibleRankError, InputError,
                     NearSingularError, OpspaceError, ResourceLimitError,
                     UnsupportedStructureError)
from .linalg import (adjoint, complex_gaussian, conj, fractional_power,
                     geometric_mean, kron, operator_norm, trace_norm,
                     transpose)
from .params import SolverParams
from .spaces import (ColumnSpace, ConcreteSpace, IntersectionSpace,
                     InterpolatedSpace, MatrixTuple, OHSpace, OppositeSpace,
                     RowSpace, SpaceStructure, SumSpace, column_level_norm,
                     column_units, couple_level, dual_level_norm,
                     haagerup_cs_lhs, intersection_level_norm, matrix_units,
                     min_tensor_level_norm, oh_level_norm, opposite,
                     opposite_level_norm, row_level_norm, row_units,
                     sum_level_norm)
from .interp import (BoundaryGrid, CoupleLevel, EuclideanNorm, ExpWitness,
                     HilbertianNorm, NormBounds, StripFunction, SumAbsNorm,
                     SupNorm, conformal_boundary_grid, disk_to_strip,
                     hilbertian_couple, hilbertian_interp,
                     interp_lower_bound, interp_norm_bounds,
                     interp_upper_bound, linf_l1_couple, strip_to_disk)
from .tensorcb import (CoeffMap, Representation, TensorElement,
                       cb_level_lower, cb_norm_oh_exact, haagerup_norm_ub,
                       oh_tensor_norm_ub, phi_map, row_column_constant,
                       transpose_tensor)
from .verify import (CheckReport, check_cb_oh, check_corollary4,
                     check_corollary7, check_duality_level1,
                     check_haagerup_cs, check_oh_factorization,
                     check_oh_h_tensor, check_opposite_invariance,
                     check_ruan_axioms, check_theorem3, run_suite)

__version__ = "0.1.0"
