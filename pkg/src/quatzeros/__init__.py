"""Exact computer algebra for zero sets of left ideals in polynomial rings
over quaternion algebras: evaluation, central presentations, blow-ups,
multisphere restrictions, cutting ideals, and quadratic-form residue
computations, all in exact rational arithmetic."""

from .scalars import (RAT, FLOAT64, F64, FunctionField, RatFunc, Rat,
                      SignedMonomial, normalize_square_class, square_class_of,
                      poly_valuation, residue_at, rat_sqrt,
                      PoleAtPi, ZeroElement)
from .quat import (QuaternionAlgebra, Quaternion, NonInvertible, commutes,
                   is_central_tuple, conjugate_tuple, imaginary_direction,
                   primitive_direction)
from .poly import ArityMismatch, QPoly, PointEvaluator, random_poly
from .central import (AllReal, CentralPresentation, MultiSphere, NotCentral,
                      SphereBlock, blow_up, central_presentation,
                      decompose_central, msphere_contains, reflect_pure,
                      sample_sphere_point)
from .msphere import (MultiAffine, NotABlowUp, block_monomial_reduce,
                      cutting_generators, restrict, two_point_grid,
                      vanishes_on, vanishes_on_grid, verify_cut)
from .ideal import (CentralGrid, EmptyIdeal, IncommensurableRadii, LeftIdeal,
                    PreconditionFailed, ZeroBlock, ZeroPivot, central_grid,
                    conjugate_tail, random_commensurable_point, sample_member,
                    to_f64_point, to_f64_poly, verify_blowup,
                    verify_central_zeros, verify_real_multiples)
from .qform import (AnisotropyCertificate, BadOrder, DiagForm, UNDECIDED,
                    Undecided, ZeroConstant, albert_form, certify_anisotropy,
                    counterexample_algebra, counterexample_field,
                    counterexample_poly, norm_form, replay_certificate,
                    springer_residues, verify_counterexample)
from .report import Check, Report

__version__ = "0.1.0"
