"""Exact cohomology and Gerstenhaber operations for hom-associative algebras."""

from importlib.resources import files

from .algebra import (BUILTIN, AlgebraError, HomAlgebra, ValidationError, associative, dual_numbers,
                      example_2d, load_algebra, split_pair, twisted_dual_numbers, yau_twist)
from .cochain import (Cochain, CochainSpaceBasis, cochain_space_basis, identity_cochain, is_equivariant,
                      mu_cochain, random_cochain)
from .cohomology import CohomologyReport, HochschildComplex, build_complex, cohomology_report
from .ops import bracket, circ, circ_i, cup, delta, homotopy, homotopy_H
from .verify import VerificationPlan, VerificationReport, replay, run_plan


def data_path(name: str):
    """Path of a shipped fixture, e.g. ``data_path("hom_assoc_2d.json")``."""
    return files(__name__) / "data" / name


__all__ = [
    "BUILTIN", "AlgebraError", "HomAlgebra", "ValidationError", "associative", "dual_numbers",
    "example_2d", "load_algebra", "split_pair", "twisted_dual_numbers", "yau_twist",
    "Cochain", "CochainSpaceBasis", "cochain_space_basis", "identity_cochain", "is_equivariant",
    "mu_cochain", "random_cochain", "CohomologyReport", "HochschildComplex", "build_complex",
    "cohomology_report", "bracket", "circ", "circ_i", "cup", "delta", "homotopy", "homotopy_H",
    "VerificationPlan", "VerificationReport", "replay", "run_plan", "data_path",
]
