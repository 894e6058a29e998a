"""Mod-p obstructions to A_k-maps between Lie group quotients."""
from .fp import FpElement, Prime, inv_mod, rational_to_fp
from .graded import GradedAlgebra, Polynomial, AlgebraMap, GeneratorIdeal, SolutionSet
from .steenrod import RootModel, p1_generator, p1_generator_roots, p1_wu, p1_exceptional
from .catalog import instantiate_group, instantiate_pair, a_value, b_value

__version__ = "0.1.0"
