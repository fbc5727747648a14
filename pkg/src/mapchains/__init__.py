"""Exact chain models of pointed mapping spaces over prime fields."""

from .chains import Chain, boundary, chain_complex, cross, induced, reduced_homology
from .exactlin import (ChainMapError, ComplexSegment, OutOfWindowError, PrimeField, SparseMatrix,
                       homology_rank, homology_ranks, kernel_dim, quasi_iso_check, rank)
from .models import (CosimplicialHom, DBicomplex, DiagSegment, GBicomplex, MappingModels,
                     check_composition_square, cosimplicial_hom, diagonal, induced_G, induced_G_chain_map,
                     stabilization, verify_pair)
from .simplicial import (BudgetExceeded, MapSpace, PointedFiniteSet, PointedMap, PointedSimplicialSet, Simplex,
                         Smash, characteristic_map, circle_triangle, cyclic_group, delta_plus, from_file,
                         function_space, h_sharp, mapspace_simplices, nerve, point, smash_power, sphere_min,
                         to_file)
from .surj import (FunctorMorphism, compose_morphisms, d_prime, d_second, enumerate_basis, evaluate, hom_module,
                   support_decompose)

__version__ = "0.1.0"
