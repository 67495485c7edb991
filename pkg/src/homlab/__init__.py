"""homlab: graph and structure homomorphisms, structural sparsity and restricted dualities."""

from ._kernels import BACKEND
from .approximation import ApproxResult, QuotientTrace, is_t_approximation, quotient_approximation, theta_oracle
from .canonical import are_isomorphic, canonical_code, canonical_form
from .duality import (DualityInstance, connectivity_check, dual_construct, ghrv_instance, minimize_family,
                      product_dual, theta_product_bound, verify_duality)
from .errors import (ArgumentError, BudgetExceeded, CapacityError, ConstructionError, HomlabError, ParseError,
                     PreconditionError, SignatureMismatch)
from .fileio import format_structure, parse_graph, parse_text, resolve, write_structure
from .generators import (GeneratorSpec, all_digraphs, all_graphs, enumerate_sample, odd_girth_criterion_experiment,
                         random_high_girth, subdivision_closure)
from .hom import (CoreResult, HomSearchConfig, chromatic_number, clique_number, core, embedding,
                  enumerate_homomorphisms, hom_count, hom_equivalent, hom_exists, hom_projections, is_core)
from .named import by_name
from .ops import (categorical_product, disjoint_union, gaifman, identify_vertices, incidence, induced_substructure,
                  pre_set, subdivide, subdivide_general)
from .samples import ClassSample
from .sparsity import (INFINITY, DepthParam, TdColoring, chi_t_exact, dvorak_threshold, girth, grade,
                       low_td_coloring, odd_girth, shallow_top_minors, tree_depth)
from .structures import Block, Digraph, Graph, Homomorphism, Signature, Structure
from .verdict import Verdict

enumerate = enumerate_sample  # noqa: A001

__version__ = "0.1.0"
