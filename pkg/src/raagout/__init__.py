"""Right-angled Artin groups: word arithmetic, the domination order on vertices,
special subgroups, Laurence generators and the restriction/projection maps on
pure outer automorphisms."""

from .automorphisms import (
    Automorphism,
    GeneratorSpec,
    abelianization_matrix,
    as_automorphism,
    automorphism_of_word,
    compose,
    enumerate_graph_symmetries,
    enumerate_laurence_generators,
    generator_inventory,
    inner_automorphism,
    is_inner_bounded,
    parse_generator_word,
    verify_automorphism,
)
from .graph import Graph, GraphFormatError, UnknownVertexError, dimension, free_product_factors, load_graph, parse_graph
from .kernel import (
    assemble_RP,
    canonical_representative,
    check_KP_membership,
    kernel_f,
    leaf_like_vertices,
    leaf_transvections,
    preserving_representative,
    project_P,
    restrict_R,
    singleton_decomposition,
)
from .order import VertexClass, class_poset, equivalence_classes, gamma_zero, leq
from .special import godelle_ncz, joins
from .words import NormalForm, Word, enumerate_ball, equal, normal_form

__version__ = "0.1.0"
