"""Computing with finite p-algebras: pseudocomplemented bounded distributive
lattices, their poset duals, embeddings into powers of the three-element
chain, and first-order checks over them."""
from .algebra import (
    MAX_ATOMS,
    MAX_SIZE,
    FinitePAlgebra,
    Homomorphism,
    Report,
    closure,
    generated_subalgebra,
    heyting_implication,
    make_bnalg,
    power,
    powerset_algebra,
    product,
    stacked_algebra,
    subalgebra,
    verify_p_algebra,
)
from .congruence import (
    Congruence,
    CongruenceLattice,
    all_congruences,
    is_subdirectly_irreducible,
    principal_congruence,
)
from .duality import (
    PPMorphism,
    UpsetAlgebra,
    check_pp_morphism,
    dual_homomorphism,
    duality_roundtrip,
    join_irreducibles,
    upset_algebra,
    upsets,
)
from .encodings import (
    B1,
    BooleanPair,
    Graph,
    boolean_pair_subuniverse,
    chi,
    enumerate_boolean_pairs,
    enumerate_graphs,
    graph_encode,
    graph_isomorphism,
    graph_to_poset,
    make_N,
    recover_graph,
    verify_definability,
)
from .errors import (
    CapExceeded,
    EvaluationError,
    NotALattice,
    NotAnEncoding,
    NotBoolean,
    OutOfFragment,
    PAlgError,
    ParseError,
)
from .logic import (
    Evaluator,
    evaluate,
    fo_recover_graph,
    library_formulas,
    parse_formula,
    parse_term,
    translate_graph_sentence,
)
from .poset import FinitePoset, enumerate_posets, poset_isomorphism
from .report import CheckReport
from .search import find_embedding, is_isomorphic

__version__ = "0.1.0"
