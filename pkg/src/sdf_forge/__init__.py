"""sdf-forge: square-difference-free sets, searches, and coloring certificates."""

from .construct import (
    BASE_205_MODULUS,
    BASE_205_SET,
    BRUTE_FORCE_CHECKED,
    GUARANTEED_BY_LEMMA,
    ConstructionCertificate,
    LiftParams,
    base_certificate,
    bertrand_set,
    exponent,
    iterate,
    lift,
    paper_base,
    read_certificate,
    write_certificate,
)
from .residue import (
    Modulus,
    SquareTable,
    bertrand_prime,
    factorize,
    is_perfect_square,
    is_squarefree,
    primes_upto,
    squares_mod,
)
from .search import (
    CapacityError,
    RankRow,
    RankTable,
    SearchResult,
    SquareCayleyGraph,
    build_graph,
    exact_mis,
    greedy_independent,
    rank_moduli,
)
from .verify import (
    IntegerSet,
    ResidueSet,
    Violation,
    ViolationError,
    check_sdf,
    check_sdf_mod,
    mod_implies_integer,
    read_set_file,
    write_set_file,
)

__version__ = "0.1.0"
