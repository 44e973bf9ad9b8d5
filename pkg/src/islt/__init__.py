"""Decision procedure and proof workbench for intuitionistic Strong Löb logic."""

from .calculus import (
    Derivation,
    RuleId,
    SchemaError,
    Violation,
    check,
    expand,
    height,
    node,
    premises_of,
    uses_cut,
)
from .cut import CutError, CutInstance, cut_admissible, eliminate
from .formula import (
    And,
    Bot,
    Box,
    Formula,
    Imp,
    Or,
    ParseError,
    Var,
    parse_formula,
    print_formula,
    weight,
)
from .hilbert import AxiomId, HilbertNode, axiom_instance, bridge_check, check_hilbert
from .measure import shortlex_less, theta
from .search import BudgetExceeded, Proved, Unprovable, decide, prove
from .semantics import (
    ENUMERATION_BOUND,
    KripkeModel,
    enumerate_models,
    find_countermodel,
    forces,
    valid,
    validate_model,
)
from .sequent import Multiset, Sequent, parse_sequent, partition_boxed, print_sequent, sequent
from .structural import (
    TransformError,
    box_imp_lir,
    contract,
    id_general,
    imp_imp_lil,
    imp_imp_lir,
    imp_left,
    invert,
    unbox_left,
    weaken,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
