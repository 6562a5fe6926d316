"""Exact decision procedures for separated Cohn-Leavitt path algebras.

Given a finite digraph with a partition of its edges and a distinguished
block subset, this package builds the associated commutative graph
semigroup and answers, with machine-checkable certificates: does the
algebra have invariant basis number, what are its K0 invariants, what is
its non-IBN type, and what happens on corner subalgebras.  All arithmetic
is exact; all searches are budgeted and certified.
"""

from .graphs import (
    Block,
    Edge,
    GraphError,
    SeparatedGraph,
    default_separation,
    graph_from_data,
    graph_to_data,
    parse_graph,
    serialize_graph,
    validate_graph,
)
from .ktheory import (
    CornerReport,
    IbnVerdict,
    K0Report,
    QSpanExcluded,
    QSpanMember,
    algebra_type,
    corner_report,
    ibn_of_algebra,
    k0_report,
)
from .linalg import (
    ElementOrder,
    Finite,
    Infinite,
    SNFResult,
    element_order_in_quotient,
    qspan_contains,
    qspan_solve,
    smith_normal_form,
    zspan_solve,
)
from .presentation import (
    Presentation,
    Relation,
    build_presentation,
    format_vector,
    full_unit_sum,
    parse_vector,
    presentation_to_data,
    relation_matrix,
    unit_sum,
)
from .semigroup import (
    Budget,
    ClassEnumeration,
    ClosureOutcome,
    EqOutcome,
    Equivalent,
    Inequivalent,
    NoTorsionUpTo,
    ProgeneratorReport,
    Step,
    Torsion,
    TorsionType,
    Unknown,
    applicable_steps,
    class_enumerate,
    closure_contains,
    equivalent,
    is_progenerator,
    isolated_support,
    replay_witness,
    torsion_type,
)
from .diagrams import (
    Component,
    ComponentLabeling,
    Diagram,
    DiagramEdge,
    Window,
    build_diagram,
    render_dot,
    render_svg,
    render_window,
    window_components,
)

__version__ = "0.1.0"
