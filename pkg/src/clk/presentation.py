"""Commutative-semigroup presentations attached to separated graphs.

The generator list is the vertex list followed by the non-distinguished
block names, both in declaration order.  Each block contributes one
relation between formal sums of generators:

* distinguished block X with source v and edges e_1..e_k:
      v  =  t(e_1) + ... + t(e_k)
* ordinary block X:
      v  =  X + t(e_1) + ... + t(e_k)

Elements of the free commutative monoid are dense count vectors over the
generator list ("multivecs"), stored as plain int tuples; the semigroup
itself consists of the nonzero vectors modulo the rewriting closure of the
relations (see :mod:`clk.semigroup`).  Subtracting each relation's sides
gives an integer matrix whose cokernel is the K0 group of the associated
path algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import GraphError, SeparatedGraph

Vec = tuple[int, ...]


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(k: int, v: Vec) -> Vec:
    return tuple(k * a for a in v)


def vec_leq(u: Vec, v: Vec) -> bool:
    """Componentwise u <= v."""
    return all(a <= b for a, b in zip(u, v))


def is_zero(v: Vec) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class Relation:
    """One block relation, kept as a (lhs, rhs) pair of nonnegative vectors.

    The rewriting engine needs the two-sided form for applicability tests;
    linear algebra only needs the signed difference ``row``.
    """

    name: str
    lhs: Vec
    rhs: Vec
    in_lambda: bool

    @property
    def row(self) -> Vec:
        return vec_sub(self.lhs, self.rhs)


@dataclass(frozen=True)
class Presentation:
    graph: SeparatedGraph
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]

    @property
    def dim(self) -> int:
        return len(self.generators)

    def index(self, generator: str) -> int:
        try:
            return self.generators.index(generator)
        except ValueError:
            raise GraphError(f"unknown generator {generator!r}") from None

    def unit(self, generator: str) -> Vec:
        i = self.index(generator)
        return tuple(1 if j == i else 0 for j in range(self.dim))


def build_presentation(g: SeparatedGraph) -> Presentation:
    """Generators and block relations of ``g``, in declaration order."""
    lam = g.lambda_set
    block_gens = tuple(b.name for b in g.partition if b.name not in lam)
    for name in block_gens:
        if name in g.vertices:
            raise GraphError(
                f"block {name!r} outside lambda collides with a vertex name; "
                "rename one of them"
            )
    generators = g.vertices + block_gens
    index = {name: i for i, name in enumerate(generators)}
    dim = len(generators)

    relations = []
    for block in g.partition:
        src = g.block_source(block)
        lhs = [0] * dim
        lhs[index[src]] = 1
        rhs = [0] * dim
        for edge_name in block.edges:
            rhs[index[g.edge(edge_name).tgt]] += 1
        in_lambda = block.name in lam
        if not in_lambda:
            rhs[index[block.name]] = 1
        relations.append(Relation(block.name, tuple(lhs), tuple(rhs), in_lambda))
    return Presentation(g, generators, tuple(relations))


def relation_matrix(p: Presentation) -> tuple[Vec, ...]:
    """One signed row (lhs - rhs) per relation, in relation order."""
    return tuple(rel.row for rel in p.relations)


def unit_sum(p: Presentation, vertices) -> Vec:
    """The 0/1 vector with a single count on each vertex of ``vertices``.

    Passing every vertex yields the distinguished element representing the
    rank-one free module class.
    """
    vertices = tuple(vertices)
    if not vertices:
        raise GraphError("vertex subset must be nonempty")
    counts = [0] * p.dim
    for v in vertices:
        if v not in p.graph.vertices:
            raise GraphError(f"unknown vertex {v!r}")
        i = p.index(v)
        if counts[i]:
            raise GraphError(f"duplicate vertex {v!r}")
        counts[i] = 1
    return tuple(counts)


def full_unit_sum(p: Presentation) -> Vec:
    return unit_sum(p, p.graph.vertices)


def parse_vector(p: Presentation, text: str, signed: bool = False) -> Vec:
    """Comma-separated counts in generator order.

    Semigroup elements are nonnegative; pass ``signed=True`` for group
    elements (arbitrary integers).
    """
    parts = [s.strip() for s in text.split(",")]
    try:
        counts = tuple(int(s) for s in parts)
    except ValueError:
        raise GraphError(f"malformed vector {text!r}") from None
    if len(counts) != p.dim:
        raise GraphError(
            f"vector {text!r} has {len(counts)} entries, expected {p.dim} "
            f"(generators: {', '.join(p.generators)})"
        )
    if not signed and any(c < 0 for c in counts):
        raise GraphError(f"vector {text!r} has negative counts")
    return counts


def format_vector(p: Presentation, v: Vec) -> str:
    """Render a count vector as a formal sum, e.g. ``v + 2·w``."""
    terms = []
    for name, count in zip(p.generators, v):
        if count == 1:
            terms.append(name)
        elif count:
            terms.append(f"{count}·{name}")
    return " + ".join(terms) if terms else "0"


def presentation_to_data(p: Presentation) -> dict:
    return {
        "generators": list(p.generators),
        "relations": [
            {
                "name": rel.name,
                "lhs": list(rel.lhs),
                "rhs": list(rel.rhs),
                "in_lambda": rel.in_lambda,
            }
            for rel in p.relations
        ],
    }
