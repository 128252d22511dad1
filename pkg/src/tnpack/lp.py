"""Integer/linear programming export for the covering and packing programs.

The minimization program assigns each vertex an indicator for label 1 and one
for label 2 and covers every closed neighbourhood; its LP dual caps every
closed neighbourhood at 2, and restoring integrality there yields the packing
problem. Models are exported as CPLEX-LP text; no solver is embedded, the
evaluator below suffices to check feasibility and compare enumerated optima.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph


@dataclass(frozen=True)
class LpVariable:
    name: str
    lower: int
    upper: int
    integer: bool


@dataclass(frozen=True)
class LpConstraint:
    name: str
    terms: tuple[tuple[int, str], ...]
    relation: str  # ">=" or "<="
    rhs: int


@dataclass(frozen=True)
class LpModel:
    sense: str  # "min" or "max"
    variables: tuple[LpVariable, ...]
    objective: tuple[tuple[int, str], ...]
    constraints: tuple[LpConstraint, ...]

    def __post_init__(self):
        names = [v.name for v in self.variables]
        declared = set(names)
        if len(declared) != len(names):
            raise ValueError("duplicate variable names")
        cnames = [c.name for c in self.constraints]
        if len(set(cnames)) != len(cnames):
            raise ValueError("duplicate constraint names")
        for coef_list in (self.objective, *(c.terms for c in self.constraints)):
            for _, name in coef_list:
                if name not in declared:
                    raise ValueError(f"constraint references undeclared variable {name}")


def build_rdp_ilp(g: Graph, relax: bool = False) -> LpModel:
    """Covering program: minimize sum(x) + 2*sum(y) subject to
    x_v + sum(y_u for u in N[v]) >= 1 per vertex; binary, or [0,1] if relaxed."""
    variables = [LpVariable(f"x{v}", 0, 1, not relax) for v in range(g.n)]
    variables += [LpVariable(f"y{v}", 0, 1, not relax) for v in range(g.n)]
    objective = [(1, f"x{v}") for v in range(g.n)] + [(2, f"y{v}") for v in range(g.n)]
    constraints = []
    for v in range(g.n):
        terms = [(1, f"x{v}")] + [(1, f"y{u}") for u in sorted((v, *g.adj[v]))]
        constraints.append(LpConstraint(f"cover{v}", tuple(terms), ">=", 1))
    return LpModel("min", tuple(variables), tuple(objective), tuple(constraints))


def build_tnp_dual(g: Graph, integer: bool = False) -> LpModel:
    """Packing program: maximize sum(a) subject to
    sum(a_u for u in N[v]) <= 2 per vertex; a_v in [0,1], binary if integer."""
    variables = [LpVariable(f"a{v}", 0, 1, integer) for v in range(g.n)]
    objective = [(1, f"a{v}") for v in range(g.n)]
    constraints = []
    for v in range(g.n):
        terms = [(1, f"a{u}") for u in sorted((v, *g.adj[v]))]
        constraints.append(LpConstraint(f"pack{v}", tuple(terms), "<=", 2))
    return LpModel("max", tuple(variables), tuple(objective), tuple(constraints))


def _format_terms(terms) -> str:
    parts = []
    for coef, name in terms:
        if coef == 1:
            parts.append(name)
        else:
            parts.append(f"{coef} {name}")
    return " + ".join(parts)


def write_lp(model: LpModel) -> str:
    """CPLEX-LP text; deterministic for a given model."""
    lines = ["Minimize" if model.sense == "min" else "Maximize"]
    lines.append(f" obj: {_format_terms(model.objective)}")
    lines.append("Subject To")
    for c in model.constraints:
        lines.append(f" {c.name}: {_format_terms(c.terms)} {c.relation} {c.rhs}")
    bounds = [v for v in model.variables if not v.integer]
    if bounds:
        lines.append("Bounds")
        lines.extend(f" {v.lower} <= {v.name} <= {v.upper}" for v in bounds)
    integers = [v for v in model.variables if v.integer]
    if integers:
        lines.append("Binary")
        lines.extend(f" {v.name}" for v in integers)
    lines.append("End")
    return "\n".join(lines) + "\n"


def evaluate(model: LpModel, assignment) -> tuple[Fraction, bool]:
    """Exact objective value and feasibility of a full assignment.

    Values may be ints, Fractions, or floats (converted exactly); every
    declared variable must be present.
    """
    values = {}
    for v in model.variables:
        if v.name not in assignment:
            raise ValueError(f"assignment is missing variable {v.name}")
        values[v.name] = Fraction(assignment[v.name])
    feasible = True
    for v in model.variables:
        x = values[v.name]
        if x < v.lower or x > v.upper or (v.integer and x.denominator != 1):
            feasible = False
    for c in model.constraints:
        total = sum(coef * values[name] for coef, name in c.terms)
        if c.relation == ">=":
            if total < c.rhs:
                feasible = False
        elif total > c.rhs:
            feasible = False
    objective = sum(coef * values[name] for coef, name in model.objective)
    return objective, feasible
