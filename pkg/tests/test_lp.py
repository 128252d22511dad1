from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from tnpack.graph import Graph
from tnpack.instances import cycle, path, random_graph, random_tree
from tnpack.lp import LpConstraint, LpModel, LpVariable, build_rdp_ilp, build_tnp_dual, evaluate, write_lp
from tnpack.oracles import RomanFunction, roman_brute, tnp_brute

DATA = Path(__file__).parent / "data"


def roman_assignment(f: RomanFunction) -> dict:
    values = {}
    for v, label in enumerate(f.labels):
        values[f"x{v}"] = 1 if label == 1 else 0
        values[f"y{v}"] = 1 if label == 2 else 0
    return values


def packing_assignment(n: int, chosen) -> dict:
    return {f"a{v}": 1 if v in chosen else 0 for v in range(n)}


def integer_optimum(model: LpModel) -> Fraction:
    """Exhaustive 0/1 enumeration through the model evaluator."""
    names = [v.name for v in model.variables]
    best = None
    for point in product((0, 1), repeat=len(names)):
        objective, feasible = evaluate(model, dict(zip(names, point)))
        if not feasible:
            continue
        if best is None:
            best = objective
        elif model.sense == "min":
            best = min(best, objective)
        else:
            best = max(best, objective)
    assert best is not None
    return best


class TestModelShape:
    def test_primal_single_vertex(self):
        model = build_rdp_ilp(Graph(1))
        assert [v.name for v in model.variables] == ["x0", "y0"]
        assert model.objective == ((1, "x0"), (2, "y0"))
        assert model.constraints == (
            LpConstraint("cover0", ((1, "x0"), (1, "y0")), ">=", 1),
        )

    def test_primal_edge_constraints(self):
        model = build_rdp_ilp(path(2))
        assert model.constraints[0].terms == ((1, "x0"), (1, "y0"), (1, "y1"))
        assert model.constraints[1].terms == ((1, "x1"), (1, "y0"), (1, "y1"))

    def test_primal_counts(self):
        g = random_graph(9, 0.3, seed=2)
        model = build_rdp_ilp(g)
        assert len(model.variables) == 2 * g.n
        assert len(model.constraints) == g.n

    def test_dual_single_vertex(self):
        model = build_tnp_dual(Graph(1))
        assert model.sense == "max"
        assert model.variables == (LpVariable("a0", 0, 1, False),)
        assert model.constraints == (LpConstraint("pack0", ((1, "a0"),), "<=", 2),)

    def test_dual_triangle_sums_everyone(self):
        model = build_tnp_dual(cycle(3))
        for c in model.constraints:
            assert len(c.terms) == 3

    def test_bad_model_rejected(self):
        with pytest.raises(ValueError, match="undeclared"):
            LpModel(
                "min",
                (LpVariable("x0", 0, 1, True),),
                ((1, "x0"),),
                (LpConstraint("c", ((1, "zz"),), ">=", 1),),
            )


class TestWriteLp:
    def test_relaxed_primal_golden(self):
        text = write_lp(build_rdp_ilp(Graph(1), relax=True))
        assert text == (DATA / "k1_primal_relaxed.lp").read_text()

    def test_integer_dual_golden(self):
        text = write_lp(build_tnp_dual(path(3), integer=True))
        assert text == (DATA / "p3_dual_integer.lp").read_text()

    def test_write_is_stable(self):
        model = build_rdp_ilp(cycle(5))
        assert write_lp(model) == write_lp(model)


class TestEvaluate:
    def test_roman_function_is_primal_feasible(self):
        model = build_rdp_ilp(path(3))
        objective, feasible = evaluate(model, roman_assignment(RomanFunction((0, 2, 0))))
        assert feasible and objective == 2

    def test_packing_is_dual_feasible(self):
        model = build_tnp_dual(cycle(4), integer=True)
        objective, feasible = evaluate(model, packing_assignment(4, {0, 1}))
        assert feasible and objective == 2

    def test_all_zero_primal_infeasible(self):
        model = build_rdp_ilp(path(3))
        _, feasible = evaluate(model, roman_assignment(RomanFunction((0, 0, 0))))
        assert not feasible

    def test_missing_variable(self):
        model = build_rdp_ilp(Graph(1))
        with pytest.raises(ValueError, match="missing"):
            evaluate(model, {"x0": 1})

    def test_fractional_point_exact(self):
        model = build_rdp_ilp(Graph(1), relax=True)
        objective, feasible = evaluate(
            model, {"x0": Fraction(1, 2), "y0": Fraction(1, 2)}
        )
        assert feasible and objective == Fraction(3, 2)

    def test_integrality_enforced(self):
        model = build_rdp_ilp(Graph(1), relax=False)
        _, feasible = evaluate(model, {"x0": Fraction(1, 2), "y0": Fraction(1, 2)})
        assert not feasible


class TestModelOptima:
    def test_integer_dual_matches_brute(self):
        for i in range(8):
            n = 2 + i
            g = random_graph(n, 0.4, seed=4600 + i)
            model = build_tnp_dual(g, integer=True)
            assert integer_optimum(model) == tnp_brute(g).value, i

    def test_encoding_soundness(self, small_suite):
        for name, g in small_suite:
            if g.n > 10:
                continue
            primal = build_rdp_ilp(g)
            f = roman_brute(g).witness
            objective, feasible = evaluate(primal, roman_assignment(f))
            assert feasible and objective == f.weight, name
            dual = build_tnp_dual(g, integer=True)
            a = tnp_brute(g).witness
            objective, feasible = evaluate(dual, packing_assignment(g.n, a))
            assert feasible and objective == len(a), name

    def test_weak_duality_between_models(self):
        g = random_graph(7, 0.4, seed=123)
        primal = build_rdp_ilp(g)
        dual = build_tnp_dual(g, integer=True)
        f = roman_brute(g).witness
        a = tnp_brute(g).witness
        primal_obj, _ = evaluate(primal, roman_assignment(f))
        dual_obj, _ = evaluate(dual, packing_assignment(g.n, a))
        assert dual_obj <= primal_obj

    def test_tree_integrality(self):
        # on trees the integer optima of both programs coincide
        for i, n in enumerate((2, 4, 5, 6, 7)):
            g = random_tree(n, seed=4700 + i)
            primal_best = None
            primal = build_rdp_ilp(g)
            # enumerate label-2 sets; uncovered vertices take label 1
            for labels in product((0, 2), repeat=n):
                twos = {v for v in range(n) if labels[v] == 2}
                full = [0] * n
                for v in range(n):
                    if v in twos:
                        full[v] = 2
                    elif not any(u in twos for u in g.adj[v]):
                        full[v] = 1
                objective, feasible = evaluate(
                    primal, roman_assignment(RomanFunction(tuple(full)))
                )
                assert feasible
                if primal_best is None or objective < primal_best:
                    primal_best = objective
            dual_best = integer_optimum(build_tnp_dual(g, integer=True))
            assert primal_best == dual_best, (i, n)
