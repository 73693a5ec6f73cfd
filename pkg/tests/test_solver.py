import random
from fractions import Fraction

import pytest

from conftest import kw, lone, raymond, unpointed
from mipaug.errors import InfeasibleError, UnboundedError
from mipaug.exact import dot
from mipaug.generate import random_instance
from mipaug.instance import MixedVec, make_instance
from mipaug.linalg import Circuit
from mipaug.oracle import brute_force_optimum, enumerate_basic_integer_solutions, verify_test_set
from mipaug.solver import (
    OPTIMAL,
    INFEASIBLE,
    UNBOUNDED,
    augment,
    build_finite_test_set,
    circuit_decomposition,
    completion_procedure,
    find_initial_solution,
    improvement_step,
    slice_basic_points,
    solve_slice_lp,
    sp_set,
)
from mipaug.testsets import build_g_star, build_t_star

P = MixedVec.of


def test_slice_lp_examples():
    res = solve_slice_lp(lone(), (1,))
    assert res.status == OPTIMAL and res.point == P([1, 0], [1]) and res.value == 1
    assert solve_slice_lp(raymond(), (4,)).status == INFEASIBLE
    unb = make_instance([[1, -1, 2]], [1], [-1, 0, 0], 2)
    assert solve_slice_lp(unb, (0,)).status == UNBOUNDED


def test_improvement_step_examples():
    L = lone()
    t, x2 = improvement_step(L, P([0, 1], [2]), build_t_star(L))
    assert t.vec.entries() == (0, -2, -1)
    assert x2 == P([1, 0], [1]) and L.objective(x2) == 2
    assert (x2 - P([0, 1], [2])).entries() == (1, -1, -1)
    R = raymond(c=(-2, 0, 1))
    x = P([1, 0], [2])
    found = improvement_step(R, x, build_t_star(R))
    assert found is not None and R.objective(found[1]) < R.objective(x)
    assert improvement_step(L, P([1, 0], [1]), build_t_star(L)) is None


def test_augment_examples():
    R = raymond(c=(-2, 0, 1))
    x, trace = augment(R, P([0, 0], [3]), build_t_star(R))
    assert x == P([3, 0], [0]) and R.objective(x) == -6
    L = lone()
    x, trace = augment(L, P([3, 0], [0]), build_t_star(L))
    assert x == P([1, 0], [1]) and L.objective(x) == 2
    x, trace = augment(L, P([1, 0], [1]), build_t_star(L))
    assert trace.steps == [] and x == P([1, 0], [1])


def test_augment_errors():
    L = lone()
    with pytest.raises(InfeasibleError):
        augment(L, P([0, 0], [0]), build_t_star(L))
    unb = make_instance([[1, -1, 2]], [1], [-1, 0, 0], 2)
    with pytest.raises(UnboundedError):
        augment(unb, P([1, 0], [0]), build_t_star(unb))


def test_augment_repairs_non_basic_start():
    L = lone()
    x, trace = augment(L, P([4, 1], [0]), build_t_star(L))
    assert L.objective(x) == 2
    assert trace.steps[0].direction is None


def test_find_initial_solution():
    assert find_initial_solution(lone()) == P([3, 0], [0])
    assert find_initial_solution(raymond(c=(-2, 0, 1))) == P([3, 0], [0])
    neg = make_instance([[1, 1, 1]], [-1], [1, 1, 1], 2, box=((0,), (3,)))
    assert find_initial_solution(neg) is None
    with pytest.raises(ValueError):
        find_initial_solution(make_instance([[1, 1, 1]], [3], [1, 1, 1], 2))


def test_sp_set():
    L = lone()
    s = Circuit((1, 1))
    assert sp_set(L, P([0, -1], [1]), s) == [P([1, 1], [0])]
    assert sp_set(L, P([1, 0], [1]), s) == [P([-1, -1], [0])]
    assert sp_set(L, P([0, 0], [1]), s) == []


def test_completion_examples():
    L = lone()
    got = completion_procedure(L, P([0, 1], [2]), (-1,))
    assert [d.entries() for d in got] == [(0, -2, -1), (1, -1, -1)]
    R = raymond()
    got = completion_procedure(R, P([0, 0], [3]), (1,))
    assert {d.entries() for d in got} == {(-1, 0, 1), (0, -1, 1)}
    K = kw()
    x0 = P([2, 0], [0])
    got = completion_procedure(K, x0, (1,))
    assert {d.entries() for d in got} == {(-1, 0, 1), (-2, 2, 1)}
    with pytest.raises(ValueError, match="not basic"):
        completion_procedure(make_instance([[1, 1, 0, 1]], [3], [0] * 4, 3), P([1, 1, 1], [0]), (1,))


def test_completion_reaches_every_basic_point_of_the_slice():
    rng = random.Random(5)
    for _ in range(80):
        inst = random_instance(rng)
        for x in enumerate_basic_integer_solutions(inst)[:4]:
            for g in build_g_star(inst)[:4]:
                z = tuple(a + b for a, b in zip(x.integral, g))
                dirs = completion_procedure(inst, x, g)
                for d in dirs:
                    assert d.integral == tuple(g)
                    assert not any(dot(r, d.entries()) for r in inst.A)
                targets = {p - x for p in slice_basic_points(inst, z, feasible_only=False)}
                assert targets <= set(dirs)


def test_finite_test_set_examples():
    R = raymond()
    F = {d.entries() for d in build_finite_test_set(R)}
    for v in [(-1, 0, 1), (1, 0, -1), (0, -1, 1), (0, 1, -1), (1, -1, 0), (-1, 1, 0)]:
        assert v in F
    F = {d.entries() for d in build_finite_test_set(lone())}
    assert (1, -1, -1) in F and (-1, 1, 1) in F
    single = make_instance([[1, 1, 1]], [0], [0, 0, 1], 2, box=((0,), (2,)))
    assert {(1, -1, 0), (-1, 1, 0)} <= {d.entries() for d in build_finite_test_set(single)}


def test_finite_test_set_property_random():
    rng = random.Random(9)
    insts = [raymond(), kw(), lone(), unpointed()] + [random_instance(rng) for _ in range(200)]
    for inst in insts:
        rep = verify_test_set(inst, build_finite_test_set(inst))
        assert rep.ok, rep.failures


def test_circuit_decomposition_of_repair():
    L = lone()
    x = P([0, 1], [2])
    t, x2 = improvement_step(L, x, build_t_star(L))
    repair = x2 - (x + t.vec)
    assert repair.integral == (0,)
    parts = circuit_decomposition(L, repair.real)
    total = [sum(l * s[i] for l, s in parts) for i in range(L.nR)]
    assert tuple(total) == repair.real
    assert parts == [(Fraction(1), (1, 1))]
