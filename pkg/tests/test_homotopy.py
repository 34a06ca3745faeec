import random

import pytest
from hypothesis import given, strategies as st

from oracles import lift_by_enumeration
from semicoarse import (
    InputError,
    PreconditionError,
    coarse_completion,
    complete_space,
    cycle_space,
    disjoint_union,
    new_space,
)
from semicoarse.homotopy import (
    LEFT,
    RIGHT,
    Block,
    Cube,
    CubeMap,
    Homotopy,
    block_move,
    block_move_chain,
    clamp,
    coarse_triviality_check,
    cube_space,
    homotopic_search,
    homotopy_witness,
    inverse_path,
    is_unidirectional,
    lift_path,
    one_step_related,
    one_step_witness,
    pi1_cyclic,
    plate_move,
    reachable_maps,
    reduction_steps,
    standard_loop,
    star,
    unidirectional_reduce,
    verify_homotopy,
    winding,
)

C4 = cycle_space(4)


def path(vals, X=C4):
    return CubeMap.path(X, vals)


@st.composite
def c4_loops(draw, max_side=6):
    k = draw(st.integers(1, max_side))
    steps = draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=k - 1, max_size=k - 1))
    vals = [0]
    for s in steps:
        vals.append((vals[-1] + s) % 4)
    if vals[-1] == 2:
        vals.append(1)
    vals.append(0)
    return path(vals)


# -- cubes -------------------------------------------------------------------

def test_cube_space_examples():
    assert len(cube_space(1, 1).roof) == 4
    assert len(cube_space(1, 4).roof) == 13
    assert len(cube_space(2, 1).roof) == 16
    assert len(cube_space(3, 2)) == 27


def test_cube_errors():
    with pytest.raises(InputError):
        Cube(0, 2)
    with pytest.raises(InputError):
        Cube(1, -1)


def test_boundary_and_open_box():
    cube = Cube(2, 2)
    assert len(cube.boundary()) == 8 and (1, 1) not in cube.boundary()
    # the open face x_2 = 0 without its corners is removed
    assert cube.boundary() - cube.open_box() == {(1, 0)}
    assert Cube(1, 3).boundary() == {(0,), (3,)}


def test_cube_map_rejects_foreign_values():
    with pytest.raises(InputError):
        path([0, 7])


# -- clamp, star, inverse ------------------------------------------------------

def test_clamp_examples():
    c = standard_loop(4)
    assert clamp(c, 4) == c
    k = CubeMap.constant(Cube(2, 1), C4, 3)
    assert clamp(k, 3) == CubeMap.constant(Cube(2, 3), C4, 3)
    assert clamp(c, 6).values == (0, 1, 2, 3, 0, 0, 0)
    with pytest.raises(InputError):
        clamp(c, 2)


def test_star_examples():
    c = standard_loop(4)
    tail = CubeMap.constant(Cube(1, 2), C4, 0)
    assert star(c, tail).values == c.values + (0, 0)
    cc = star(c, c)
    assert cc.cube.m == 8 and winding(cc) == 2
    with pytest.raises(PreconditionError):
        star(path([0, 1]), path([2, 3]))


def test_star_two_dimensional_gluing():
    f = CubeMap.from_function(Cube(2, 2), C4, lambda p: 0)
    g = CubeMap.from_function(Cube(2, 1), C4, lambda p: p[0] % 4)
    h = star(f, g)
    assert h.cube == Cube(2, 3) and h.is_bornologous()
    assert h[(3, 2)] == g[(1, 1)]


def test_inverse_path_examples():
    c = standard_loop(4)
    assert inverse_path(CubeMap.constant(Cube(1, 3), C4, 1)) == CubeMap.constant(Cube(1, 3), C4, 1)
    assert winding(inverse_path(c)) == -1
    assert inverse_path(inverse_path(c)) == c
    with pytest.raises(InputError):
        inverse_path(CubeMap.constant(Cube(2, 1), C4, 0))


# -- one-step relation and verification ------------------------------------------

def test_one_step_examples():
    c = standard_loop(4)
    assert one_step_related(c, c)
    ka = CubeMap.constant(Cube(1, 2), C4, 0)
    for b in range(4):
        kb = CubeMap.constant(Cube(1, 2), C4, b)
        assert one_step_related(ka, kb) == ((0, b) in C4.roof)
    k0 = CubeMap.constant(c.cube, C4, 0)
    assert not one_step_related(c, k0)
    assert one_step_witness(c, k0)[0] == "pair"


def test_one_step_checks_diagonal_pairs():
    # slices agree pointwise up to one step but a diagonal pair fails
    f = path([0, 1, 2], cycle_space(5))
    g = path([1, 2, 3], cycle_space(5))
    assert all((a, b) in cycle_space(5).roof for a, b in zip(f.values, g.values))
    w = one_step_witness(f, g)
    assert w == ("pair", (0,), (1,))


def test_one_step_fixed_points():
    f = path([0, 1, 1])
    g = path([0, 1, 2])
    assert one_step_related(f, g)
    assert one_step_witness(f, g, fixed=[(2,)]) == ("fixed", (2,))


@given(c4_loops(), c4_loops())
def test_one_step_symmetric(f, g):
    if f.cube == g.cube:
        assert one_step_related(f, g) == one_step_related(g, f)
    assert one_step_related(f, f)


def test_verify_homotopy_examples():
    c = standard_loop(4)
    assert verify_homotopy(Homotopy((c,)))
    k0 = CubeMap.constant(c.cube, C4, 0)
    h = Homotopy((c, k0))
    assert not verify_homotopy(h)
    assert homotopy_witness(h)[0] == 0
    with pytest.raises(InputError):
        verify_homotopy(Homotopy((c, path([0, 1]))))


def test_verify_homotopy_detects_non_bornologous_slice():
    bad = CubeMap(Cube(1, 1), C4, (0, 2))
    w = homotopy_witness(Homotopy((bad,)))
    assert w[0] == 0 and w[1][0] == "not-bornologous"


# -- search ----------------------------------------------------------------------------

def test_search_identical_maps():
    c = standard_loop(4)
    res = homotopic_search(c, c, "boundary")
    assert res.status == "certificate" and len(res.homotopy.slices) == 1


def test_search_constants_in_connected_target():
    f = CubeMap.constant(Cube(1, 2), C4, 0)
    g = CubeMap.constant(Cube(1, 2), C4, 2)
    res = homotopic_search(f, g)
    assert res.status == "certificate" and verify_homotopy(res.homotopy)
    assert res.homotopy.start == f and res.homotopy.end == g


@pytest.mark.parametrize("m", [4, 8])
def test_search_loop_vs_constant_distinct(m):
    c = clamp(standard_loop(4), m)
    k = CubeMap.constant(c.cube, C4, 0)
    res = homotopic_search(c, k, "boundary", revalidate=False)
    assert res.status == "distinct" and res.sides == (m,)


def test_search_revalidates_at_double_side():
    c = standard_loop(4)
    res = homotopic_search(c, CubeMap.constant(c.cube, C4, 0), "boundary")
    assert res.status == "distinct" and res.sides == (4, 8)


def test_search_budget():
    f = CubeMap.constant(Cube(1, 4), C4, 0)
    g = path([0, 1, 2, 1, 0])
    assert homotopic_search(f, g, "boundary", node_budget=2).status == "exhausted"
    with pytest.raises(InputError):
        homotopic_search(f, g, node_budget=0)


def test_search_preconditions():
    f = path([0, 1, 0])
    with pytest.raises(PreconditionError):
        homotopic_search(f, path([0, 1, 1]), "boundary")
    with pytest.raises(PreconditionError):
        homotopic_search(CubeMap(Cube(1, 1), C4, (0, 2)), path([0, 1]))


def test_search_on_vertex_maps():
    from semicoarse import VertexMap
    f = VertexMap(C4, C4, (0, 1, 2, 3))
    g = VertexMap(C4, C4, (0, 0, 0, 0))
    res = homotopic_search(f, g)
    # the identity of C4 is isolated under one-step moves
    assert res.status == "distinct"
    K = complete_space(range(4))
    res = homotopic_search(VertexMap(K, C4, (0, 1, 0, 1)), VertexMap(K, C4, (2, 2, 2, 2)))
    assert res.status == "certificate" and verify_homotopy(res.homotopy)


@given(c4_loops(max_side=5), c4_loops(max_side=5))
def test_search_is_sound_and_preserves_winding(f, g):
    m = max(f.cube.m, g.cube.m)
    f, g = clamp(f, m), clamp(g, m)
    res = homotopic_search(f, g, "boundary", revalidate=False)
    assert res.status in ("certificate", "distinct")
    if res.status == "certificate":
        assert verify_homotopy(res.homotopy)
        assert winding(res.homotopy.start) == winding(res.homotopy.end)
        for s in res.homotopy.slices:
            assert winding(s) == winding(f)


def test_reachable_maps_side_8():
    comp = reachable_maps(CubeMap.constant(Cube(1, 8), C4, 0), "boundary")
    assert all(winding(path(v)) == 0 for v in comp)
    assert (0, 1, 2, 3, 0, 0, 0, 0, 0) not in comp


def test_group_law_smoke():
    rng = random.Random(11)
    for _ in range(5):
        loops = []
        for _ in range(3):
            vals = [0]
            for _ in range(rng.randint(1, 3)):
                vals.append((vals[-1] + rng.choice([-1, 0, 1])) % 4)
            if vals[-1] == 2:
                vals.append(1)
            vals.append(0)
            loops.append(path(vals))
        a, b, c = loops
        left, right = star(star(a, b), c), star(a, star(b, c))
        assert left == right or homotopic_search(left, right, "boundary").status == "certificate"
        ainv = star(a, inverse_path(a))
        res = homotopic_search(ainv, CubeMap.constant(ainv.cube, C4, 0), "boundary")
        assert res.status == "certificate" and verify_homotopy(res.homotopy)


# -- displacement moves ---------------------------------------------------------------------

def test_plate_move_examples():
    f = path([0, 1, 0])
    assert plate_move(f, Block(((1, 1),), 0, RIGHT)).values == (0, 1, 1)
    g = path([0, 1, 1])
    assert plate_move(g, Block(((1, 1),), 0, RIGHT)) == g
    with pytest.raises(PreconditionError) as exc:
        plate_move(path([0, 1, 2]), Block(((0, 0),), 0, RIGHT))
    assert exc.value.witness == ((0,), (2,))


def test_plate_move_off_cube():
    with pytest.raises(PreconditionError) as exc:
        plate_move(path([0, 1]), Block(((1, 1),), 0, RIGHT))
    assert exc.value.witness == ((1,), None)
    with pytest.raises(InputError):
        plate_move(path([0, 1]), Block(((0, 1),), 0, RIGHT))


def test_block_move_examples():
    f = path([0, 0, 1, 2, 2])
    b = Block(((2, 3),), 0, LEFT)
    assert block_move(f, b, 0) == f
    one = block_move(f, b, 1)
    assert one.values == (0, 1, 2, 2, 2)
    chain = block_move_chain(f, b, 1)
    assert chain[-1] == one and verify_homotopy(Homotopy(tuple(chain)))


def test_block_move_inverse_cancellation_pattern():
    # f' = (0, 1) followed by its inverse; moving the last block two steps left
    # erases the excursion and leaves the shorter loop.
    fp = path([0, 1])
    loop = star(fp, inverse_path(fp))
    out = block_move(clamp(loop, 3), Block(((2, 3),), 0, LEFT), 1)
    assert out.values == (0, 0, 0, 0)
    chain = block_move_chain(clamp(loop, 3), Block(((2, 3),), 0, LEFT), 1)
    assert verify_homotopy(Homotopy(tuple(chain), Cube(1, 3).boundary()))


def test_block_move_two_dimensional():
    f = CubeMap.from_function(Cube(2, 3), C4, lambda p: 1 if p[0] >= 2 else 0)
    b = Block(((2, 3), (0, 3)), 0, LEFT)
    chain = block_move_chain(f, b, 2)
    assert verify_homotopy(Homotopy(tuple(chain)))
    assert chain[-1].is_bornologous()


def test_block_move_reports_witness():
    f = path([0, 1, 2, 3])
    with pytest.raises(PreconditionError) as exc:
        block_move(f, Block(((2, 3),), 0, LEFT), 1)
    w = exc.value.witness
    assert set(w) == {"step", "plate", "alpha", "beta", "map"}


# -- cycle graphs --------------------------------------------------------------------------

def test_winding_examples():
    assert winding(CubeMap.constant(Cube(1, 3), C4, 0)) == 0
    assert winding(standard_loop(4)) == 1
    c = standard_loop(4)
    assert winding(star(c, inverse_path(c))) == 0


def test_lift_path_preconditions():
    with pytest.raises(InputError):
        lift_path(path([1, 2, 1]))
    with pytest.raises(InputError):
        lift_path(CubeMap.path(cycle_space(4, 2), [0, 1]), 2)
    C3 = cycle_space(3)
    with pytest.raises(InputError):
        lift_path(CubeMap.path(C3, [0, 1, 2, 0]))
    assert lift_path(CubeMap.path(C3, [0, 1, 2, 0]), unsafe=True).winding == 1
    with pytest.raises(InputError):
        lift_path(CubeMap.path(new_space(["a", "b"], [("a", "b")]), ["a", "b"]))


def test_lift_with_jumps():
    X = cycle_space(12, 3)
    f = CubeMap.path(X, [0, 3, 6, 9, 0])
    cert = lift_path(f, 3)
    assert cert.lift == (0, 3, 6, 9, 12) and cert.winding == 1


@given(st.lists(st.sampled_from([-1, 0, 1]), max_size=20), st.integers(4, 9))
def test_lift_matches_enumeration(steps, n):
    vals = [0]
    for s in steps:
        vals.append((vals[-1] + s) % n)
    cert = lift_path(CubeMap.path(cycle_space(n), vals))
    assert list(cert.lift) == lift_by_enumeration(vals, n)
    assert all(x % n == v for x, v in zip(cert.lift, vals))
    if vals[-1] == 0:
        assert cert.winding * n == cert.lift[-1] - cert.lift[0]
    else:
        assert cert.winding is None


@given(c4_loops(), c4_loops())
def test_winding_additive(f, g):
    assert winding(star(f, g)) == winding(f) + winding(g)


def test_pi1_cyclic_table():
    for n in range(4, 13):
        assert pi1_cyclic(n, 1) == "Z"
    for n in (1, 2, 3):
        assert pi1_cyclic(n, 1) == "trivial"
    assert pi1_cyclic(12, 3) == "Z" and pi1_cyclic(9, 3) == "trivial"
    assert pi1_cyclic(8, 2) == "Z" and pi1_cyclic(6, 2) == "trivial"


def test_unidirectional_examples():
    u = path([0, 1, 2, 3, 0])
    assert unidirectional_reduce(u) == u
    assert unidirectional_reduce(path([0, 1, 0])).values == (0,)


@given(c4_loops(max_side=8))
def test_unidirectional_reduce_properties(f):
    out = unidirectional_reduce(f)
    assert is_unidirectional(out)
    assert out.is_bornologous()
    assert winding(out) == winding(f)
    for before, over, after in reduction_steps(f):
        assert one_step_related(before, over, before.cube.boundary())
        # the overwritten path is the shorter one with a single entry repeated
        a = after.values
        assert any(over.values == a[:j + 1] + a[j:] for j in range(len(a)))


# -- coarse triviality ------------------------------------------------------------------------

def test_coarse_triviality_examples():
    assert coarse_triviality_check(new_space(["p"]), samples=5).ok
    K4 = coarse_completion(C4)
    rep = coarse_triviality_check(K4, samples=30, max_side=6)
    assert rep.ok and rep.certified == 30
    two = coarse_completion(disjoint_union([C4, cycle_space(5)]))
    assert coarse_triviality_check(two, samples=20).ok
    with pytest.raises(PreconditionError):
        coarse_triviality_check(C4)
