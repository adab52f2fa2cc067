import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import polyoracle as po
from fwlab.errors import (
    DivisionByZero,
    InternalError,
    InvalidPolynomial,
    NotPrime,
    NotPrimitive,
    SmallDegree,
    ZeroInput,
)
from fwlab.field import (
    Field,
    build_subsets,
    extension_field,
    find_primitive_poly,
    find_v,
    load_registry,
    make_field,
    span,
    uv_decompose,
)

ALPHA = 2  # element int of alpha when p = 2


def test_make_field_default_poly_2_6(f23):
    f = make_field(2, 3, (1, 1, 0, 0, 0, 0, 1))
    assert f.q == 64 and f.m == 6 and f.alpha_order == 63
    assert f23.poly == (1, 1, 0, 0, 0, 0, 1)


def test_reducible_poly_rejected():
    with pytest.raises(NotPrimitive):
        make_field(2, 3, (0, 0, 0, 0, 0, 0, 1))


def test_irreducible_but_not_primitive_rejected():
    # x^6 + x^4 + x^2 + x + 1 is irreducible over F_2; its root has order 21
    f = [1, 1, 1, 0, 1, 0, 1]
    assert po.powmod([0, 1, 0, 0, 0, 0], 21, f, 2) == [1, 0, 0, 0, 0, 0]
    with pytest.raises(NotPrimitive):
        make_field(2, 3, f)


def test_composite_p():
    with pytest.raises(NotPrime):
        make_field(4, 3)


def test_bad_degree():
    with pytest.raises(InvalidPolynomial):
        make_field(2, 3, (1, 1, 0, 1))


def test_small_t_needs_override():
    with pytest.raises(SmallDegree):
        make_field(2, 2)
    with pytest.warns(UserWarning, match="t > 2"):
        f = make_field(2, 2, allow_small_t=True)
    assert f.q == 16


def test_searched_poly_p3():
    # first primitive sextic over F_3 by exhaustive order computation
    assert find_primitive_poly(3, 6) == (2, 1, 0, 0, 0, 0, 1)
    f = [2, 1, 0, 0, 0, 0, 1]
    x = [0, 1, 0, 0, 0, 0]
    assert po.powmod(x, 728, f, 3) == [1, 0, 0, 0, 0, 0]
    for d in (2, 4, 7, 8, 13, 14, 26, 28, 52, 56, 91, 104, 182, 364):
        assert po.powmod(x, d, f, 3) != [1, 0, 0, 0, 0, 0]


def test_registry_file(tmp_path):
    path = tmp_path / "reg.txt"
    path.write_text("# comment\n5 2 2 1 1\n")
    assert load_registry(path) == {(5, 2): (2, 1, 1)}
    f = Field(5, 2)
    assert f.poly == (2, 1, 1)
    path.write_text("5 2 2 1\n")
    with pytest.raises(InvalidPolynomial):
        load_registry(path)


def test_mul_examples(f23):
    a5 = f23.alpha_pow(5)
    assert f23.mul(a5, ALPHA) == f23.element([1, 1, 0, 0, 0, 0])
    assert f23.pow(ALPHA, 63) == 1
    with pytest.raises(DivisionByZero):
        f23.inv(0)


@pytest.mark.parametrize("p,t", [(2, 3), (3, 3)])
def test_mul_matches_polynomial_oracle(p, t):
    f = make_field(p, t)
    rng = np.random.default_rng(1)
    for x, y in rng.integers(0, f.q, size=(300, 2)):
        want = po.to_int(po.mulmod(po.from_int(x, p, f.m), po.from_int(y, p, f.m), list(f.poly), p), p)
        assert f.mul(int(x), int(y)) == want
        assert f.add(int(x), int(y)) == po.to_int(po.add(po.from_int(x, p, f.m), po.from_int(y, p, f.m), p), p)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 728), st.integers(0, 728), st.integers(0, 728))
def test_field_axioms_p3(x, y, z):
    f = make_field(3, 3)
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
    assert f.add(x, f.neg(x)) == 0
    if x:
        assert f.mul(x, f.inv(x)) == 1
    assert f.abs_trace(f.add(x, y)) == (f.abs_trace(x) + f.abs_trace(y)) % 3
    assert f.abs_trace(f.pow(x, 3)) == f.abs_trace(x)


def test_vector_ops_agree_with_scalar(f33):
    xs = np.arange(f33.q)
    y = 417
    assert f33.add_arr(xs, y).tolist() == [f33.add(int(x), y) for x in xs]
    assert f33.mul_arr(xs, y).tolist() == [f33.mul(int(x), y) for x in xs]
    assert f33.pow_arr(xs, 26).tolist() == [f33.pow(int(x), 26) for x in xs]
    assert f33.neg_arr(xs).tolist() == [f33.neg(int(x)) for x in xs]


def test_abs_trace_values(f23):
    assert f23.abs_trace(0) == 0
    assert f23.abs_trace(1) == 0  # 6 mod 2
    # Tr(alpha) by repeated squaring in the polynomial oracle
    assert po.trace([0, 1, 0, 0, 0, 0], list(f23.poly), 2) == 0
    assert f23.abs_trace(ALPHA) == 0


@pytest.mark.parametrize("p,t", [(2, 3), (3, 3), (2, 4)])
def test_trace_matches_oracle_and_is_balanced(p, t):
    f = make_field(p, t)
    for x in range(0, f.q, max(1, f.q // 97)):
        assert f.abs_trace(x) == po.trace(po.from_int(x, p, f.m), list(f.poly), p)
    counts = np.bincount(f.trace_arr(np.arange(f.q)), minlength=p)
    assert counts.tolist() == [p ** (f.m - 1)] * p


def test_rel_trace(f23):
    assert f23.rel_trace_t(0) == 0
    # alpha + alpha^8 computed in the polynomial oracle
    assert f23.rel_trace_t(ALPHA) == 14
    for x in range(f23.q):
        z = f23.rel_trace_t(x)
        assert f23.frobenius(z, 3) == z
    sub = build_subsets(f23).subfield_star
    for x in sub:
        assert f23.rel_trace_t(x) == f23.scale(2, x)


def test_trace_transitivity_exhaustive(f23):
    for x in range(f23.q):
        assert f23.subfield_trace(f23.rel_trace_t(x), 3) == f23.abs_trace(x)


def test_subsets_sizes(f23, tables23):
    assert len(tables23.delta) == 9
    assert len(tables23.gamma) == 9
    assert len(tables23.subfield_star) == 7
    assert len(set(tables23.gamma)) == 9


@pytest.mark.parametrize("p", [2, 3])
def test_delta_meets_subfield_in_small_group(p):
    f = make_field(p, 3)
    T = build_subsets(f)
    g = np.gcd(p**3 + 1, p**3 - 1)
    inter = set(T.delta) & set(T.subfield_star)
    assert inter == {x for x in T.subfield_star if f.pow(x, int(g)) == 1}
    assert len(inter) == g


def test_uv_examples(f23, tables23):
    for x in tables23.subfield_star:
        assert uv_decompose(f23, x) == (x, 1)
    assert uv_decompose(f23, ALPHA) == (1, ALPHA)
    with pytest.raises(ZeroInput):
        uv_decompose(f23, 0)


@pytest.mark.parametrize("p", [2, 3])
def test_uv_bijection(p):
    f = make_field(p, 3)
    T = build_subsets(f)
    sub, gam = set(T.subfield_star), set(T.gamma)
    seen = set()
    for x in range(1, f.q):
        u, v = uv_decompose(f, x)
        assert u in sub and v in gam and f.mul(u, v) == x
        seen.add((u, v))
    assert len(seen) == f.q - 1 == len(sub) * len(gam)


def test_find_v(f23, tables23):
    assert find_v(f23, ALPHA, tables23) == 12  # alpha^8, brute force in the polynomial oracle
    for b in range(1, f23.q):
        hits = [v for v in tables23.gamma if f23.rel_trace_t(f23.mul(b, v)) == 0]
        assert len(hits) == 1
        if f23.rel_trace_t(b) == 0:
            assert find_v(f23, b, tables23) == 1
    with pytest.raises(ZeroInput):
        find_v(f23, 0)


def test_find_v_unique_p3(f33, tables33):
    for b in range(1, f33.q, 7):
        v = find_v(f33, b, tables33)
        assert f33.rel_trace_t(f33.mul(b, v)) == 0


def test_dual_coords(f23, f33):
    assert f23.dual_coords(0) == (0,) * 6
    for f in (f23, f33):
        duals = {f.dual_coords(a) for a in range(f.q)}
        assert len(duals) == f.q
        rng = np.random.default_rng(7)
        for a, x in rng.integers(0, f.q, size=(200, 2)):
            dot = sum(u * v for u, v in zip(f.dual_coords(int(a)), f.coords(int(x)))) % f.p
            assert dot == f.abs_trace(f.mul(int(a), int(x)))


def test_prime_field_extension():
    f = extension_field(5, 1)
    assert f.q == 5
    assert sorted(f.pow(f.alpha, k) for k in range(4)) == [1, 2, 3, 4]


def test_span(f23):
    T = span(f23, [f23.alpha_pow(i) for i in range(1, 6)])
    assert len(set(T)) == 32 and 1 not in T
