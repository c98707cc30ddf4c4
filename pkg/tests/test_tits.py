import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from jsjtree.errors import PreconditionError
from jsjtree.tits import (
    HALF_PI,
    JoinPoint,
    TreeEnd,
    act,
    axis_ends,
    canonicalize,
    cyclic_reduce,
    end_action,
    explicit_agreement,
    inverse_word,
    iterate_limit,
    limit_points,
    orbit_direction,
    prefix_agreement,
    random_join_point,
    reduce_word,
    single_tree_dynamics,
    tits_diameter_sample,
    tits_distance,
    verify_pi_convergence,
    word_power,
)

words = st.text(alphabet="abAB", max_size=8)
periods = words.filter(lambda w: reduce_word(w) != "")


def end(u, w):
    return canonicalize(u, w)


def expansion_oracle(u, w, n=50):
    # reduce a long finite truncation; cancellation only touches its far end
    return reduce_word(u + w * (n + len(u) + 4))[:n]


def pt(xi, theta, eta):
    return JoinPoint(xi, theta, eta)


A_INF, B_INF = end("", "a"), end("", "b")
AI_INF, BI_INF = end("", "A"), end("", "B")


def test_word_basics():
    assert reduce_word("aAbBa") == "a"
    assert inverse_word("abA") == "aBA"
    assert cyclic_reduce("baB") == ("b", "a")
    assert cyclic_reduce("abAB") == ("", "abAB")
    assert word_power("ab", 3) == "ababab" and word_power("a", -2) == "AA"
    with pytest.raises(PreconditionError):
        reduce_word("a1")


def test_canonicalize_examples():
    assert end("", "a") == TreeEnd("", "a")
    assert end("a", "a") == end("", "a")
    assert end("ab", "Ba").expand(50) == expansion_oracle("ab", "Ba")
    assert end("", "aa") == end("", "a")
    with pytest.raises(PreconditionError):
        canonicalize("a", "aA")


@settings(max_examples=300, deadline=None)
@given(words, periods)
def test_canonical_form_matches_expansion(u, w):
    e = end(u, w)
    assert e.expand(50) == expansion_oracle(u, w)
    assert e.period == cyclic_reduce(e.period)[1]
    assert reduce_word(e.prefix + e.period * 2) == e.prefix + e.period * 2


@settings(max_examples=300, deadline=None)
@given(words, periods, st.integers(0, 3))
def test_equal_ends_have_equal_forms(u, w, r):
    w = reduce_word(w)
    e = end(u, w)
    assert end(u + w, w) == e
    assert end(u, w * 2) == e
    c, core = cyclic_reduce(w)
    rot = r % len(core)
    assert end(reduce_word(u + c) + core[:rot], core[rot:] + core[:rot]) == e


@settings(max_examples=300, deadline=None)
@given(words, periods, words, periods)
def test_end_equality_is_decided_by_expansion(u, w, u2, w2):
    same = end(u, w).expand(80) == end(u2, w2).expand(80)
    assert (end(u, w) == end(u2, w2)) == same


def test_end_action_examples():
    assert end_action("a", A_INF) == A_INF
    assert end_action("a", B_INF) == TreeEnd("a", "b")
    assert end_action("A", TreeEnd("a", "b")) == B_INF


@settings(max_examples=200, deadline=None)
@given(words, words, periods)
def test_end_action_is_an_action(v1, v2, w):
    e = end("", w)
    assert end_action(v1, end_action(v2, e)) == end_action(v1 + v2, e)
    assert end_action(inverse_word(v1), end_action(v1, e)) == e


def test_axis_ends_examples():
    assert axis_ends("a") == (AI_INF, A_INF, 1)
    rep, att, ell = axis_ends("ab")
    assert ell == 2 and att == end("", "ab") and rep == end("", "BA")
    assert axis_ends("baB") == (TreeEnd("b", "A"), TreeEnd("b", "a"), 1)
    with pytest.raises(PreconditionError):
        axis_ends("aA")


@settings(max_examples=100, deadline=None)
@given(periods)
def test_axis_ends_are_limits_of_powers(v):
    rep, att, ell = axis_ends(v)
    # powers of v track the attracting end from the identity
    assert word_power(v, 30)[:20] == att.expand(20)
    assert word_power(inverse_word(v), 30)[:20] == rep.expand(20)


def test_distance_examples():
    x = pt(A_INF, math.pi / 5, B_INF)
    assert tits_distance(x, x) == 0.0
    assert tits_distance(pt(A_INF, 0, None), pt(B_INF, 0, None)) == math.pi
    assert tits_distance(pt(A_INF, 0, None), pt(None, HALF_PI, B_INF)) == HALF_PI
    assert tits_distance(pt(A_INF, 0.2, B_INF), pt(A_INF, 0.7, B_INF)) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(PreconditionError):
        JoinPoint(A_INF, 2.0, B_INF)
    with pytest.raises(PreconditionError):
        JoinPoint(None, 0.3, B_INF)


points = st.builds(lambda s: random_join_point(np.random.default_rng(s)), st.integers(0, 10**6))


@settings(max_examples=300, deadline=None)
@given(points, points, points)
def test_metric_axioms(x, y, z):
    dxy = tits_distance(x, y)
    assert dxy == tits_distance(y, x)
    assert 0.0 <= dxy <= math.pi
    assert (dxy == 0.0) == (x == y)
    assert dxy <= tits_distance(x, z) + tits_distance(z, y) + 1e-9


@settings(max_examples=200, deadline=None)
@given(points, points, words, words)
def test_isometry_invariance(x, y, w1, w2):
    g = (w1, w2)
    assert tits_distance(act(g, x), act(g, y)) == tits_distance(x, y)


def test_limit_points_examples():
    n, p = limit_points(("a", "b"))
    assert p == pt(A_INF, math.pi / 4, B_INF) and n == pt(AI_INF, math.pi / 4, BI_INF)
    n, p = limit_points(("a", ""))
    assert p == pt(A_INF, 0.0, None) and p.theta == 0.0
    n, p = limit_points(("aa", "b"))
    assert p.theta == pytest.approx(math.atan(0.5), abs=1e-15)
    with pytest.raises(PreconditionError):
        limit_points(("", "bB"))


@pytest.mark.parametrize("g", [("a", "b"), ("aa", "b"), ("ab", "a"), ("baB", "abAB"), ("a", "")])
def test_orbit_direction_tends_to_slope(g):
    _, p = limit_points(g)
    errs = [abs(orbit_direction(g, k) - p.theta) for k in (4, 16, 64)]
    assert errs[0] >= errs[1] >= errs[2]
    assert errs[2] < 0.05


def test_iterate_limit_examples():
    g = ("a", "b")
    n, p = limit_points(g)
    assert iterate_limit(g, pt(B_INF, math.pi / 4, A_INF)) == p
    assert iterate_limit(g, n) == n
    c = pt(AI_INF, math.pi / 3, B_INF)
    assert iterate_limit(g, c) == pt(AI_INF, math.pi / 3, B_INF)


@pytest.mark.parametrize("g", [("a", "b"), ("ab", "a"), ("baB", "ab"), ("abAB", "bb")])
def test_limit_agrees_with_explicit_iteration(g):
    n, p = limit_points(g)
    rng = np.random.default_rng(7)
    for _ in range(100):
        c = random_join_point(rng, special=(n, p))
        assert explicit_agreement(g, c, k=64) >= 32
        assert explicit_agreement(g, c, k=16) <= explicit_agreement(g, c, k=64)


def test_certificates_are_partition_stable():
    full = verify_pi_convergence(("ab", "a"), samples=40, seed=3)
    head = verify_pi_convergence(("ab", "a"), samples=10, seed=3)
    assert [c.to_json() for c in full[: len(head)]] == [c.to_json() for c in head]


def test_certificate_endpoints():
    certs = verify_pi_convergence(("a", "b"), samples=200, theta_grid=[0.0, math.pi])
    at_pi = [c for c in certs if c.theta == math.pi]
    assert all(c.vacuous for c in at_pi)
    assert all(c.d_Lp <= math.pi for c in certs if c.theta == 0.0)
    assert all(c.verdict == "pass" for c in certs)
    with pytest.raises(PreconditionError):
        verify_pi_convergence(("a", "b"), samples=1, tol=0.0)


def test_single_tree_examples():
    (tr,) = single_tree_dynamics("a", [B_INF], k_max=10)
    assert tr.agreement == list(range(11))
    (tr,) = single_tree_dynamics("a", [AI_INF], k_max=10)
    assert tr.frozen
    (tr,) = single_tree_dynamics("ab", [AI_INF], k_max=64)
    assert tr.nondecreasing and tr.agreement[-1] >= 64
    with pytest.raises(PreconditionError):
        single_tree_dynamics("a", rank=1)


def test_diameter_sample():
    rep = tits_diameter_sample(samples=2000, seed=1)
    assert abs(rep["max_distance"] - math.pi) <= 1e-12
    assert rep["below_threshold"]


def test_off_axis_basepoint_can_dip_once():
    e = canonicalize("abAB", "ab")
    (tr,) = single_tree_dynamics("aBA", [e], k_max=8)
    assert tr.agreement[:3] == [1, 0, 2] and not tr.nondecreasing
    (tr,) = single_tree_dynamics("aBA", [e], k_max=8, on_axis=True)
    assert tr.nondecreasing and tr.agreement[-1] >= 7


@settings(max_examples=200, deadline=None)
@given(periods, st.integers(0, 10**6))
def test_on_axis_agreement_is_monotone(w, seed):
    assume(cyclic_reduce(w)[1])
    for tr in single_tree_dynamics(w, samples=2, seed=seed, k_max=40, on_axis=True):
        assert tr.frozen or (tr.nondecreasing and tr.agreement[-1] >= 20)
