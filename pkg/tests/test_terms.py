"""Term language: wire round-trips, canonical order, unification, digests."""
from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from situkit.kernel import (
    Compound,
    Do,
    Initial,
    Sym,
    Triple,
    Var,
    action,
    canonical_key,
    fluent,
    is_ground,
    same_history,
    substitute,
    term_from_wire,
    term_to_wire,
    unify,
)

symbols = st.builds(Sym, st.text(min_size=1, max_size=8))
variables = st.builds(Var, st.text(min_size=1, max_size=4))
leaves = st.one_of(st.integers(), st.text(max_size=10), symbols, variables)


def _triples(children):
    nonempty = children.filter(lambda t: not (isinstance(t, str) and not t))
    return st.builds(Triple, nonempty, nonempty, nonempty)


terms = st.recursive(
    leaves,
    lambda children: st.one_of(
        _triples(children),
        st.builds(Compound, st.text(min_size=1, max_size=6), st.tuples(children, children)),
    ),
    max_leaves=8,
)


@given(terms)
def test_wire_roundtrip(term):
    assert term_from_wire(term_to_wire(term)) == term


@given(terms)
def test_canonical_key_is_stable(term):
    assert canonical_key(term) == canonical_key(term)


@given(terms, terms)
def test_canonical_key_totally_orders(a, b):
    ka, kb = canonical_key(a), canonical_key(b)
    assert (ka < kb) or (kb < ka) or (ka == kb)


def test_wire_rejects_malformed():
    for bad in ({"x": 1}, {"t": [1, 2]}, {"c": []}, [1], None, True):
        with pytest.raises(ValueError):
            term_from_wire(bad)


def test_ground_and_variables():
    pattern = Triple(Var("s"), Sym("type"), Sym("Hazard"))
    assert not is_ground(pattern)
    assert is_ground(Triple(Sym("h1"), Sym("type"), Sym("Hazard")))
    assert not is_ground(Compound("term", (Var("x"),)))


def test_substitute_reaches_into_compounds():
    pattern = Triple(Var("s"), Sym("type"), Var("o"))
    out = substitute(pattern, {"s": Sym("h1"), "o": "label"})
    assert out == Triple(Sym("h1"), Sym("type"), "label")


def test_unify_binds_inside_triples():
    pattern = Triple(Var("s"), Sym("type"), Sym("Hazard"))
    ground = Triple(Sym("h1"), Sym("type"), Sym("Hazard"))
    assert unify(pattern, ground, {}) == {"s": Sym("h1")}
    assert unify(pattern, Triple(Sym("h1"), Sym("type"), Sym("Loss")), {}) is None


def test_unify_respects_existing_bindings():
    pattern = Triple(Var("s"), Var("s"), Sym("x"))
    assert unify(pattern, Triple(Sym("a"), Sym("a"), Sym("x")), {}) == {"s": Sym("a")}
    assert unify(pattern, Triple(Sym("a"), Sym("b"), Sym("x")), {}) is None


def test_triple_components_must_be_nonempty():
    with pytest.raises(ValueError):
        Triple(Sym(""), Sym("p"), Sym("o"))
    with pytest.raises(ValueError):
        Triple(Sym("s"), Sym("p"), "")


def test_situation_digest_ignores_metadata():
    t = Triple(Sym("h1"), Sym("type"), Sym("Hazard"))
    s0 = Initial("kb")
    a = Do(action("add_data", t, actor="alice"), s0)
    b = Do(action("add_data", t, actor="bob"), s0)
    assert a.digest == b.digest
    assert same_history(a, b)


def test_situation_digest_tracks_history():
    t1 = Triple(Sym("h1"), Sym("type"), Sym("Hazard"))
    t2 = Triple(Sym("h2"), Sym("type"), Sym("Hazard"))
    s0 = Initial("kb")
    a = Do(action("add_data", t1), s0)
    b = Do(action("add_data", t2), s0)
    assert a.digest != b.digest
    assert not same_history(a, b)
    assert Initial("kb").digest != Initial("other").digest


def test_history_unwinds_to_initial():
    s0 = Initial("kb")
    s = s0
    for name in ("x", "y", "z"):
        s = Do(action("toggle", Sym(name)), s)
    assert [a.args[0].name for a in s.history()] == ["x", "y", "z"]
    assert s.root() == s0
    assert len(s) == 3


def test_history_is_iterative_on_deep_terms():
    s = Initial("kb")
    for i in range(5000):
        s = Do(action("toggle", i), s)
    assert len(s) == 5000
    assert s.history()[0].args == (0,)


def test_fluent_digest_distinguishes_kind_and_args():
    assert fluent("on", Sym("a")).digest() != fluent("off", Sym("a")).digest()
    assert fluent("on", Sym("a")).digest() != fluent("on", Sym("b")).digest()
    assert fluent("on", Sym("a")).digest() == fluent("on", Sym("a")).digest()
