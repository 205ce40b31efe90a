import random
from itertools import product

import pytest

from oracles import walk_vertices
from restrix.errors import InputError
from restrix.munn import (
    MunnTree,
    fi_inv,
    fi_leq,
    fi_mul,
    fi_one,
    fi_plus,
    fi_star,
    format_word,
    idempotent_meet,
    invert_word,
    parse_word,
    reduce_word,
    tree_of_word,
)

AB = ("a", "b")


def w(text):
    return parse_word(text, AB)


def t(text):
    return tree_of_word(w(text), AB)


def all_words(max_len, letters=AB):
    signed = [(c, s) for c in letters for s in (1, -1)]
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [word + (x,) for word in frontier for x in signed]
        out.extend(frontier)
    return out


# ---------------------------------------------------------------------------
# words


def test_parse_and_format_round_trip():
    for text in ("", "a", "a'", "ab'a", "a b a'", "bb'ab"):
        word = parse_word(text, AB)
        assert parse_word(format_word(word), AB) == word


def test_parse_rejects_unknown_letters():
    with pytest.raises(InputError):
        parse_word("xyz", AB)
    with pytest.raises(InputError):
        parse_word("a B", AB)


def test_reduce_word():
    assert reduce_word(w("a a'")) == ()
    assert reduce_word(w("a b b' a'")) == ()
    assert reduce_word(w("a a")) == w("a a")


# ---------------------------------------------------------------------------
# tree construction


def test_empty_word_tree():
    tree = t("")
    assert tree.vertices == frozenset({()}) and tree.end == ()


def test_wagner_identity_collapses():
    assert t("a a' a") == t("a")
    assert t("a").vertices == frozenset({(), w("a")})


def test_walk_example_frozen():
    tree = t("a b a'")
    seen, end = walk_vertices(w("a b a'"))
    assert tree.vertices == frozenset(seen)
    assert tree.end == end
    assert tree.vertices == frozenset({(), w("a"), w("ab"), w("aba'")})
    assert tree.end == w("aba'")


def test_vertices_prefix_closed_validation():
    with pytest.raises(InputError):
        MunnTree(AB, frozenset({(), w("ab")}), ())  # missing vertex a
    with pytest.raises(InputError):
        MunnTree(AB, frozenset({w("a")}), w("a"))  # missing the empty word


# ---------------------------------------------------------------------------
# operations


def test_mul_with_identity():
    for text in ("", "a", "ab'", "a b a'"):
        assert fi_mul(t(text), fi_one(AB)) == t(text)
        assert fi_mul(fi_one(AB), t(text)) == t(text)


def test_commuting_idempotents_frozen():
    lhs = fi_mul(t("aa'"), t("bb'"))
    rhs = fi_mul(t("bb'"), t("aa'"))
    expected = MunnTree(AB, frozenset({(), w("a"), w("b")}), ())
    assert lhs == rhs == expected


def test_mul_by_inverse_gives_plus():
    prod = fi_mul(t("a"), t("a'"))
    assert prod == MunnTree(AB, frozenset({(), w("a")}), ())
    assert prod == fi_plus(t("a"))


def test_mul_agrees_with_concatenation_exhaustively():
    words = all_words(3)
    for u, v in product(words, repeat=2):
        assert fi_mul(tree_of_word(u, AB), tree_of_word(v, AB)) == tree_of_word(
            u + v, AB
        )


def test_mul_agrees_with_concatenation_sampled_longer():
    rng = random.Random(0)
    signed = [(c, s) for c in AB for s in (1, -1)]
    for _ in range(500):
        u = tuple(rng.choice(signed) for _ in range(rng.randint(0, 5)))
        v = tuple(rng.choice(signed) for _ in range(rng.randint(0, 5)))
        assert fi_mul(tree_of_word(u, AB), tree_of_word(v, AB)) == tree_of_word(
            u + v, AB
        )
        assert fi_inv(tree_of_word(u, AB)) == tree_of_word(invert_word(u), AB)


def test_inv_is_involution():
    for text in ("", "a", "ab'", "a b a'", "abab'"):
        assert fi_inv(fi_inv(t(text))) == t(text)


def test_star_and_plus_frozen():
    assert fi_star(t("a")) == MunnTree(AB, frozenset({(), w("a'")}), ())
    assert fi_plus(t("a")) == MunnTree(AB, frozenset({(), w("a")}), ())


def test_star_is_inv_mul_self():
    for text in ("a", "ab'", "a b a'", "abb"):
        tree = t(text)
        assert fi_star(tree) == fi_mul(fi_inv(tree), tree)
        assert fi_plus(tree) == fi_mul(tree, fi_inv(tree))


def test_rho_relations_in_contexts():
    rng = random.Random(1)
    signed = [(c, s) for c in AB for s in (1, -1)]
    for _ in range(500):
        p = tuple(rng.choice(signed) for _ in range(rng.randint(0, 4)))
        q = tuple(rng.choice(signed) for _ in range(rng.randint(0, 4)))
        x = rng.choice(signed)
        y = rng.choice(signed)
        xi = (x[0], -x[1])
        yi = (y[0], -y[1])
        # x x' x = x
        assert tree_of_word(p + (x, xi, x) + q, AB) == tree_of_word(p + (x,) + q, AB)
        # x x' y y' = y y' x x'
        lhs = p + (x, xi, y, yi) + q
        rhs = p + (y, yi, x, xi) + q
        assert tree_of_word(lhs, AB) == tree_of_word(rhs, AB)


def test_idempotents_commute_random():
    rng = random.Random(2)
    signed = [(c, s) for c in AB for s in (1, -1)]
    for _ in range(200):
        u = tuple(rng.choice(signed) for _ in range(rng.randint(0, 4)))
        v = tuple(rng.choice(signed) for _ in range(rng.randint(0, 4)))
        e = fi_star(tree_of_word(u, AB))
        f = fi_star(tree_of_word(v, AB))
        assert fi_mul(e, f) == fi_mul(f, e)


# ---------------------------------------------------------------------------
# natural order


def test_leq_reflexive_and_examples():
    assert fi_leq(t("a"), t("a"))
    assert fi_leq(t("aa'b"), t("b"))
    assert not fi_leq(t("a"), t("b"))


def _prefix_closed_subsets(universe):
    universe = sorted(universe, key=len)
    subsets = [frozenset({()})]
    rest = [v for v in universe if v != ()]
    for mask in range(1 << len(rest)):
        chosen = {rest[i] for i in range(len(rest)) if mask >> i & 1} | {()}
        if all(v[:-1] in chosen for v in chosen if v):
            subsets.append(frozenset(chosen))
    return set(subsets)


def test_leq_matches_existential_idempotent_test():
    words = all_words(2)
    trees = [tree_of_word(u, AB) for u in words]
    for t1, t2 in product(trees, repeat=2):
        direct = fi_leq(t1, t2)
        exists = False
        for verts in _prefix_closed_subsets(t1.vertices):
            E = MunnTree(AB, verts, ())
            if fi_mul(E, t2) == t1:
                exists = True
                break
        assert direct == exists


# ---------------------------------------------------------------------------
# meets


def test_meet_examples():
    e = fi_plus(t("aa'"))
    assert idempotent_meet(e, e) == e
    assert idempotent_meet(e, fi_one(AB)) == e
    assert idempotent_meet(fi_plus(t("a")), fi_plus(t("b"))) == MunnTree(
        AB, frozenset({(), w("a"), w("b")}), ()
    )


def test_meet_rejects_non_idempotents():
    with pytest.raises(InputError):
        idempotent_meet(t("a"), fi_one(AB))


def test_alphabet_mismatch_rejected():
    with pytest.raises(InputError):
        fi_mul(t("a"), tree_of_word(parse_word("c"), ("c",)))
