"""Exact arithmetic in the free inverse monoid via birooted Munn trees.

Words use single lowercase letters; an inverse letter carries a trailing
apostrophe, so ``a b a'`` reads a, then b, then the inverse of a.  Trees
are rooted at the empty word and store their vertex set as reduced
free-group words, which makes equality the word problem.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

# a signed word is a tuple of (letter, +1|-1)
Word = tuple


def check_alphabet(alphabet):
    letters = tuple(alphabet)
    if not letters:
        raise InputError("alphabet must be nonempty")
    for a in letters:
        if not (isinstance(a, str) and len(a) == 1 and a.isalpha() and a.islower()):
            raise InputError(f"bad alphabet letter {a!r}")
    if len(set(letters)) != len(letters):
        raise InputError("alphabet has repeated letters")
    return letters


def parse_word(text, alphabet=None):
    """Parse ``a b a'`` (spaces optional) into a signed word."""
    word = []
    i = 0
    text = text.strip()
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if not (ch.isalpha() and ch.islower()):
            raise InputError(f"unexpected character {ch!r} in word {text!r}")
        sign = 1
        if i + 1 < len(text) and text[i + 1] == "'":
            sign = -1
            i += 1
        if alphabet is not None and ch not in alphabet:
            raise InputError(f"letter {ch!r} not in alphabet {''.join(alphabet)!r}")
        word.append((ch, sign))
        i += 1
    return tuple(word)


def format_word(word):
    return "".join(c + ("'" if s < 0 else "") for c, s in word)


def word_letters(word):
    return sorted({c for c, _ in word})


def invert_word(word):
    return tuple((c, -s) for c, s in reversed(word))


def reduce_word(word):
    out = []
    for c, s in word:
        if out and out[-1] == (c, -s):
            out.pop()
        else:
            out.append((c, s))
    return tuple(out)


def concat(u, v):
    """Free-group product of two reduced words."""
    u = list(u)
    for c, s in v:
        if u and u[-1] == (c, -s):
            u.pop()
        else:
            u.append((c, s))
    return tuple(u)


@dataclass(frozen=True)
class MunnTree:
    """Birooted subtree of the free-group Cayley graph, rooted at the
    empty word; the second root is ``end``."""

    alphabet: tuple
    vertices: frozenset
    end: Word

    def __post_init__(self):
        object.__setattr__(self, "alphabet", check_alphabet(self.alphabet))
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "end", tuple(self.end))
        if () not in self.vertices:
            raise InputError("tree must contain the empty word")
        if self.end not in self.vertices:
            raise InputError("end root must be a vertex")
        for v in self.vertices:
            for c, _ in v:
                if c not in self.alphabet:
                    raise InputError(f"vertex letter {c!r} outside alphabet")
            if reduce_word(v) != v:
                raise InputError(f"vertex {format_word(v)!r} is not reduced")
            if v and v[:-1] not in self.vertices:
                raise InputError("vertex set is not prefix-closed")

    def is_idempotent(self):
        return self.end == ()

    def sorted_vertices(self):
        return sorted(self.vertices, key=lambda v: (len(v), format_word(v)))


def tree_of_word(word, alphabet=None):
    """Walk the word from the empty vertex; vertices are all reduced
    prefixes, the end root is the reduced value."""
    if alphabet is None:
        alphabet = tuple(word_letters(word)) or ("a",)
    alphabet = check_alphabet(alphabet)
    for c, _ in word:
        if c not in alphabet:
            raise InputError(f"letter {c!r} not in alphabet")
    cur = ()
    verts = {cur}
    for c, s in word:
        cur = concat(cur, ((c, s),))
        verts.add(cur)
    return MunnTree(alphabet, frozenset(verts), cur)


def _check_same_alphabet(t1, t2):
    if t1.alphabet != t2.alphabet:
        raise InputError("alphabet mismatch")


def fi_mul(t1, t2):
    _check_same_alphabet(t1, t2)
    verts = set(t1.vertices)
    verts.update(concat(t1.end, v) for v in t2.vertices)
    return MunnTree(t1.alphabet, frozenset(verts), concat(t1.end, t2.end))


def fi_inv(t):
    g = invert_word(t.end)
    return MunnTree(t.alphabet, frozenset(concat(g, v) for v in t.vertices), g)


def fi_star(t):
    g = invert_word(t.end)
    return MunnTree(t.alphabet, frozenset(concat(g, v) for v in t.vertices), ())


def fi_plus(t):
    return MunnTree(t.alphabet, t.vertices, ())


def fi_leq(t1, t2):
    """Natural order: same end root and t1 carries at least t2's vertices."""
    _check_same_alphabet(t1, t2)
    return t1.end == t2.end and t1.vertices >= t2.vertices


def idempotent_meet(e1, e2):
    _check_same_alphabet(e1, e2)
    if not (e1.is_idempotent() and e2.is_idempotent()):
        raise InputError("meet is only defined for idempotent trees")
    return MunnTree(e1.alphabet, e1.vertices | e2.vertices, ())


def fi_one(alphabet):
    return MunnTree(tuple(alphabet), frozenset({()}), ())
