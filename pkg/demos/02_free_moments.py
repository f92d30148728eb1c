"""
Exact free moments
==================

Traces of words in free variables are exact rationals.  This script
evaluates a few classical ones and then checks the rotation identities
that drive the simplicity proofs, on randomly sampled words.
"""

# %%
# Two free projections p, q with traces α and β.  τ(pq) = αβ and τ(pqpq) has
# a closed form, which we compare on a grid.
from fractions import Fraction

from freeprod import Matrix, mk_algebra
from freeprod.moments import (
    fock_trace,
    haar_check,
    haar_moments,
    parse_word,
    verify_corollary32,
    verify_lemma31,
    word_trace,
)


def two_points(a):
    return mk_algebra([Matrix(1, a), Matrix(1, 1 - a)])


for a, b in [(Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 3), Fraction(3, 4))]:
    A, B = two_points(a), two_points(b)
    w = parse_word("L:p1 R:p1 L:p1 R:p1", A, B)
    closed = a * a * b * (1 - b) + a * b * b * (1 - a) + a * a * b * b
    print(f"alpha={a}, beta={b}: tau(pqpq) = {word_trace(w, A, B)}  (closed form {closed})")

# %%
# The word evaluator centers letters left to right.  A second evaluator acts
# on the free product Hilbert space directly; both must agree.
A, B = two_points(Fraction(1, 3)), mk_algebra([Matrix(2, 1)])
for text in ["L:p1 R:e12 L:p2 R:e21", "R:u L:p1 R:u^-1 L:p1", "L:center(p1) R:center(e11) L:center(p1)"]:
    w = parse_word(text, A, B)
    print(f"{text:40} word_trace = {word_trace(w, A, B)!s:8} fock = {fock_trace(w, A, B)}")

# %%
# Conjugating the scalars by powers of the cyclic shift u of M_n produces
# families that stay free from each other; every centered alternating word
# times u^r has trace zero.
for n, weights, l in [(3, ["1/5", "4/5"], None), (4, ["1/3", "2/3"], 2)]:
    rep = verify_lemma31(len(weights), n, weights, l=l, samples=200, seed=1)
    print(rep.label, "->", rep.summary())
print(verify_corollary32(3, ["1/4", "3/4"], spanning_words=100, seed=2).summary())

# %%
# A diffuse summand carries a Haar unitary: all nonzero moments vanish.
from freeprod import Diffuse

D = mk_algebra([Diffuse("2/5"), Matrix(2, "3/5")])
moments = haar_moments(D, 5)
print("Haar moments:", {k: str(v) for k, v in moments.items()}, "check:", haar_check(moments, 5))
