"""
A tour of the structure calculator
==================================

Free products of two finite-dimensional algebras, each with a faithful
trace, split into a large simple part 𝔄₀ plus finitely many matrix blocks.
The blocks come from pairs of summands (i, j) whose weights are large
compared to their sizes.  This script walks through the typical shapes.
"""

# %%
# Start with two points against a 2 x 2 matrix algebra.  The score of the
# pair (1, 1) is 9/10 + 1/4 > 1, so a copy of M₂ splits off.
from fractions import Fraction

from freeprod import (
    Diffuse,
    Matrix,
    classify_pairs,
    compression_rewrite,
    decompose,
    decompose_by_induction,
    mk_algebra,
    render_report,
)

M2 = mk_algebra([Matrix(2, 1)])
A = mk_algebra([Matrix(1, "9/10"), Matrix(1, "1/10")])
print(render_report(decompose(A, M2)))

# %%
# Lower the big weight to 3/4.  Now the score is exactly 1: there is no
# block, but 𝔄₀ maps onto M₂ and is no longer simple.
print()
print(render_report(decompose(mk_algebra([Matrix(1, "3/4"), Matrix(1, "1/4")]), M2)))

# %%
# With weight 1/2 on each point nothing is large, so the whole free product
# is simple with a unique trace.
print()
print(render_report(decompose(mk_algebra([Matrix(1, "1/2"), Matrix(1, "1/2")]), M2)).splitlines()[0])

# %%
# Sweep the big weight across the threshold 1 - 1/n² = 3/4 and watch the
# block appear with weight 4α - 3.
print()
print("alpha   gamma   block")
for num in range(14, 21):
    alpha = Fraction(num, 20)
    if alpha == 1:
        break
    d = decompose(mk_algebra([Matrix(1, alpha), Matrix(1, 1 - alpha)]), M2)
    block = d.plus_blocks[0].gamma if d.plus_blocks else ("boundary" if d.boundary_maps else "-")
    print(f"{str(alpha):6}  {str(d.gamma):6}  {block}")

# %%
# Larger example with a diffuse summand.  Pair scores tell the story
# before any structure is assembled.
A = mk_algebra([Diffuse("1/10"), Matrix(1, "7/10"), Matrix(2, "1/5")])
B = mk_algebra([Matrix(1, "1/2"), Matrix(1, "1/3"), Matrix(3, "1/6")])
plus, zero = classify_pairs(A, B)
print()
print("L+ pairs:", [(b.i, b.j, b.N, str(b.gamma)) for b in plus])
print("L0 pairs:", [(b.i, b.j) for b in zero])
print(render_report(decompose(A, B)).splitlines()[0])

# %%
# The inductive engine reaches the same answer by peeling one matrix
# summand at a time: cut down by its support projection, which turns the
# problem into a smaller free product with a full matrix algebra.
d1, d2 = decompose(A, B), decompose_by_induction(A, B)
print("engines agree:", d1 == d2)
#
# For A = ℂ^{1/2} ⊕ M₂^{1/2} against two points, cutting down by the support
# p₂ of M₂ leaves a diffuse piece plus one point, free from M₂.
A2 = mk_algebra([Matrix(1, "1/2"), Matrix(2, "1/2")])
B2 = mk_algebra([Matrix(1, "9/10"), Matrix(1, "1/10")])
left, alpha = compression_rewrite(A2, B2, 2)
print(f"p₂ (A * B) p₂ ≅ ({left}) * M₂   with τ(p₂) = {alpha}")
print(render_report(decompose(A2, B2)).splitlines()[0])

# %%
# Swapping the two algebras only swaps indices.
print("swap symmetric:", decompose(B, A) == d1.swapped())
