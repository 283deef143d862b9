"""Split a two-pole Borel transform into single-singularity elements."""

from dyadik.engine import decompose_elements, jump_across

poles, residues = [1.0, 2.0], [1.0, -0.5]


def F(p):
    return sum(r / (w - p) for w, r in zip(poles, residues))


elements, G = decompose_elements(F, poles, 2.0, 0.0)
for w in poles:
    for i, e in enumerate(elements):
        print(f"element {i} near p={w}: F_i(w + 0.01) = {e(w + 0.01):.4f}")
    print(f"entire part jump near p={w}: {jump_across(G, w + 0.05, 1.0):.1e}")
