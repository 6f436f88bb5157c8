"""Classify conjugation residuals: stabilizer products vs open strings."""
import sys
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice, COLORS
from qdouble import models, verify, ribbons

lat = build_lattice("triangular3", 6, 6, boundary="torus")

tris = []
for color in COLORS:
    for tri in models._sublattice_triangles(lat, color):
        tris.append(tri)
edges = sorted({s for tri in tris for s in tri})
eidx = {s: i for i, s in enumerate(edges)}
M = np.zeros((len(edges), len(tris)), dtype=np.uint8)
for j, tri in enumerate(tris):
    for s in tri:
        M[eidx[s], j] = 1

def in_span(zset):
    """GF(2): is the indicator of zset in the column span of M?"""
    if not zset:
        return True
    b = np.zeros(len(edges), dtype=np.uint8)
    for s in zset:
        if s not in eidx:
            return False
        b[eidx[s]] = 1
    A = np.concatenate([M, b[:, None]], axis=1).astype(np.uint8)
    r = 0
    rows, cols = A.shape
    for c in range(cols - 1):
        piv = None
        for i in range(r, rows):
            if A[i, c]:
                piv = i
                break
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    # inconsistent iff a row 0...0|1 remains
    return not any(A[i, :-1].max() == 0 and A[i, -1] for i in range(rows))

def terms():
    out = []
    for v in lat.vertices:
        own, czp = models.d4_vertex_data(lat, v)
        out.append((("A", tuple(v)), verify.XCZForm(xs=own, czs=czp)))
    for color in COLORS:
        for tri in models._sublattice_triangles(lat, color):
            out.append((("B", color, tri), verify.XCZForm(zs=tri)))
    return out

TERMS = terms()

def classify(circ, tag):
    cnt = {"equal": 0, "stab": 0, "flip": [], "open": [], "weird": []}
    for label, form in TERMS:
        conj = form.conjugate_by_circuit(circ)
        if conj.xs != form.xs or conj.czs != form.czs:
            cnt["weird"].append(label); continue
        resid = conj.zs ^ form.zs
        ph = conj.phase / form.phase
        if not resid and ph == 1:
            cnt["equal"] += 1
        elif ph == 1 and in_span(resid):
            cnt["stab"] += 1
        elif ph == -1 and in_span(resid):
            cnt["flip"].append(label)
        else:
            cnt["open"].append(label)
    print(tag, "equal", cnt["equal"], "stab", cnt["stab"],
          "flip", cnt["flip"], "open", cnt["open"][:8], "weird", cnt["weird"][:4])

for color, members in [("R", [(0, 0)]), ("G", [(1, 0)]), ("B", [(2, 0)]),
                       ("R", [(0, 0), (1, 1)]),
                       ("R", [(0, 0), (1, 1), (2, 2)])]:
    circ = ribbons.compile_d4_flux_ribbon(lat, color, members)
    classify(circ, f"closed {color} {members}")

print("--- open windows ---")
members = [(0, 0), (1, 1), (2, 2)]
x_edges, bs, gs, e_g, e_b, flanks = ribbons.d4_staircase_data(lat, "R", members)
print("m =", len(bs), "bs:", bs)
m = len(bs)
for lo in range(m - 1):
    for hi in range(lo + 1, m):
        circ = ribbons.compile_d4_flux_ribbon(lat, "R", members, window=(lo, hi))
        classify(circ, f"open R window=({lo},{hi})")
