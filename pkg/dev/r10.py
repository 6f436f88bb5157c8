"""Flux-seed push-through for KW_RepG on a minimal 2-step patch (S3).

Identity under test: R_g^dag seeded on the first vertex of the dual path
equals (sum over frame values) T_h projectors on the crossed edges plus
conjugated left-multiplications on the path edges, with residual vertex
action pure conjugation (trivial on |e>-initialized vertices) except for
the open terminal vertex.
"""
import sys, itertools
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.gauging import Patch, kw_repg_patch_matrix

G = build_group("S3")
d = G.order

def run(l_into, e_into, order, conj_dir, edge_side, seed, g):
    def pe(site, a, b):
        return (site, a, b) if not e_into else (site, b, a)
    def le(site, v):
        return (site, None, v) if l_into else (site, v, None)
    edges = {"L0": le("L0", "V0"), "E1": pe("E1", "V0", "V1"),
             "L1": le("L1", "V1"), "E2": pe("E2", "V1", "V2")}
    patch = Patch(("V0", "V1", "V2"), tuple(edges[k] for k in order))
    kw = kw_repg_patch_matrix(patch, G)
    colrow = np.argmax(np.abs(kw), axis=0)
    esord = patch.edge_sites()
    pos = {s: i for i, s in enumerate(esord)}

    def dec(idx, n):
        digs = []
        for _ in range(n):
            digs.append(idx % d); idx //= d
        digs.reverse(); return digs
    def enc(digs):
        out = 0
        for x in digs:
            out = out * d + x
        return out
    def conj(k, h):
        return (G.m(G.m(G.i(h), k), h) if conj_dir == "bar"
                else G.m(G.m(h, k), G.i(h)))
    def emul(x, k):   # action of edge_side gate with element k on edge value
        return G.m(k, x) if edge_side == "L" else G.m(x, G.i(k))
    def seed_row(v, k):
        if seed == "Rdag": return G.m(v, k)       # R_k^dag |v> = |v k>
        if seed == "R":    return G.m(v, G.i(k))
        if seed == "Ldag": return G.m(G.i(k), v)
        return G.m(k, v)

    bad = 0
    for col in range(d ** 4):
        ed = dec(col, 4)
        h1 = ed[pos["L0"]]; h2 = ed[pos["L1"]]
        k1 = conj(g, h1); k2 = conj(k1, h2)
        ed2 = list(ed)
        ed2[pos["E1"]] = emul(ed[pos["E1"]], k1)
        ed2[pos["E2"]] = emul(ed[pos["E2"]], k2)
        vr = dec(int(colrow[enc(ed2)]), 3)
        # post: conjugation on V0 (by g) and V1 (by k1), L^dag_{k2} on V2
        vr[0] = G.m(G.i(g), G.m(vr[0], g))
        vr[1] = G.m(G.i(k1), G.m(vr[1], k1))
        vr[2] = G.m(G.i(k2), vr[2])
        vl = dec(int(colrow[col]), 3)
        vl[0] = seed_row(vl[0], g)
        if vl != vr:
            bad += 1
    return bad

orders = [("L0", "E1", "L1", "E2"), ("E1", "E2", "L0", "L1"),
          ("L0", "L1", "E1", "E2"), ("E2", "L1", "E1", "L0")]
best = []
for l_into in (True, False):
    for e_into in (True, False):
        for order in orders:
            for conj_dir in ("bar", "fwd"):
                for edge_side in ("L", "R"):
                    for seed in ("Rdag", "R", "Ldag", "L"):
                        bad = max(run(l_into, e_into, order, conj_dir,
                                      edge_side, seed, g) for g in (1, 2))
                        best.append((bad, l_into, e_into, order, conj_dir,
                                     edge_side, seed))
best.sort(key=lambda t: t[0])
for row in best[:12]:
    print(row)

# dense verification through the push-through machinery
from qdouble.gauging import flux_seed_case, pushthrough_verify
for steps in (1, 2):
    for g in range(1, d):
        case = flux_seed_case(G, g, steps=steps)
        r = pushthrough_verify(case, G, direction="KW_RepG")
        print("steps", steps, "g", g, "residual", r)
