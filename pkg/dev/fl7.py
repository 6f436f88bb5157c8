"""[C2] as conjugation-propagated sigma string with full-group frame controls."""
import sys, time, itertools
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, verify
from qdouble.sim import apply_matrix

G = build_group("S3")
SIGMA = 1

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

def crossing(nctrl, conj_dir, side, inv):
    """Gate on [frame_1..frame_nctrl, target]: multiply target by sigma
    conjugated by the product of the frame values."""
    dim = 6 ** (nctrl + 1)
    def f(idx):
        digs = []
        rem = idx
        for _ in range(nctrl + 1):
            digs.append(rem % 6)
            rem //= 6
        digs.reverse()
        c = 0
        for d in digs[:-1]:
            c = G.m(c, d)
        if conj_dir == "bar":
            ghat = G.m(G.m(G.i(c), SIGMA), c)
        else:
            ghat = G.m(G.m(c, SIGMA), G.i(c))
        if inv:
            ghat = G.i(ghat)
        h = digs[-1]
        h2 = G.m(h, ghat) if side == "R" else G.m(ghat, h)
        out = 0
        for d in digs[:-1] + [h2]:
            out = out * 6 + d
        return out
    return perm_mat(dim, f)

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="open")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1))

bsites = ["E[0,0]", "E[1,0]"]
asites = ["N[1,0]", "N[2,0]"]

def run(pref_incl, conj_dir, side, inv):
    st = gs.copy()
    for i, a in enumerate(asites):
        ctrls = bsites[: i + 1] if pref_incl else bsites[:i]
        gate = crossing(len(ctrls), conj_dir, side, inv)
        apply_matrix(st, gate, ctrls + [a])
    return verify.stabilizer_report(st, terms)

results = []
for pref_incl in (True, False):
    for conj_dir in ("bar", "fwd"):
        for side in ("R", "L"):
            for inv in (False, True):
                rep = run(pref_incl, conj_dir, side, inv)
                results.append((len(rep.excited), pref_incl, conj_dir, side,
                                inv, rep.excited))
results.sort(key=lambda r: r[0])
for r in results:
    print(r)
print("total", round(time.time() - t0, 1))
