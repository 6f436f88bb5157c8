"""Scan [C3] dressing conventions: which sigma-parity frame darkens the bulk."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, verify
from qdouble.sim import apply_matrix

G = build_group("S3")
def dec(g): return divmod(g, 2)

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

def conj_balpha():
    def f(idx):
        g1, g2 = divmod(idx, 6)
        a1, b1 = dec(g1); a2, b2 = dec(g2)
        if b1:
            a2 = (-a2) % 3
        return g1 * 6 + 2 * a2 + b2
    return perm_mat(36, f)

def shift_alpha(p, side):
    # left: mu^p * g ; right: g * mu^p
    def f(g):
        a, b = dec(g)
        if side == "L":
            a = (a + p) % 3
        else:
            a = (a + (p if b == 0 else -p)) % 3
        return 2 * a + b
    return perm_mat(6, f)

CC = conj_balpha()

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="open")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1))

bsites = ["E[0,0]", "E[1,0]"]
asites = ["N[1,0]", "N[2,0]"]
n = len(asites)

def run(windows, p, side):
    st = gs.copy()
    XA = shift_alpha(p, side)
    for i in range(n):
        for j in windows[i]:
            apply_matrix(st, CC, [bsites[j], asites[i]])
        apply_matrix(st, XA, [asites[i]])
        for j in reversed(windows[i]):
            apply_matrix(st, CC, [bsites[j], asites[i]])
    rep = verify.stabilizer_report(st, terms)
    return rep

# candidate window rules: per alpha_i (0-based), set of b indices controlling
rules = {
    "pref_i":   [list(range(0, i + 1)) for i in range(n)],
    "pref_i-1": [list(range(0, i)) for i in range(n)],
    "suff_i+1": [list(range(i + 1, n)) for i in range(n)],
    "suff_i":   [list(range(i, n)) for i in range(n)],
}
for name, wins in rules.items():
    for p in (1, 2):
        for side in ("L", "R"):
            rep = run(wins, p, side)
            print(name, p, side, "excited:", rep.excited)
print("total", round(time.time() - t0, 1))
