"""Closed [C3] ribbon on the 2x2 torus: should excite nothing."""
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
        _, b1 = dec(g1); a2, b2 = dec(g2)
        if b1:
            a2 = (-a2) % 3
        return g1 * 6 + 2 * a2 + b2
    return perm_mat(36, f)

def shift_alpha_R(p):
    def f(g):
        a, b = dec(g)
        a = (a + (p if b == 0 else -p)) % 3
        return 2 * a + b
    return perm_mat(6, f)

CC = conj_balpha()

t0 = time.time()
lat = build_lattice("square", 2, 2, boundary="torus")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1))
rep = verify.stabilizer_report(gs, terms)
print("ground excited:", rep.excited)

bsites = ["E[0,0]", "E[1,0]"]
asites = ["N[1,0]", "N[0,0]"]
n = len(asites)

def run(windows, p):
    st = gs.copy()
    XA = shift_alpha_R(p)
    for i in range(n):
        for j in windows[i]:
            apply_matrix(st, CC, [bsites[j], asites[i]])
        apply_matrix(st, XA, [asites[i]])
        for j in reversed(windows[i]):
            apply_matrix(st, CC, [bsites[j], asites[i]])
    return verify.stabilizer_report(st, terms)

rules = {
    "pref_i":   [list(range(0, i + 1)) for i in range(n)],
    "pref_i-1": [list(range(0, i)) for i in range(n)],
}
for name, wins in rules.items():
    for p in (1, 2):
        rep = run(wins, p)
        print("closed", name, p, "excited:", rep.excited)
        if rep.excited:
            for lbl, v in rep.values:
                if lbl in rep.excited:
                    print("   ", lbl, np.round(v, 6))
print("total", round(time.time() - t0, 1))
