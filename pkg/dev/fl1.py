"""[C3] flux ribbon experiment: lifted qutrit/qubit layers on dim-6 edges."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, sim, verify
from qdouble.sim import apply_matrix

G = build_group("S3")
# g = 2a + b encodes mu^a sigma^b
def dec(g): return divmod(g, 2)

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

def cnot_bb():
    def f(idx):
        g1, g2 = divmod(idx, 6)
        a1, b1 = dec(g1); a2, b2 = dec(g2)
        return g1 * 6 + 2 * a2 + (b2 ^ b1)
    return perm_mat(36, f)

def conj_balpha():
    # control: qubit part of first (horizontal) site, target: qutrit part of second
    def f(idx):
        g1, g2 = divmod(idx, 6)
        a1, b1 = dec(g1); a2, b2 = dec(g2)
        if b1:
            a2 = (-a2) % 3
        return g1 * 6 + 2 * a2 + b2
    return perm_mat(36, f)

def shift_alpha(p=1):
    def f(g):
        a, b = dec(g)
        return 2 * ((a + p) % 3) + b
    return perm_mat(6, f)

def apply_c3_open(state, bsites, asites, power=1):
    CN, CC = cnot_bb(), conj_balpha()
    XA = shift_alpha(power)
    for s0, s1 in zip(bsites, bsites[1:]):
        apply_matrix(state, CN, [s0, s1])
    for s0, s1 in zip(bsites[:-1], asites[1:]):
        apply_matrix(state, CC, [s0, s1])
    for s in asites:
        apply_matrix(state, XA, [s])
    for s0, s1 in reversed(list(zip(bsites[:-1], asites[1:]))):
        apply_matrix(state, CC, [s0, s1])
    for s0, s1 in reversed(list(zip(bsites, bsites[1:]))):
        apply_matrix(state, CN, [s0, s1])

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="open")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1), "weight", w,
      "edges", [e.site for e in lat.edges])
rep = verify.stabilizer_report(gs, terms)
print("ground excited:", rep.excited)

for power in (1, 2):
    st = gs.copy()
    apply_c3_open(st, ["E[0,0]", "E[1,0]"], ["N[1,0]", "N[2,0]"], power)
    rep = verify.stabilizer_report(st, terms)
    print("open [C3] power", power, "excited:", rep.excited)
    for lbl, v in rep.values:
        if lbl in rep.excited:
            print("   ", lbl, np.round(v, 6))
print("total", round(time.time() - t0, 1))
