"""[C2] as sigma-frame-dressed Z3 cc-defect on dim-6 edges."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, verify
from qdouble.sim import apply_matrix

G = build_group("S3")
def dec(g): return divmod(g, 2)
def pack(a, b): return 2 * (a % 3) + (b % 2)

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

def two_site(f):
    def g(idx):
        g1, g2 = divmod(idx, 6)
        return f(g1, g2)
    return perm_mat(36, g)

# control: qubit part of first site; target: conjugate qutrit part of second
CDRESS = two_site(lambda g1, g2: g1 * 6 + pack(
    -dec(g2)[0] if dec(g1)[1] else dec(g2)[0], dec(g2)[1]))

def cx_aa(p=1):
    return two_site(lambda g1, g2: g1 * 6 + pack(
        dec(g2)[0] + p * dec(g1)[0], dec(g2)[1]))

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="open")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1))

hs = ["E[0,0]", "E[1,0]"]
vs = ["N[1,0]", "N[2,0]"]
etas = [1, 1]

# dressing: tail-frame parity (earlier horizontal qubits) per site
dress = [("E[1,0]", ["E[0,0]"]),
         ("N[1,0]", ["E[0,0]"]),
         ("N[2,0]", ["E[0,0]", "E[1,0]"])]

def apply_dress(st):
    for tgt, ctrls in dress:
        for c in ctrls:
            apply_matrix(st, CDRESS, [c, tgt])

def run(kick_sign, with_dress=True):
    st = gs.copy()
    if with_dress:
        apply_dress(st)
    # inner Z3 cc-defect on qutrit parts
    for a, c in zip(hs, hs[1:]):
        apply_matrix(st, cx_aa(1), [a, c])
    for k in range(1, len(hs) + 1):
        apply_matrix(st, cx_aa(kick_sign * -etas[k - 1]), [hs[k - 1], vs[k - 1]])
    for a, c in reversed(list(zip(hs, hs[1:]))):
        apply_matrix(st, cx_aa(-1), [a, c])
    if with_dress:
        apply_dress(st)
    return verify.stabilizer_report(st, terms)

for ks in (1, -1):
    for wd in (True, False):
        rep = run(ks, wd)
        print("[C2] kick", ks, "dress", wd, "excited:", rep.excited)
        for lbl, v in rep.values:
            if lbl in rep.excited:
                print("   ", lbl, np.round(v, 6))
print("total", round(time.time() - t0, 1))
