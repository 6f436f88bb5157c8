"""Contractible closed [C3] loop around a vertex on the 2x2 torus."""
import sys, time, itertools
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble import models, verify
from qdouble.sim import apply_matrix

G = build_group("S3")

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

MU = {1: 2, 2: 4}  # mu^p as group index

def crossing_gate(p, role, ctrl_parity_sites):
    """Multiply target edge at its v-end by mu^p conjugated per the XOR of
    sigma-parities of the control edges (dim-6 sites listed first)."""
    nc = len(ctrl_parity_sites)
    dim = 6 ** (nc + 1)
    def f(idx):
        digs = []
        rem = idx
        for _ in range(nc + 1):
            digs.append(rem % 6)
            rem //= 6
        digs.reverse()          # [ctrl..., target]
        par = sum(d % 2 for d in digs[:-1]) % 2
        g = MU[p] if par == 0 else G.i(MU[p])
        h = digs[-1]
        h2 = G.m(h, G.i(g)) if role == "out" else G.m(g, h)
        out = 0
        for d in digs[:-1] + [h2]:
            out = out * 6 + d
        return out
    return perm_mat(dim, f)

t0 = time.time()
lat = build_lattice("square", 2, 2, boundary="torus")
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
print("prep", round(time.time() - t0, 1))

v = (0, 0)
# counterclockwise crossing order: east, north, west, south
crossings = [("E[0,0]", "out"), ("N[0,0]", "out"),
             ("E[1,0]", "in"), ("N[0,1]", "in")]

def run(order, p, accumulate=True):
    st = gs.copy()
    done = []
    for site, role in order:
        ctrls = list(done) if accumulate else []
        gate = crossing_gate(p, role, ctrls)
        apply_matrix(st, gate, ctrls + [site])
        done.append(site)
    return verify.stabilizer_report(st, terms)

for p in (1, 2):
    for rot in range(4):
        order = crossings[rot:] + crossings[:rot]
        rep = run(order, p)
        print("ccw rot", rot, "p", p, "excited:", rep.excited)
    order = list(reversed(crossings))
    rep = run(order, p)
    print("cw p", p, "excited:", rep.excited)
    rep = run(crossings, p, accumulate=False)
    print("undressed p", p, "excited:", rep.excited)
print("total", round(time.time() - t0, 1))
