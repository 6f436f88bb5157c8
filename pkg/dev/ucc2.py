import numpy as np, itertools
import qdouble.sim as sim
from qdouble.groups import build_group
from qdouble.lattice import build_lattice, oriented_path
from qdouble.sim import *
from qdouble.gauging import *

G = build_group("Z3")
lat = build_lattice("square", 2, 2, "torus")
edge_sites = [e.site for e in lat.edges]
reg = Register(tuple((s, 3) for s in edge_sites))
N = reg.total_dim
X = gate_matrix(GateSpec("ShiftX",(3,)))
Z = gate_matrix(GateSpec("ClockZ",(3,)))
C = gate_matrix(GateSpec("Conj_C",(3,)))
CX = gate_matrix(GateSpec("CX_qutrit"))
Xd, Zd, CXd = X.conj().T, Z.conj().T, CX.conj().T

path = oriented_path(lat, [(0,0),(1,0),(0,0)], side="left")

def ucc_ops(path, mid_sign=+1, skip_seam=False):
    ops = []
    n = len(path.edges)
    psites = [e.site for e,_ in path.edges]
    cfix = [(C, (s,)) for s,(e,sg) in zip(psites, path.edges) if sg < 0]
    chain = [(CX, (psites[k], psites[k+1])) for k in range(n-1)]
    cov = {v: (e, eta) for (v,e), eta in zip(path.e_v, path.eta)}
    mid = []
    nv = len(path.vertices)-1 if path.closed else len(path.vertices)
    for k in range(1, n+1):
        v = path.vertices[k % nv] if path.closed else path.vertices[k]
        if skip_seam and path.closed and k == n:
            continue
        e, eta = cov[v]
        g = CX if eta*mid_sign > 0 else CXd
        mid.append((g, (psites[k-1], e.site)))
    return cfix + chain + mid + [(CXd,(a,b)) for (m,(a,b)) in reversed(chain)] + cfix

def run_stack(stack, ops):
    for m, s in ops:
        stack = sim.apply_matrix_stack(stack, m, list(s), reg)
    return stack

# zero-holonomy projector on path edges (sum of digits = 0 mod 3)
digits = np.zeros((N, len(edge_sites)), dtype=np.int64)
idx = np.arange(N)
for k in range(len(edge_sites)-1, -1, -1):
    digits[:, k] = idx % 3; idx //= 3
col = {s: reg.index(s) for s in edge_sites}
W = (digits[:, col["E[0,0]"]] + digits[:, col["E[1,0]"]]) % 3
P = (W == 0).astype(float)

def E(x,y): return f"E[{x%2},{y%2}]"
def Nn(x,y): return f"N[{x%2},{y%2}]"
def A_term(x,y): return [(E(x,y), Xd), (Nn(x,y), Xd), (E(x-1,y), X), (Nn(x,y-1), X)]
def B_term(x,y): return [(E(x,y), Z), (Nn(x+1,y), Z), (E(x,y+1), Zd), (Nn(x,y), Zd)]
terms = {f"A[{x},{y}]": A_term(x,y) for x in range(2) for y in range(2)}
terms |= {f"B[{x},{y}]": B_term(x,y) for x in range(2) for y in range(2)}

membrane = {"A[0,0]": ["N[0,0]"], "A[1,0]": ["N[1,0]"],
            "B[0,0]": ["E[0,0]"], "B[1,0]": ["E[1,0]"]}

for variant, kw in [("mid+1", dict(mid_sign=+1)), ("mid-1", dict(mid_sign=-1)),
                    ("mid+1 skipseam", dict(mid_sign=+1, skip_seam=True))]:
    U = ucc_ops(path, **kw)
    Udag = [(m.conj().T, s) for m,s in reversed(U)]
    tot, totP = 0, 0
    for name, fac in terms.items():
        facops = [(m,(s,)) for s,m in fac]
        memb = [(C,(s,)) for s in membrane.get(name, [])]
        def a(stack): return run_stack(stack, U + facops + Udag)
        def b(stack): return run_stack(stack, memb + facops + memb)
        ra = sim.operator_frobenius_distance(reg, a, b, chunk=729)
        rp = sim.operator_frobenius_distance(reg, lambda s: a(s*P[:, None]), lambda s: b(s*P[:, None]), chunk=729)
        tot += ra; totP += rp
    print(variant, " full residual", round(tot,9), " zero-holonomy residual", round(totP,9))
