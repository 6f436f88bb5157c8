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

# closed horizontal loop at y=0: vertices (0,0),(1,0),(0,0)
path = oriented_path(lat, [(0,0),(1,0),(0,0)], side="left")
print("path edges:", [(e.site, s) for e,s in path.edges])
print("e_v:", [(v, e.site if e else None) for v,e in path.e_v], "eta:", path.eta)

# U_cc gate list: layering per main-text defect circuit
def ucc_ops(path):
    ops = []   # list of (matrix, sites)
    n = len(path.edges)
    psites = [e.site for e,_ in path.edges]
    signs = [s for _,s in path.edges]
    # orientation fix: C on backward-traversed path edges
    cfix = [(C, (s,)) for s,(e,sg) in zip(psites, path.edges) if sg < 0]
    ops += cfix
    # layer 1: ascending CX chain (ungauge) -- site i_k then carries vertex v_k dof
    chain = [(CX, (psites[k], psites[k+1])) for k in range(n-1)]
    ops += chain
    # layer 2: CX^eta from path site i_k to e_{v_k}; v_k = path.vertices[k] for k=1..n-1, and v_n=v_0
    cov = {v: (e, eta) for (v,e), eta in zip(path.e_v, path.eta)}
    mid = []
    for k in range(1, n+1):
        v = path.vertices[k] if k < len(path.vertices)-0 else None
        v = path.vertices[k % (len(path.vertices)-1)] if path.closed else path.vertices[k]
        e, eta = cov[v]
        mid.append((CX if eta>0 else CXd, (psites[k-1], e.site)))
    ops += mid
    # layer 3: inverse chain, then C fix
    ops += [(CXd, (a,b)) for (m,(a,b)) in reversed(chain)]
    ops += cfix
    return ops

U = ucc_ops(path)
Udag = [(m.conj().T, s) for m,s in reversed(U)]

def run_stack(stack, ops):
    for m, s in ops:
        stack = sim.apply_matrix_stack(stack, m, list(s), reg)
    return stack

def monomial_of(ops):
    perm = np.zeros(N, dtype=np.int64); phase = np.zeros(N, dtype=complex)
    for start, block in sim.basis_columns(reg, 729):
        out = run_stack(block, ops)
        idx = np.abs(out).argmax(axis=0)
        perm[start:start+block.shape[1]] = idx
        phase[start:start+block.shape[1]] = out[idx, np.arange(block.shape[1])]
        assert np.allclose(np.abs(out).sum(axis=0), np.abs(phase[start:start+block.shape[1]])), "not monomial"
    return perm, phase

def mono_compose(a, b):
    # (a o b)|x> = a(b|x>)
    pb, fb = b; pa, fa = a
    return pa[pb], fb * fa[pb]

def mono_of_factors(factors):
    ops = [(m, (s,)) for s, m in factors]
    return monomial_of(ops)

def E(x,y): return f"E[{x%2},{y%2}]"
def Nn(x,y): return f"N[{x%2},{y%2}]"

def A_term(x,y):
    return [(E(x,y), Xd), (Nn(x,y), Xd), (E(x-1,y), X), (Nn(x,y-1), X)]
def B_term(x,y):
    return [(E(x,y), Z), (Nn(x+1,y), Z), (E(x,y+1), Zd), (Nn(x,y), Zd)]

terms = {f"A[{x},{y}]": A_term(x,y) for x in range(2) for y in range(2)}
terms |= {f"B[{x},{y}]": B_term(x,y) for x in range(2) for y in range(2)}

monoC = {s: mono_of_factors([(s, C)]) for s in edge_sites}

results = {}
for name, fac in terms.items():
    m_s = mono_of_factors(fac)
    m_usu = monomial_of(U + [(m,(s,)) for s,m in fac] + Udag)
    # search C-membranes
    matches = []
    for r in range(9):
        for sub in itertools.combinations(edge_sites, r):
            m = m_s
            for s in sub:
                m = mono_compose(monoC[s], mono_compose(m, monoC[s]))
            if np.array_equal(m[0], m_usu[0]) and np.allclose(m[1], m_usu[1]):
                matches.append(sub)
        if matches: break
    results[name] = matches
    print(name, "-> minimal C-membranes:", matches)
