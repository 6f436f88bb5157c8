import numpy as np, itertools
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble.sim import *
from qdouble.gauging import *

G = build_group("Z3")
lat = build_lattice("square", 2, 2, "torus")
reg = Register(tuple((lat.vertex_site(v), 3) for v in lat.vertices))
psi = make_product_state(reg, {s: "I" for s in reg.site_ids})
plan = GaugingPlan(lat, G)
st, w = kw2d_apply(psi, plan)
print("edge sites:", st.register.site_ids, "weight", w, "norm", st.norm())

X = gate_matrix(GateSpec("ShiftX",(3,)))
Z = gate_matrix(GateSpec("ClockZ",(3,)))
Xd, Zd = X.conj().T, Z.conj().T

def term(factors):
    return OperatorTerm(tuple(factors))

def E(x,y): return f"E[{x%2},{y%2}]"
def N(x,y): return f"N[{x%2},{y%2}]"

# A_v candidates at (x,y): out edges E(x,y),N(x,y); in edges E(x-1,y),N(x,y-1)
for name, (mo, mi) in {"A=X(out)Xd(in)": (X, Xd), "A=Xd(out)X(in)": (Xd, X)}.items():
    vals = []
    for x,y in lat.vertices:
        t = term([(E(x,y), mo), (N(x,y), mo), (E(x-1,y), mi), (N(x,y-1), mi)])
        vals.append(expectation(st, t))
    print(name, np.round(vals,6))

# B_p candidates at (x,y): bottom E(x,y), right N(x+1,y), top E(x,y+1), left N(x,y)
for name, (mb, mt) in {"B=Z(bot,right)Zd(top,left)": (Z, Zd), "B=Zd(bot,right)Z(top,left)": (Zd, Z)}.items():
    vals = []
    for x,y in lat.vertices:
        t = term([(E(x,y), mb), (N(x+1,y), mb), (E(x,y+1), mt), (N(x,y), mt)])
        vals.append(expectation(st, t))
    print(name, np.round(vals,6))
