import numpy as np
from qdouble.groups import build_group
from qdouble.lattice import build_lattice
from qdouble.sim import *
from qdouble.gauging import *

G = build_group("Z3")
lat = build_lattice("square", 3, 3, "torus")

# single vertex patch: vertex (1,1) with its 4 incident edges (dangling)
patch = patch_from_lattice(lat, [(1,1)])
print(patch)
kw = kw_patch_matrix(patch, G)
print("kw shape", kw.shape, "isometry?", np.linalg.norm(kw.conj().T@kw - np.eye(3)/ (np.abs((kw.conj().T@kw)[0,0])**0 if True else 1)))
print("kw^dag kw =", np.round(kw.conj().T@kw, 6))

X = gate_matrix(GateSpec("ShiftX",(3,)))
Xd = X.conj().T
v = patch.vertex_sites[0]
# out edges: tail == v; in edges: head == v
outs = [e for e,t,h in patch.edges if t == v]
ins  = [e for e,t,h in patch.edges if h == v]
print("outs", outs, "ins", ins)
pre = OperatorTerm(((v, X),))
for name, (mo, mi) in {"X(out)Xd(in)": (X, Xd), "Xd(out)X(in)": (Xd, X)}.items():
    post = OperatorTerm(tuple([(e, mo) for e in outs] + [(e, mi) for e in ins]))
    r = pushthrough_verify(PushThroughCase("t", patch, pre, post), G)
    print("A_v =", name, "residual", r)

# edge rule: two vertices (1,1),(2,1) joined by E[1,1]; patch = just that edge
from qdouble.lattice import Edge
vs = (lat.vertex_site((1,1)), lat.vertex_site((2,1)))
patch2 = Patch(vs, (("E[1,1]", vs[0], vs[1]),))
kw2 = kw_patch_matrix(patch2, G)
Z = gate_matrix(GateSpec("ClockZ",(3,)))
Zd = Z.conj().T
import itertools
for name, (mt, mh) in {"Zd(tail)Z(head)": (Zd, Z), "Z(tail)Zd(head)": (Z, Zd)}.items():
    pre = OperatorTerm(((vs[0], mt), (vs[1], mh)))
    post = OperatorTerm((("E[1,1]", Z),))
    r = pushthrough_verify(PushThroughCase("e", patch2, pre, post), G)
    print("edge rule", name, "-> Z(edge), residual", r)
