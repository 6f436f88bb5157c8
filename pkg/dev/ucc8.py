exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
import numpy as np
from qdouble.gauging import GaugingPlan, kw2d_apply
from qdouble.sim import make_register, make_product_state, Register

# KW columns: gauge each vertex basis config of the 2x2 torus
vreg = Register(tuple((f"v[{x},{y}]", 3) for x in range(2) for y in range(2)))
plan = GaugingPlan(lat, G)
cols = []
import itertools
for cfg in itertools.product(range(3), repeat=4):
    st = make_product_state(vreg, {s: c for s, c in zip(vreg.site_ids, cfg)})
    gst, wt = kw2d_apply(st, plan)
    # align edge ordering with reg
    perm = [gst.register.index(s) for s in edge_sites]
    amp = np.transpose(gst.amplitudes.reshape(gst.register.dims), perm).ravel()
    cols.append(amp * np.sqrt(wt))
KW = np.array(cols).T   # N x 81
print("KW col norms", np.unique(np.round(np.linalg.norm(KW, axis=0), 9)))

U = ucc_ops(path, mid_sign=+1)
UKW = run_stack(KW.copy(), U)

Cv = np.zeros((3, 3)); Cv[0,0]=1; Cv[1,2]=1; Cv[2,1]=1
def conj_cols(rows):
    # apply C on chosen vertex qutrits in the 81-dim column index
    M81 = np.eye(1)
    for s in vreg.site_ids:
        M81 = np.kron(M81, Cv if s in rows else np.eye(3))
    return KW @ M81.T   # columns permuted: KW * (C acting on input index)

for name, rows in [("upper-row", ("v[0,1]","v[1,1]")),
                   ("lower-row", ("v[0,0]","v[1,0]")),
                   ("all", tuple(vreg.site_ids)), ("none", ())]:
    B = conj_cols(rows)
    num = np.vdot(B, UKW); den = np.vdot(B, B)
    ph = num/den
    resid = float(np.linalg.norm(UKW - ph*B))
    print(name, "phase", np.round(ph, 6), "resid", round(resid, 9))
