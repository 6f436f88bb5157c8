exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
import numpy as np

# flux-free projector: all four plaquettes flat
col = {s: reg.index(s) for s in edge_sites}
def holp(x, y):  # B_p digit sum: E[x,y] + N[x+1,y] - E[x,y+1] - N[x,y]
    return (digits[:, col[f"E[{x%2},{y%2}]"]] + digits[:, col[f"N[{(x+1)%2},{y%2}]"]]
            - digits[:, col[f"E[{x%2},{(y+1)%2}]"]] - digits[:, col[f"N[{x%2},{y%2}]"]]) % 3
flat = np.ones(N, dtype=bool)
for x in range(2):
    for y in range(2):
        flat &= (holp(x, y) == 0)
Pflat = flat.astype(float)
Pzh = Pflat * P  # additionally zero x-holonomy

U = ucc_ops(path, mid_sign=+1)
M = run_stack(np.eye(N, dtype=complex), U)
Cmemb = run_stack(np.eye(N, dtype=complex), [(C, ("N[0,0]",)), (C, ("N[1,0]",))])
for name, PP in [("flat", Pflat), ("flat+zeroholo", Pzh), ("zeroholo-only", P)]:
    sel = np.nonzero(PP)[0]
    A = M[np.ix_(sel, sel)]; B = Cmemb[np.ix_(sel, sel)]
    num = np.vdot(B, A); den = np.vdot(B, B)
    ph = num/den if den else 0
    print(name, "dim", len(sel), "phase", np.round(ph, 6),
          "resid", round(float(np.linalg.norm(A - ph*B)), 8))
