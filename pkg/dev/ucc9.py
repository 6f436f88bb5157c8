exec(open('/root/pkg/dev/ucc8.py').read().split("for name, rows in")[0])
import numpy as np
for name, rows in [("upper-row", ("v[0,1]","v[1,1]")), ("lower-row", ("v[0,0]","v[1,0]"))]:
    B = conj_cols(rows)
    ov = np.abs(np.sum(np.conj(B)*UKW, axis=0))
    na = np.linalg.norm(UKW, axis=0); nb = np.linalg.norm(B, axis=0)
    r = ov/(na*nb)
    print(name, "per-col |cos|: min", round(float(r.min()),6), "max", round(float(r.max()),6))
# is UKW even in the KW image?
Q, _ = np.linalg.qr(KW)
proj = Q @ (Q.conj().T @ UKW)
print("leakage out of KW image:", round(float(np.linalg.norm(UKW - proj)),6), "of", round(float(np.linalg.norm(UKW)),6))
