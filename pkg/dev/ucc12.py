import numpy as np
from qdouble.lattice import build_lattice, oriented_path
from qdouble import ribbons, verify

lat = build_lattice("square", 2, 2, "torus")
path = oriented_path(lat, [(0,0),(1,0),(0,0)], side="left")
U = ribbons.compile_cc_defect(path)
print("gates:", [(g.spec.kind, g.sites, g.power) for g in U.gates])

def A(x, y):
    return verify.Monomial(3, {f"E[{x%2},{y%2}]": (2,0), f"N[{x%2},{y%2}]": (2,0),
                               f"E[{(x-1)%2},{y%2}]": (1,0), f"N[{x%2},{(y-1)%2}]": (1,0)})
def B(x, y):
    return verify.Monomial(3, {f"E[{x%2},{y%2}]": (0,1), f"N[{(x+1)%2},{y%2}]": (0,1),
                               f"E[{x%2},{(y+1)%2}]": (0,2), f"N[{x%2},{y%2}]": (0,2)})

for name, m in [("A00", A(0,0)), ("A10", A(1,0)), ("A01", A(0,1)), ("A11", A(1,1)),
                ("B00", B(0,0)), ("B10", B(1,0)), ("B01", B(0,1)), ("B11", B(1,1))]:
    out = verify.conjugate_monomial(U, m)
    print(name, "->", out)

print("=== inverse circuit conjugation ===")
Ui = U.inverse()
for name, m in [("A00", A(0,0)), ("A10", A(1,0)), ("A01", A(0,1)), ("A11", A(1,1)),
                ("B00", B(0,0)), ("B10", B(1,0)), ("B01", B(0,1)), ("B11", B(1,1))]:
    out = verify.conjugate_monomial(Ui, m)
    print(name, "->", out)
