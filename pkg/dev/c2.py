import sys
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import (build_group, irreps, inner_automorphism,
                            inversion_automorphism, identity_automorphism)
from qdouble.gauging import (vertex_symmetry_case, charge_edge_case,
                             automorphism_vertex_case, automorphism_edge_case,
                             pushthrough_verify)

worst = 0.0
for gname in ("Z3", "S3"):
    G = build_group(gname)
    for g in range(G.order):
        r = pushthrough_verify(vertex_symmetry_case(G, g), G)
        worst = max(worst, r)
    for irr in irreps(G):
        for i in range(irr.dimension):
            for j in range(irr.dimension):
                r = pushthrough_verify(charge_edge_case(G, irr, i, j), G)
                worst = max(worst, r)
print("G-gauging-props worst", worst)

worst = 0.0
Z3 = build_group("Z3")
for O in (identity_automorphism(Z3), inversion_automorphism(Z3)):
    worst = max(worst, pushthrough_verify(automorphism_vertex_case(Z3, O), Z3))
    worst = max(worst, pushthrough_verify(automorphism_edge_case(Z3, O), Z3))
S3 = build_group("S3")
for h in range(6):
    O = inner_automorphism(S3, h)
    worst = max(worst, pushthrough_verify(automorphism_vertex_case(S3, O), S3))
    worst = max(worst, pushthrough_verify(automorphism_edge_case(S3, O), S3))
print("automorphism identities worst", worst)
