import numpy as np, itertools
from qdouble.groups import *
from qdouble.lattice import build_lattice
from qdouble.sim import *
from qdouble.gauging import *

lat = build_lattice("square", 3, 3, "torus")

def Lm(G,g): return gate_matrix(GateSpec("L_g",(g,)), G)
def Rm(G,g): return gate_matrix(GateSpec("R_g",(g,)), G)
def Tm(G,g): return gate_matrix(GateSpec("T_g",(g,)), G)
def Zm(G,ir,i,j): return gate_matrix(GateSpec("Z_Gij",(ir,i,j)), G)

for gname in ["Z3","S3"]:
    G = build_group(gname)
    patch = patch_from_lattice(lat, [(1,1)])
    v = patch.vertex_sites[0]
    outs = [e for e,t,h in patch.edges if t == v]
    ins  = [e for e,t,h in patch.edges if h == v]
    def A_of(g):  # A_g = R_g on out edges, L_g on in edges
        return OperatorTerm(tuple([(e, Rm(G,g)) for e in outs] + [(e, Lm(G,g)) for e in ins]))
    # vertex rule L_g -> A_g
    worst = 0
    for g in range(G.order):
        r = pushthrough_verify(rule_case("v", patch, OperatorTerm(((v, Lm(G,g)),)), A_of(g)), G)
        worst = max(worst, r)
    print(gname, "L_g -> A_g worst residual", worst)
    # edge rule: sum_k Z(head,ik) Zdag(tail,jk) -> Z(edge,ij)
    vs = (lat.vertex_site((1,1)), lat.vertex_site((2,1)))
    patch2 = Patch(vs, (("E[1,1]", vs[0], vs[1]),))
    worst = 0
    for ir in irreps(G):
        d = ir.dimension
        for i,j in itertools.product(range(d), repeat=2):
            lhs = tuple((OperatorTerm(((vs[1], Zm(G,ir,i,k)), (vs[0], Zm(G,ir,j,k).conj().T))), None) for k in range(d))
            rhs = ((None, OperatorTerm((("E[1,1]", Zm(G,ir,i,j)),))),)
            r = pushthrough_verify(PushThroughCase("e", patch2, lhs, rhs), G)
            worst = max(worst, r)
    print(gname, "edge irrep rule worst residual", worst)
    # outer/vertex automorphism rule: KW O^(v) = sum_g A_{Omega(g)} KW T_g
    autos = [inversion_automorphism(G)] if gname=="Z3" else [inner_automorphism(G,1), inner_automorphism(G,2)]
    for O in autos:
        Omat = np.zeros((G.order,G.order), complex)
        for g in range(G.order): Omat[O.map[g], g] = 1
        lhs = ((OperatorTerm(((v, Omat),)), None),)
        rhs = tuple((OperatorTerm(((v, Tm(G,g)),)), A_of(automorphism_action(G,O,g)[1])) for g in range(G.order))
        r = pushthrough_verify(PushThroughCase("ov", patch, lhs, rhs), G)
        print(gname, O.label, "vertex auto rule residual", r)
        # edge automorphism rule: O^(e) KW = sum_{g,h} R_{Omega(?)} L_{Omega(?)} KW (T_h head x T_g tail)
        for variant in ["R_Om(g_tail) L_Om(h_head)", "R_Om(gbar_tail) L_Om(h_head)"]:
            lhs = ((None, OperatorTerm((("E[1,1]", Omat),))),)
            rhs = []
            for g in range(G.order):
                for h in range(G.order):
                    om_h = automorphism_action(G,O,h)[1]
                    gg = g if variant.startswith("R_Om(g_tail)") else G.i(g)
                    om_g = automorphism_action(G,O,gg)[1]
                    edge_op = Rm(G, om_g) @ Lm(G, om_h)
                    rhs.append((OperatorTerm(((vs[1], Tm(G,h)), (vs[0], Tm(G,g)))),
                                OperatorTerm((("E[1,1]", edge_op),))))
            r = pushthrough_verify(PushThroughCase("oe", patch2, lhs, tuple(rhs)), G)
            print(gname, O.label, "edge auto rule", variant, "residual", round(r,12))
