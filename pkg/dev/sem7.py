"""Search for open-ribbon crossing geometry with semion statistics.

Each s/sbar ribbon is an X-string times a diagonal.  For R1 = X_{s1} D1,
R2 = X_{s2} D2 the commutator phase function is
  Phi(z) = D2(z^s1) D1(z) / (D1(z^s2) D2(z)).
Per edge e, diag content R^r (iZ)^zc flips to (-i(-1)^{z_e})^r (-1)^{zc}.
Scalar iff for every edge: r1(e)*[e in s2] + r2(e)*[e in s1] is even.
"""
import itertools, math, sys
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice
from qdouble import ribbons


def profile(circ):
    sx = set()
    rc, zc = {}, {}
    for g in circ.gates:
        e = g.sites[0]
        k = g.spec.kind
        if k == "ShiftX":
            sx ^= {e}
        elif k == "Phase_R":
            rc[e] = rc.get(e, 0) + 1
        elif k == "CustomMatrix":
            zc[e] = zc.get(e, 0) + 1
        else:
            raise ValueError(k)
    return sx, rc, zc


def comm_phase(p1, p2):
    sx1, rc1, zc1 = p1
    sx2, rc2, zc2 = p2
    phase = 1.0 + 0j
    for e in sx1 | sx2 | set(rc1) | set(rc2) | set(zc1) | set(zc2):
        r1 = rc1.get(e, 0) if e in sx2 else 0
        r2 = rc2.get(e, 0) if e in sx1 else 0
        if (r1 + r2) % 2:
            return None
        z1 = zc1.get(e, 0) if e in sx2 else 0
        z2 = zc2.get(e, 0) if e in sx1 else 0
        phase *= (-1j) ** r1 * (1j) ** r2 * (-1) ** (z1 + z2)
    return phase


lat = build_lattice("triangular3", 6, 6, boundary="open")

membranes = [
    [(2, 2), (3, 2)],
    [(2, 2), (2, 3)],
    [(3, 2), (2, 3)],
    [(2, 2), (3, 2), (2, 3)],
    [(3, 2)],
    [(2, 3)],
    [(2, 2)],
]

angles = [k * math.pi / 6 for k in range(12)]
spans = [2 * math.pi / 3, math.pi, 4 * math.pi / 3, 5 * math.pi / 3]

# cache of profiles: (mi, a0, span, which) -> profile
cache = {}


def prof(mi, a0, span, which):
    key = (mi, round(a0, 9), round(span, 9), which)
    if key not in cache:
        c = ribbons.open_semion_ribbon(lat, which, membranes[mi],
                                       (a0, a0 + span))
        cache[key] = profile(c)
    return cache[key]


hits = []
for mi, mj in itertools.combinations_with_replacement(range(len(membranes)), 2):
    for a0, s0 in itertools.product(angles, spans):
        p1s = prof(mi, a0, s0, "s")
        if not p1s[0]:
            continue
        for a1, s1 in itertools.product(angles, spans):
            if mi == mj and (a1, s1) == (a0, s0):
                continue
            p2s = prof(mj, a1, s1, "s")
            if not p2s[0]:
                continue
            ph_ss = comm_phase(p1s, p2s)
            if ph_ss is None or abs(ph_ss + 1) > 1e-9:
                continue
            p1b = prof(mi, a0, s0, "sbar")
            p2b = prof(mj, a1, s1, "sbar")
            ph_bb = comm_phase(p1b, p2b)
            ph_sb = comm_phase(p1s, p2b)
            ph_bs = comm_phase(p1b, p2s)
            if ph_bb is None or ph_sb is None or ph_bs is None:
                continue
            if (abs(ph_bb + 1) < 1e-9 and abs(ph_sb - 1) < 1e-9
                    and abs(ph_bs - 1) < 1e-9):
                support = len(p1s[0] | p2s[0] | set(p1s[1]) | set(p2s[1])
                              | set(p1s[2]) | set(p2s[2]))
                hits.append((support, mi, a0, s0, mj, a1, s1))

hits.sort()
print(f"{len(hits)} hits")
for h in hits[:15]:
    sup, mi, a0, s0, mj, a1, s1 = h
    print(f"support={sup} M1={membranes[mi]} arc1=({a0:.3f},{a0+s0:.3f}) "
          f"M2={membranes[mj]} arc2=({a1:.3f},{a1+s1:.3f})")
