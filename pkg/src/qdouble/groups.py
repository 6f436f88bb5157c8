"""Finite-group tables: multiplication, inverses, classes, irreps, automorphisms.

Supported groups: Z2, Z3, Z2^3, S3, D4, Q8.  Elements are dense integer
indices 0..|G|-1 with index 0 always the identity, so that hot loops are
branch-free table lookups.  Irrep matrices are hardcoded (six small groups,
determinism matters) and validated against the Schur orthogonality relations
at build time.

Encodings:
  Z2    : n, addition mod 2
  Z3    : n, addition mod 3
  Z2^3  : bit-triple b2 b1 b0 packed as an integer, XOR
  S3    : mu^a sigma^b  ->  2a + b   (a in 0..2, b in 0..1)
  D4    : r^a s^b       ->  2a + b   (a in 0..3, b in 0..1)
  Q8    : 1,-1,i,-i,j,-j,k,-k in that order
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)

GROUP_NAMES = ("Z2", "Z3", "Z2^3", "S3", "D4", "Q8")


class UnsupportedGroupError(ValueError):
    pass


@dataclass(frozen=True)
class Irrep:
    label: str
    dimension: int
    matrices: tuple  # tuple of d x d complex ndarrays, indexed by element

    def entry(self, i: int, j: int, g: int) -> complex:
        return self.matrices[g][i, j]


@dataclass(frozen=True)
class Automorphism:
    map: tuple  # index table g -> O(g)
    is_outer: bool
    label: str = ""


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    order: int
    mul: np.ndarray          # order x order int table
    inv: np.ndarray          # int table
    element_labels: tuple
    identity: int = 0
    _irreps: tuple = field(default=None, repr=False, compare=False)

    def m(self, g: int, h: int) -> int:
        return int(self.mul[g, h])

    def i(self, g: int) -> int:
        return int(self.inv[g])

    def product(self, *gs: int) -> int:
        acc = self.identity
        for g in gs:
            acc = int(self.mul[acc, g])
        return acc


def _table_from_mul(elements, mul_fn):
    n = len(elements)
    index = {e: k for k, e in enumerate(elements)}
    mul = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            mul[a, b] = index[mul_fn(elements[a], elements[b])]
    return mul


def _inverse_table(mul):
    n = mul.shape[0]
    inv = np.zeros(n, dtype=np.int64)
    for a in range(n):
        hits = np.where(mul[a] == 0)[0]
        if len(hits) != 1:
            raise ValueError("not a group table")
        inv[a] = hits[0]
    return inv


# ---------------------------------------------------------------------------
# Construction of the six supported groups.
# ---------------------------------------------------------------------------

def _build_cyclic(n, name):
    mul = _table_from_mul(list(range(n)), lambda a, b: (a + b) % n)
    labels = tuple(str(k) for k in range(n))
    return name, n, mul, labels


def _build_z2cubed():
    mul = _table_from_mul(list(range(8)), lambda a, b: a ^ b)
    labels = tuple(format(k, "03b") for k in range(8))
    return "Z2^3", 8, mul, labels


def _build_s3():
    # (a1,b1)(a2,b2) = mu^{a1 + (-1)^{b1} a2} sigma^{b1+b2}, from sigma mu = mu^-1 sigma
    elements = [(a, b) for a in range(3) for b in range(2)]  # index 2a+b

    def mul_fn(x, y):
        (a1, b1), (a2, b2) = x, y
        return ((a1 + (a2 if b1 == 0 else -a2)) % 3, (b1 + b2) % 2)

    mul = _table_from_mul(elements, mul_fn)
    labels = tuple(
        {(0, 0): "e", (0, 1): "s", (1, 0): "u", (1, 1): "us",
         (2, 0): "uu", (2, 1): "uus"}[e] for e in elements)
    return "S3", 6, mul, labels


def _build_d4():
    elements = [(a, b) for a in range(4) for b in range(2)]  # index 2a+b

    def mul_fn(x, y):
        (a1, b1), (a2, b2) = x, y
        return ((a1 + (a2 if b1 == 0 else -a2)) % 4, (b1 + b2) % 2)

    mul = _table_from_mul(elements, mul_fn)
    labels = tuple(("r%d" % a) + ("s" if b else "") if (a, b) != (0, 0) else "e"
                   for (a, b) in elements)
    return "D4", 8, mul, labels


_QUAT_UNITS = {
    0: np.eye(2, dtype=complex),
    1: -np.eye(2, dtype=complex),
    2: np.array([[1j, 0], [0, -1j]]),
    3: np.array([[-1j, 0], [0, 1j]]),
    4: np.array([[0, 1], [-1, 0]], dtype=complex),
    5: np.array([[0, -1], [1, 0]], dtype=complex),
    6: np.array([[0, 1j], [1j, 0]]),
    7: np.array([[0, -1j], [-1j, 0]]),
}


def _build_q8():
    def find(m):
        for k, u in _QUAT_UNITS.items():
            if np.allclose(u, m):
                return k
        raise AssertionError("closed table lookup failed")

    mul = _table_from_mul(list(range(8)),
                          lambda a, b: find(_QUAT_UNITS[a] @ _QUAT_UNITS[b]))
    labels = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    return "Q8", 8, mul, labels


_BUILDERS = {
    "Z2": lambda: _build_cyclic(2, "Z2"),
    "Z3": lambda: _build_cyclic(3, "Z3"),
    "Z2^3": _build_z2cubed,
    "S3": _build_s3,
    "D4": _build_d4,
    "Q8": _build_q8,
}


def build_group(name: str) -> FiniteGroup:
    if name not in _BUILDERS:
        raise UnsupportedGroupError(f"unsupported group {name!r}; "
                                    f"known: {', '.join(GROUP_NAMES)}")
    gname, order, mul, labels = _BUILDERS[name]()
    inv = _inverse_table(mul)
    group = FiniteGroup(gname, order, mul, inv, labels)
    object.__setattr__(group, "_irreps", _make_irreps(group))
    _validate_irreps(group)
    return group


# ---------------------------------------------------------------------------
# Irreducible representations (hardcoded generators, extended by products).
# ---------------------------------------------------------------------------

def _irrep_from_chars(label, chars):
    mats = tuple(np.array([[c]], dtype=complex) for c in chars)
    return Irrep(label, 1, mats)


def _make_irreps(G: FiniteGroup):
    n = G.order
    if G.name == "Z2":
        return (_irrep_from_chars("triv", [1, 1]),
                _irrep_from_chars("sgn", [1, -1]))
    if G.name == "Z3":
        return tuple(
            _irrep_from_chars(f"w{k}", [OMEGA ** (k * m) for m in range(3)])
            for k in range(3))
    if G.name == "Z2^3":
        return tuple(
            _irrep_from_chars("chi%03s" % format(m, "03b"),
                              [(-1) ** bin(m & b).count("1") for b in range(8)])
            for m in range(8))
    if G.name == "S3":
        sgn = [1 if g % 2 == 0 else -1 for g in range(6)]
        # 2-dim: mu -> diag(w, w~), sigma -> swap
        swap = np.array([[0, 1], [1, 0]], dtype=complex)
        two = []
        for g in range(6):
            a, b = divmod(g, 2)
            m = np.diag([OMEGA ** a, OMEGA ** (-a)]).astype(complex)
            if b:
                m = m @ swap
            two.append(m)
        return (_irrep_from_chars("triv", [1] * 6),
                _irrep_from_chars("sgn", sgn),
                Irrep("2d", 2, tuple(two)))
    if G.name == "D4":
        ones = []
        for cr, cs in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
            chars = [(cr ** a) * (cs ** b) for a in range(4) for b in range(2)]
            ones.append(_irrep_from_chars(f"chi{cr:+d}{cs:+d}", chars))
        swap = np.array([[0, 1], [1, 0]], dtype=complex)
        two = []
        for g in range(8):
            a, b = divmod(g, 2)
            m = np.diag([1j ** a, (-1j) ** a]).astype(complex)
            if b:
                m = m @ swap
            two.append(m)
        return tuple(ones) + (Irrep("2d", 2, tuple(two)),)
    if G.name == "Q8":
        # 1-dim irreps factor through Q8 / {+-1} = Z2 x Z2
        sign_i = [1, 1, 1, 1, -1, -1, -1, -1]      # -1 on j,k cosets
        sign_j = [1, 1, -1, -1, 1, 1, -1, -1]      # -1 on i,k cosets
        sign_k = [s * t for s, t in zip(sign_i, sign_j)]
        return (
            _irrep_from_chars("triv", [1] * 8),
            _irrep_from_chars("chi_i", sign_j),
            _irrep_from_chars("chi_j", sign_i),
            _irrep_from_chars("chi_k", sign_k),
            Irrep("2d", 2, tuple(_QUAT_UNITS[g].astype(complex) for g in range(8))),
        )
    raise UnsupportedGroupError(G.name)


def irreps(G: FiniteGroup):
    return G._irreps


def _validate_irreps(G: FiniteGroup, tol=1e-12):
    reps = irreps(G)
    if sum(r.dimension ** 2 for r in reps) != G.order:
        raise AssertionError(f"irrep dimension sum mismatch for {G.name}")
    for r in reps:
        for g in range(G.order):
            m = r.matrices[g]
            if np.abs(m.conj().T @ m - np.eye(r.dimension)).max() > tol:
                raise AssertionError(f"{G.name}:{r.label} not unitary at {g}")
            for h in range(G.order):
                if np.abs(r.matrices[g] @ r.matrices[h]
                          - r.matrices[G.m(g, h)]).max() > tol:
                    raise AssertionError(f"{G.name}:{r.label} not a homomorphism")
    # Grand (Schur) orthogonality across all pairs of irreps and entries.
    for ra, rb in itertools.product(reps, reps):
        for i, j in itertools.product(range(ra.dimension), repeat=2):
            for l, m in itertools.product(range(rb.dimension), repeat=2):
                s = sum(np.conj(ra.entry(i, j, g)) * rb.entry(l, m, g)
                        for g in range(G.order))
                want = (G.order / ra.dimension
                        if (ra.label == rb.label and i == l and j == m) else 0.0)
                if abs(s - want) > 1e-10 * G.order:
                    raise AssertionError(
                        f"orthogonality fails: {G.name} {ra.label}/{rb.label}")


# ---------------------------------------------------------------------------
# Conjugacy classes and automorphisms.
# ---------------------------------------------------------------------------

def conjugacy_classes(G: FiniteGroup):
    """Partition of element indices into conjugacy classes (brute force)."""
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        cls = sorted({G.product(h, g, G.i(h)) for h in range(G.order)})
        classes.append(tuple(cls))
        seen.update(cls)
    return tuple(classes)


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(tuple(range(G.order)), is_outer=False, label="id")


def inner_automorphism(G: FiniteGroup, h: int) -> Automorphism:
    table = tuple(G.product(h, g, G.i(h)) for g in range(G.order))
    return Automorphism(table, is_outer=False,
                        label=f"conj[{G.element_labels[h]}]")


def inversion_automorphism(G: FiniteGroup) -> Automorphism:
    """g -> g^-1; an automorphism only for Abelian G (charge conjugation)."""
    table = tuple(G.i(g) for g in range(G.order))
    _check_automorphism(G, table)
    trivial = all(table[g] == g for g in range(G.order))
    return Automorphism(table, is_outer=not trivial, label="inv")


def _check_automorphism(G, table):
    if sorted(table) != list(range(G.order)):
        raise ValueError("automorphism table is not a bijection")
    for g in range(G.order):
        for h in range(G.order):
            if table[G.m(g, h)] != G.m(table[g], table[h]):
                raise ValueError("map is not a homomorphism")


def automorphism_action(G: FiniteGroup, O: Automorphism, g: int):
    """Return (O(g), Omega(g)) with Omega(g) = O(g) gbar."""
    og = O.map[g]
    return og, G.m(og, G.i(g))
