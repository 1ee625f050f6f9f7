#!/usr/bin/env python3
"""Regenerates the generator fixtures under tests/fixtures/.

Each group is built from an explicit construction (Weyl group reflections,
symplectic transvections, an induced module split by a small MeatAxe), its
order is confirmed with sympy's Schreier-Sims on a faithful permutation
action, and the generators are written in the regorb `.gen` text format.

Run from anywhere: python3 tests/fixtures/generate.py
"""

import os
import random

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

HERE = os.path.dirname(os.path.abspath(__file__))
rng = random.Random(20240601)


# --------------------------------------------------------------------------
# linear algebra over GF(p)

def rref(m, p):
    m = m.copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def nullspace(m, p):
    """Basis (rows) of {x : m x = 0}."""
    red, pivots = rref(m, p)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-red[i, f]) % p
        basis.append(x)
    return basis


def spin(vec, gens, p):
    """Echelon basis of the submodule generated by vec."""
    basis = []

    def reduce(v):
        v = v % p
        for b, pc in basis:
            if v[pc]:
                v = (v - v[pc] * b) % p
        return v

    queue = [vec % p]
    while queue:
        v = reduce(queue.pop())
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            continue
        pc = nz[0]
        v = (v * pow(int(v[pc]), p - 2, p)) % p
        # keep the basis fully reduced on pivot columns
        new_basis = []
        for b, bpc in basis:
            if b[pc]:
                b = (b - b[pc] * v) % p
            new_basis.append((b, bpc))
        basis = new_basis + [(v, pc)]
        for g in gens:
            queue.append(g @ v)
    return np.array([b for b, _ in basis], dtype=np.int64)


def restrict(gens, sub, p):
    """Action of gens on the invariant subspace spanned by the rows of sub."""
    k = sub.shape[0]
    out = []
    for g in gens:
        # solve sub^T * c = g * b_i for every basis vector b_i
        aug = np.concatenate([sub.T, (g @ sub.T) % p], axis=1)
        red, pivots = rref(aug, p)
        assert pivots[:k] == list(range(k)), "subspace is not invariant"
        assert all(pc < k for pc in pivots), "subspace is not invariant"
        out.append(red[:k, k:] % p)
    return out


# --------------------------------------------------------------------------
# group orders via a faithful permutation action

def perm_group(gens, p):
    d = gens[0].shape[0]
    idx = {}
    pts = []
    for i in range(d):
        v = tuple(int(x) for x in np.eye(d, dtype=np.int64)[i])
        if v not in idx:
            idx[v] = len(pts)
            pts.append(v)
    i = 0
    while i < len(pts):
        v = np.array(pts[i], dtype=np.int64)
        for g in gens:
            w = tuple(int(x) for x in (g @ v) % p)
            if w not in idx:
                idx[w] = len(pts)
                pts.append(w)
        i += 1
    perms = []
    for g in gens:
        img = [idx[tuple(int(x) for x in (g @ np.array(v)) % p)] for v in pts]
        perms.append(Permutation(img))
    return PermutationGroup(perms)


def order(gens, p):
    return int(perm_group(gens, p).order())


def random_word(gens, p, length):
    d = gens[0].shape[0]
    w = np.eye(d, dtype=np.int64)
    for _ in range(length):
        w = (w @ rng.choice(gens)) % p
    return w


def two_generators(pool, p, target, tries=400, length=9):
    """Find two words in `pool` generating a group of order `target`."""
    for _ in range(tries):
        a = random_word(pool, p, length)
        b = random_word(pool, p, length)
        if order([a, b], p) == target:
            return [a, b]
    raise RuntimeError("no generating pair found")


# --------------------------------------------------------------------------
# output

def write_gen(name, label, p, k, gens, comment, defpoly=None, scalars="none",
              encode=None):
    d = gens[0].shape[0]
    path = os.path.join(HERE, name)
    with open(path, "w") as f:
        f.write("# %s\n" % comment)
        f.write("# generated by tests/fixtures/generate.py\n")
        f.write("label %s\n" % label)
        if defpoly is None:
            f.write("field %d %d\n" % (p, k))
        else:
            f.write("field %d %d %s\n" % (p, k, " ".join(map(str, defpoly))))
        f.write("dim %d\n" % d)
        for g in gens:
            f.write("gen " + " ".join(str(int(x)) for x in g.flatten()) + "\n")
        f.write("scalars %s\n" % scalars)
    print("wrote", name)


# --------------------------------------------------------------------------
# constructions

def cartan(kind):
    if kind == "E6":
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        n = 6
    elif kind == "E7":
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]
        n = 7
    a = 2 * np.eye(n, dtype=np.int64)
    for i, j in edges:
        a[i - 1, j - 1] = a[j - 1, i - 1] = -1
    return a


def reflections(a, p):
    n = a.shape[0]
    out = []
    for i in range(n):
        s = np.eye(n, dtype=np.int64)
        s[i] = (s[i] - a[i]) % p
        out.append(s % p)
    return out


def even_words(gens, p):
    return [(gens[i] @ gens[j]) % p for i in range(len(gens))
            for j in range(len(gens)) if i != j]


def quotient_by_radical(gens, a, p):
    """Action on (Z^n / pZ^n) / radical of the Cartan form."""
    rad = nullspace(a % p, p)
    assert len(rad) == 1
    r = rad[0]
    piv = int(np.nonzero(r)[0][0])
    n = a.shape[0]
    keep = [i for i in range(n) if i != piv]
    inv = pow(int(r[piv]), p - 2, p)
    out = []
    for g in gens:
        m = np.zeros((n - 1, n - 1), dtype=np.int64)
        for cj, j in enumerate(keep):
            col = g[:, j] % p
            col = (col - col[piv] * inv * r) % p
            for ci, i in enumerate(keep):
                m[ci, cj] = col[i]
        out.append(m)
    return out


def gf4_block(x):
    """GF(4) element (code a + 2b meaning a + b*w, w^2 = w + 1) as a 2x2 GF(2) matrix."""
    a, b = x & 1, x >> 1
    w = np.array([[0, 1], [1, 1]], dtype=np.int64)
    return (a * np.eye(2, dtype=np.int64) + b * w) % 2


def expand_gf4(m):
    d = len(m)
    out = np.zeros((2 * d, 2 * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = gf4_block(m[i][j])
    return out


def gf4_mul(x, y):
    # polynomial basis, modulus w^2 + w + 1
    a0, a1 = x & 1, x >> 1
    b0, b1 = y & 1, y >> 1
    c0 = a0 * b0
    c1 = a0 * b1 + a1 * b0
    c2 = a1 * b1
    c0 += c2
    c1 += c2
    return (c0 % 2) | ((c1 % 2) << 1)


def build_l2_4():
    # SL2(4) on GF(4)^2, written over GF(2)
    a = expand_gf4([[2, 2], [0, 3]])
    b = expand_gf4([[0, 1], [1, 0]])
    gens = [a, b]
    assert order(gens, 2) == 60
    write_gen("l2_4_v4_2.gen", "L2(4)", 2, 1, gens,
              "L2(4) = SL2(4) acting on GF(4)^2 viewed as V4(2)")
    frob = np.zeros((4, 4), dtype=np.int64)
    for i in range(2):
        frob[2 * i:2 * i + 2, 2 * i:2 * i + 2] = np.array([[1, 1], [0, 1]])
    gens2 = [a, b, frob]
    assert order(gens2, 2) == 120
    write_gen("l2_4_2_v4_2.gen", "L2(4).2", 2, 1, gens2,
              "L2(4).2 = SL2(4) with the Frobenius twist, on V4(2)")


def build_l3_2():
    a = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
    b = np.array([[0, 0, 1], [1, 0, 1], [0, 1, 0]], dtype=np.int64)
    gens = [a, b]
    assert order(gens, 2) == 168
    write_gen("l3_2_v3_2.gen", "L3(2)", 2, 1, gens,
              "L3(2) = GL3(2) on its natural module V3(2)")


def build_sp4_2():
    j = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
                 dtype=np.int64)
    trans = []
    for bits in range(1, 16):
        v = np.array([(bits >> i) & 1 for i in range(4)], dtype=np.int64)
        t = (np.eye(4, dtype=np.int64) + np.outer(v, j @ v)) % 2
        trans.append(t)
    assert order(trans, 2) == 720
    gens = two_generators(trans, 2, 720)
    write_gen("l2_9_2_1_v4_2.gen", "L2(9).2_1", 2, 1, gens,
              "L2(9).2_1 = S6 = Sp4(2) on its natural module V4(2)")
    gens_a6 = two_generators(even_words(trans, 2), 2, 360)
    write_gen("l2_9_v4_2.gen", "L2(9)", 2, 1, gens_a6,
              "L2(9) = A6 = Sp4(2)' on V4(2)")


def build_u4_2():
    a = cartan("E6")
    refl = reflections(a, 2)
    assert order(refl, 2) == 51840
    gens = two_generators(refl, 2, 51840)
    write_gen("u4_2_2_v6_2.gen", "U4(2).2", 2, 1, gens,
              "U4(2).2 = W(E6) on the E6 root lattice mod 2, V6(2)")
    gens_rot = two_generators(even_words(refl, 2), 2, 25920)
    write_gen("u4_2_v6_2.gen", "U4(2)", 2, 1, gens_rot,
              "U4(2) = W(E6)^+ on V6(2)")

    refl3 = quotient_by_radical(reflections(a, 3), a, 3)
    assert order(refl3, 3) == 51840
    gens = two_generators(refl3, 3, 51840)
    write_gen("u4_2_2_v5_3.gen", "U4(2).2", 3, 1, gens,
              "U4(2).2 = W(E6) on the 5-dim quotient of the E6 lattice mod 3")
    gens_rot = two_generators(even_words(refl3, 3), 3, 25920)
    write_gen("u4_2_v5_3.gen", "U4(2)", 3, 1, gens_rot,
              "U4(2) = W(E6)^+ on V5(3)")
    minus = (2 * np.eye(5, dtype=np.int64)) % 3
    assert order(gens_rot + [minus], 3) == 51840
    write_gen("2xu4_2_v5_3.gen", "2xU4(2)", 3, 1, gens_rot + [minus],
              "2 x U4(2) = <W(E6)^+, -1> on V5(3)")


def build_sp6_2():
    a = cartan("E7")
    refl = reflections(a, 3)
    assert order(refl, 3) == 2903040
    gens = two_generators(refl, 3, 2903040)
    write_gen("2xpsp6_2_v7_3.gen", "2xPSp6(2)", 3, 1, gens,
              "2 x PSp6(2) = W(E7) on the E7 root lattice mod 3, V7(3)")
    gens_rot = two_generators(even_words(refl, 3), 3, 1451520)
    write_gen("psp6_2_v7_3.gen", "PSp6(2)", 3, 1, gens_rot,
              "PSp6(2) = W(E7)^+ on V7(3)")


def build_l2_13():
    q = 13
    dlog = {}
    x = 1
    for e in range(q - 1):
        dlog[x] = e
        x = (x * 2) % q

    def mobius(m, pt):
        (a, b), (c, d) = m
        if pt is None:
            return None if c % q == 0 else (a * pow(c, q - 2, q)) % q
        num = (a * pt + b) % q
        den = (c * pt + d) % q
        return None if den == 0 else (num * pow(den, q - 2, q)) % q

    points = [None] + list(range(q))

    def coset_rep(pt):
        return ((1, 0), (0, 1)) if pt is None else ((pt, 1), (1, 0))

    def mat_mul2(x, y):
        return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) % q
                           for j in range(2)) for i in range(2))

    def mat_inv2(m):
        (a, b), (c, d) = m
        det = (a * d - b * c) % q
        inv = pow(det, q - 2, q)
        return ((d * inv % q, -b * inv % q), (-c * inv % q, a * inv % q))

    def induced(g):
        n = len(points)
        m = [[0] * n for _ in range(n)]
        for i, pt in enumerate(points):
            img = mobius(g, pt)
            j = points.index(img)
            b = mat_mul2(mat_inv2(coset_rep(img)), mat_mul2(g, coset_rep(pt)))
            assert b[1][0] % q == 0
            ratio = (b[0][0] * pow(b[1][1], q - 2, q)) % q
            k = dlog[ratio] % 3
            m[j][i] = [1, 2, 3][k]  # w^0, w^1, w^2 as GF(4) codes
        return m

    def gf4_mat_mul(x, y):
        n = len(x)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc ^= gf4_mul(x[i][k], y[k][j])
                out[i][j] = acc
        return out

    u = ((1, 1), (0, 1))
    w = ((0, q - 1), (1, 0))
    dg = ((2, 0), (0, 1))
    # homomorphism spot check
    for x, y in [(u, w), (w, dg), (dg, u)]:
        assert gf4_mat_mul(induced(x), induced(y)) == induced(mat_mul2(x, y))

    big = [expand_gf4(induced(g)) for g in (u, w, dg)]
    for attempt in range(2000):
        words = [random_word(big, 2, rng.randint(1, 6)) for _ in range(4)]
        a = sum(rng.randint(0, 1) * wd for wd in words) % 2
        null = nullspace(a, 2)
        if len(null) != 2:
            continue
        sub = spin(null[0], big, 2)
        if sub.shape[0] == 14:
            break
    else:
        raise RuntimeError("MeatAxe split failed")
    small = restrict(big, sub, 2)
    psl = small[:2]
    pgl = small
    assert order(psl, 2) == 1092
    assert order(pgl, 2) == 2184
    write_gen("l2_13_v14_2.gen", "L2(13)", 2, 1, psl,
              "L2(13) on the 14-dim GF(2)-module (induced from an order-3 "
              "Borel character, split from the 28-dim realisation)")
    write_gen("l2_13_2_v14_2.gen", "L2(13).2", 2, 1, pgl,
              "L2(13).2 = PGL2(13) on the same V14(2)")


if __name__ == "__main__":
    build_l3_2()
    build_l2_4()
    build_sp4_2()
    build_u4_2()
    build_l2_13()
    build_sp6_2()
