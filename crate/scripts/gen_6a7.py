#!/usr/bin/env python3
"""Build permutation generators for the sixfold cover 6.A7.

A7 = <a, b | a^3, b^5, (ab)^7, (ab^-1ab)^2, (ab^-2ab^2)^2> with a = (1 2 3),
b = (3 4 5 6 7). A central extension of A7 by Z/l is encoded by labels
c(g, x) in Z/l on the edges g -> gx of the right Cayley graph: the label sum
around each relator loop must not depend on the base point. Labels on a BFS
spanning tree are fixed to 0. For l = 2 and l = 3 we solve that linear system
and take a solution that is not of the split form phi(x) + f(g) - f(gx).

The two covers are combined into 6.A7 and reduced to a faithful action on
240 + 45 points (cosets of a Hall 2'-subgroup of the preimage of 7:3, and of
the preimage of the derived subgroup of a lifted L3(2) times Z/2).

Usage: python3 scripts/gen_6a7.py > crates/core/data/6A7.cov
"""
import sys
from collections import deque

import numpy as np

N = 7


def perm_from_cycles(cycles):
    p = list(range(N))
    for c in cycles:
        for i, v in enumerate(c):
            p[v - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def compose(p, q):
    # apply p then q
    return tuple(q[p[i]] for i in range(len(p)))


def inverse(p):
    r = [0] * len(p)
    for i, v in enumerate(p):
        r[v] = i
    return tuple(r)


A = perm_from_cycles([(1, 2, 3)])
B = perm_from_cycles([(3, 4, 5, 6, 7)])
GENS = [A, B]
IDENT = tuple(range(N))

# words over generator indices; negative entries mean inverses
RELATORS = [
    [0, 0, 0],
    [1] * 5,
    [0, 1] * 7,
    [0, -2, 0, 1] * 2,
    [0, -2, -2, 0, 1, 1] * 2,
]


def enumerate_group():
    elems = [IDENT]
    index = {IDENT: 0}
    parent = [None]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for s, g in enumerate(GENS):
            h = compose(elems[i], g)
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
                parent.append((i, s))
                queue.append(index[h])
    return elems, index, parent


ELEMS, INDEX, PARENT = enumerate_group()
ORDER = len(ELEMS)
assert ORDER == 2520
RIGHT = [[INDEX[compose(e, g)] for g in GENS] for e in ELEMS]
RIGHT_INV = [[0] * len(GENS) for _ in ELEMS]
for i in range(ORDER):
    for s in range(len(GENS)):
        RIGHT_INV[RIGHT[i][s]][s] = i

for rel in RELATORS:
    i = 0
    for x in rel:
        i = RIGHT[i][x] if x >= 0 else RIGHT_INV[i][-x - 1]
    assert i == 0

TREE_EDGES = {(p, s) for p_s in PARENT[1:] for (p, s) in [p_s]}
EDGE_VARS = {}
for i in range(ORDER):
    for s in range(len(GENS)):
        if (i, s) not in TREE_EDGES:
            EDGE_VARS[(i, s)] = len(EDGE_VARS)
NV = len(EDGE_VARS) + len(RELATORS)


def relator_row(base, j, ell):
    row = np.zeros(NV, dtype=np.int64)
    i = base
    for x in RELATORS[j]:
        if x >= 0:
            key, sign, nxt = (i, x), 1, RIGHT[i][x]
        else:
            nxt = RIGHT_INV[i][-x - 1]
            key, sign = (nxt, -x - 1), -1
        if key in EDGE_VARS:
            row[EDGE_VARS[key]] += sign
        i = nxt
    assert i == base
    row[len(EDGE_VARS) + j] -= 1
    return row % ell


def nullspace_mod(rows, ell):
    m = np.array(rows, dtype=np.int64) % ell
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, ell)
        m[r] = (m[r] * inv) % ell
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % ell
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for k, c in enumerate(pivots):
            v[c] = (-m[k, f]) % ell
        basis.append(v)
    return basis


def word_of(i):
    w = []
    while PARENT[i] is not None:
        i, s = PARENT[i]
        w.append(s)
    return w[::-1]


def labels_from_solution(v, ell):
    lab = {}
    for i in range(ORDER):
        for s in range(len(GENS)):
            key = (i, s)
            lab[key] = int(v[EDGE_VARS[key]]) % ell if key in EDGE_VARS else 0
    return lab


def split_labels(phi, ell):
    # c(g, x) = phi(x) + f(g) - f(gx), f summed along tree words
    f = [0] * ORDER
    for i in range(1, ORDER):
        p, s = PARENT[i]
        f[i] = (f[p] + phi[s]) % ell
    return {(i, s): (phi[s] + f[i] - f[RIGHT[i][s]]) % ell
            for i in range(ORDER) for s in range(len(GENS))}


def nonsplit_labels(ell):
    rows = [relator_row(g, j, ell) for g in range(ORDER) for j in range(len(RELATORS))]
    basis = nullspace_mod(rows, ell)
    print(f"# l={ell}: solution space dim {len(basis)}", file=sys.stderr)
    split = []
    for s in range(len(GENS)):
        phi = [0] * len(GENS)
        phi[s] = 1
        lab = split_labels(phi, ell)
        vec = np.zeros(NV, dtype=np.int64)
        for key, idx in EDGE_VARS.items():
            vec[idx] = lab[key]
        split.append(vec)
    base_rank = np.linalg.matrix_rank(np.array(split, dtype=float))
    for v in basis:
        test = nullspace_mod(split + [v], ell)
        if len(test) == NV - (base_rank + 1):
            return labels_from_solution(v, ell)
    raise SystemExit(f"no nonsplit extension found for l={ell}")


def main():
    lab2 = nonsplit_labels(2)
    lab3 = nonsplit_labels(3)
    # CRT into Z/6: t = 3*t2 + 4*t3 mod 6
    lab = {k: (3 * lab2[k] + 4 * lab3[k]) % 6 for k in lab2}
    M = 6
    HAT = ORDER * M

    def enc(g, t):
        return g * M + t

    def right_gen(e, s):
        g, t = divmod(e, M)
        return enc(RIGHT[g][s], (t + lab[(g, s)]) % M)

    words = [word_of(i) for i in range(ORDER)]

    def mul(e, f):
        g, t = divmod(f, M)
        for s in words[g]:
            e = right_gen(e, s)
        gg, tt = divmod(e, M)
        return enc(gg, (tt + t) % M)

    def power(e, k):
        r = enc(0, 0)
        for _ in range(k):
            r = mul(r, e)
        return r

    def elem_order(e):
        k, r = 1, e
        while r != 0:
            r = mul(r, e)
            k += 1
        return k

    def closure(seeds):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for s in seeds:
                    f = mul(e, s)
                    if f not in seen:
                        seen.add(f)
                        nxt.append(f)
            frontier = nxt
        return seen

    z = enc(0, 1)
    center = {enc(0, t) for t in range(M)}

    # 7:3 in A7 on points 0..6: 7-cycle and x -> 2x
    c7 = INDEX[perm_from_cycles([(1, 2, 3, 4, 5, 6, 7)])]
    c3 = INDEX[perm_from_cycles([(2, 3, 5), (4, 7, 6)])]
    pre73 = [enc(g, t) for g in (c7, c3) for t in range(M)]
    p1 = closure(pre73)
    assert len(p1) == 126
    h1 = sorted(e for e in p1 if elem_order(e) % 2 == 1)
    assert len(h1) == 63 and set(h1) & center == {enc(0, 0), enc(0, 2), enc(0, 4)}

    # L3(2) on 7 points: lines {124},{235},... generated by (1234567) and (2 3 5)(4 7 6)
    # and an involution preserving the Fano plane
    l32 = [INDEX[perm_from_cycles([(1, 2, 3, 4, 5, 6, 7)])],
           INDEX[perm_from_cycles([(2, 3), (4, 7)])]]
    pre = closure([enc(g, t) for g in l32 for t in range(M)])
    assert len(pre) == 1008, len(pre)
    pre_list = sorted(pre)

    def inv(e):
        return power(e, elem_order(e) - 1)

    comms = set()
    gens_pre = [enc(g, 0) for g in l32]
    for x in gens_pre:
        for y in gens_pre:
            comms.add(mul(mul(inv(x), inv(y)), mul(x, y)))
    # normal closure in the preimage
    derived = closure(list(comms))
    changed = True
    while changed:
        changed = False
        for g in gens_pre:
            gi = inv(g)
            for d in list(derived):
                c = mul(mul(gi, d), g)
                if c not in derived:
                    derived = closure(list(derived | {c}))
                    changed = True
                    break
    h2 = closure(list(derived) + [enc(0, 3)])
    assert len(h2) == 336 and h2 & center == {enc(0, 0), enc(0, 3)}, len(h2)
    h2 = sorted(h2)

    def coset_action(sub):
        label = {}
        reps = []
        for y in range(HAT):
            if y in label:
                continue
            cid = len(reps)
            reps.append(y)
            for h in sub:
                label[mul(h, y)] = cid
        gens = []
        for s in range(len(GENS)):
            gens.append([label[right_gen(y, s)] for y in reps])
        return gens

    act1 = coset_action(h1)
    act2 = coset_action(h2)
    d1, d2 = len(act1[0]), len(act2[0])
    assert (d1, d2) == (240, 45)
    degree = d1 + d2
    perms = [act1[s] + [d1 + v for v in act2[s]] for s in range(len(GENS))]

    # express z as a word: z = a-hat^k... search short words in the lifted generators
    zw = None
    ahat, bhat = enc(INDEX[A], 0), enc(INDEX[B], 0)
    gen_elems = [ahat, bhat]
    queue = deque([(0, [])])
    seen = {0: []}
    while queue and zw is None:
        e, w = queue.popleft()
        for s in range(2):
            f = mul(e, gen_elems[s])
            if f not in seen:
                seen[f] = w + [s]
                queue.append((f, w + [s]))
                if f == z or f == enc(0, 5):
                    zw = w + [s]
                    break
    assert zw is not None

    print("# Sixfold cover 6.A7 of the alternating group A7 (order 15120).")
    print("# Faithful action on 240 + 45 points; generators lift a = (1 2 3)")
    print("# and b = (3 4 5 6 7). Produced by scripts/gen_6a7.py.")
    print(f"cover perm {degree}")
    for p in perms:
        print(" ".join(str(v + 1) for v in p))
    word = []
    for s in zw:
        word.append(f"g{s + 1}")
    print("central " + "*".join(word))


if __name__ == "__main__":
    main()
