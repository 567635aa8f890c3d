"""Random string algebras and random modules for property and acceptance suites."""

import random

from repdim.presentation import Quiver, Relation, build_algebra
from repdim.rep import direct_sum, free_module, quotient_representation
from repdim.exactlin import Subspace


def random_string_algebra(rng: random.Random, max_vertices=4, max_arrows=6, max_bound=5, name=None):
    """A monomial special biserial algebra (|S|, |E| <= 2, unique nonzero continuations)."""
    nv = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(nv)]
    out_deg = {v: 0 for v in verts}
    in_deg = {v: 0 for v in verts}
    arrows = []
    for k in range(rng.randint(1, max_arrows)):
        cands = [(s, t) for s in verts for t in verts if out_deg[s] < 2 and in_deg[t] < 2]
        if not cands:
            break
        s, t = rng.choice(cands)
        out_deg[s] += 1
        in_deg[t] += 1
        arrows.append((f"a{k}", s, t))
    q = Quiver(verts, arrows)
    # pairs alpha*beta (beta first); keep at most one nonzero continuation each way
    pairs = [(a.name, b.name) for a in q.arrows for b in q.arrows if a.source == b.target]
    rng.shuffle(pairs)
    left_used, right_used, zero = set(), set(), []
    for al, be in pairs:
        if be not in left_used and al not in right_used and rng.random() < 0.7:
            left_used.add(be)
            right_used.add(al)
        else:
            zero.append((al, be))
    rels = [Relation(((1, q.path(al, be)),)) for al, be in zero]
    zset = set(zero)
    bound = rng.randint(2, max_bound)
    # every surviving path of length `bound` (and a few shorter ones) becomes a relation
    for p in q.paths_up_to(bound):
        n = len(p.arrows)
        if n < 2:
            continue
        if any((p.arrows[i], p.arrows[i + 1]) in zset for i in range(n - 1)):
            continue
        if n == bound or (n >= 3 and rng.random() < 0.15):
            rels.append(Relation(((1, p),)))
    return build_algebra(q, rels, bound, name=name)


def random_module(alg, rng: random.Random, max_gens=3, copies=2, in_radical=False):
    """Quotient of a free module by the submodule generated by random elements.

    With ``in_radical`` the generators lie in the radical, so the quotient keeps
    the full top and is never zero.
    """
    f = free_module(alg)
    x = direct_sum(*([f] * copies)) if copies > 1 else f
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        v = rng.choice(alg.vertices)
        vec = [rng.randint(-2, 2) for _ in range(x.dims[v])]
        arrows = alg.quiver.starting_at(v)
        if in_radical:
            if not arrows:
                continue
            name = rng.choice(arrows)
            vec = x.maps[name].apply(vec)
            v = alg.quiver.arrow(name).target
        gens.append((v, vec))
    spaces = {v: Subspace(alg.field, x.dims[v]) for v in alg.vertices}
    for v, vec in gens:
        for p in alg.basis:
            if p.source != v:
                continue
            img = x.path_matrix(p).apply(vec)
            spaces[p.target].add(img)
    return quotient_representation(x, spaces)[0]
