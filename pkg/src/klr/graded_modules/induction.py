"""Induction products with coset bases, and restriction to block subalgebras."""
from __future__ import annotations

from functools import reduce

from ..exact_linalg import kron
from ..klr_algebra import KLRAlgebra, WindowError, act, min_coset_reps
from ..klr_algebra.algebra import _acc
from ..klr_algebra.permutations import coset_split, length
from .module import GradedModule, gen_label

_FACTOR_CACHE: dict = {}


def factor_key(alg: KLRAlgebra, sizes: tuple, key) -> dict:
    """Write tau_w x^a 1_i as sum c * tau_u (b) with u a minimal coset representative
    and b a normal-form monomial of the block subalgebra.

    Returns {(u, block_key): c}.  The block key is an H_alpha key whose permutation
    preserves the blocks.
    """
    cache = _FACTOR_CACHE.setdefault((alg, sizes), {})
    memo = cache.get(key)
    if memo is not None:
        return memo
    w, a, i = key
    u0, u1 = coset_split(w, sizes)
    res: dict = {(u0, (u1, a, i)): 1}
    if u0 != w and u1 != tuple(range(len(w))):
        n = len(w)
        prod = alg.mul_keys((u0, tuple([0] * n), act(u1, i)), (u1, a, i))
        if prod.get(key) != 1:
            raise AssertionError("coset factorisation lost its leading term")
        lw = length(w)
        for k, c in prod.items():
            if k == key:
                continue
            if length(k[0]) >= lw:
                raise AssertionError("coset factorisation did not shorten the permutation")
            for kk, cc in factor_key(alg, sizes, k).items():
                _acc(res, {kk: cc}, -c)
    cache[key] = res
    return res


def split_block_key(key, n1: int):
    u, a, i = key
    if any(x >= n1 for x in u[:n1]):
        raise AssertionError("permutation does not preserve the blocks")
    k1 = (tuple(u[:n1]), tuple(a[:n1]), tuple(i[:n1]))
    k2 = (tuple(x - n1 for x in u[n1:]), tuple(a[n1:]), tuple(i[n1:]))
    return k1, k2


def _coset_min_degree(alg: KLRAlgebra, reps, V1: GradedModule, V2: GradedModule) -> int:
    words1 = {w for _, w in V1.dims}
    words2 = {w for _, w in V2.dims}
    return min(alg.deg_tau(u, w1 + w2) for u in reps for w1 in words1 for w2 in words2)


def induction_trust(V1: GradedModule, V2: GradedModule, dmin: int) -> int | None:
    bounds = []
    if V1.hi is not None:
        bounds.append(V1.hi - V1.alg.buffer + V2.lo + dmin)
    if V2.hi is not None:
        bounds.append(V2.hi - V2.alg.buffer + V1.lo + dmin)
    return min(bounds) if bounds else None


def induce2(V1: GradedModule, V2: GradedModule, hi: int | None = None) -> GradedModule:
    """V1 o V2 with basis tau_u (x) v1 (x) v2 over minimal coset representatives u."""
    if V1.dom != V2.dom:
        raise ValueError("incompatible coefficient domains")
    if V1.datum != V2.datum:
        raise ValueError("incompatible Cartan data")
    dom = V1.dom
    n1, n2 = V1.n, V2.n
    alpha = tuple(a + b for a, b in zip(V1.alpha, V2.alpha))
    if n1 == 0:
        return V2 if hi is None else V2.truncate(hi)
    if n2 == 0:
        return V1 if hi is None else V1.truncate(hi)
    alg = KLRAlgebra(V1.datum, alpha)
    sizes = (n1, n2)
    reps = min_coset_reps(sizes)
    n = n1 + n2
    zero = tuple([0] * n)
    dmin = _coset_min_degree(alg, reps, V1, V2)
    T = induction_trust(V1, V2, dmin)
    if hi is not None:
        if T is not None and hi > T:
            raise WindowError(f"induced module is only trusted through degree {T}", hi)
        T = hi
    # blocks: comp -> list of (u, c1, c2, offset)
    layout: dict = {}
    where: dict = {}
    for c1 in V1.comps():
        for c2 in V2.comps():
            word = c1[1] + c2[1]
            for u in reps:
                deg = alg.deg_tau(u, word) + c1[0] + c2[0]
                if T is not None and deg > T:
                    continue
                comp = (deg, act(u, word))
                blocks = layout.setdefault(comp, [])
                off = sum(V1.dim(b[1]) * V2.dim(b[2]) for b in blocks)
                blocks.append((u, c1, c2, off))
                where[(u, c1, c2)] = (comp, off)
    dims = {comp: sum(V1.dim(b[1]) * V2.dim(b[2]) for b in bl) for comp, bl in layout.items()}
    action: dict = {}
    for comp, blocks in layout.items():
        for g in alg_gens(n):
            tgt = _target(alg, g, comp)
            if tgt not in dims:
                continue
            M = [[dom.zero()] * dims[comp] for _ in range(dims[tgt])]
            nonzero = False
            for u, c1, c2, off in blocks:
                word = c1[1] + c2[1]
                lin = alg.gen_apply(g, {(u, zero, word): 1})
                for key, c in lin.items():
                    for (u0, bkey), cc in factor_key(alg, sizes, key).items():
                        k1, k2 = split_block_key(bkey, n1)
                        t1, M1 = V1.key_matrix(k1, c1)
                        t2, M2 = V2.key_matrix(k2, c2)
                        if M1 is None or M2 is None:
                            continue
                        pos = where.get((u0, t1, t2))
                        if pos is None:
                            raise WindowError(f"induced action of {gen_label(g)} at {comp} needs block {(u0, t1, t2)}", tgt[0])
                        if pos[0] != tgt:
                            raise AssertionError("induced action landed in the wrong component")
                        K = kron(M1, M2, dom)
                        toff = pos[1]
                        coef = c * cc
                        for r, row in enumerate(K):
                            Mr = M[toff + r]
                            for s, x in enumerate(row):
                                if x:
                                    Mr[off + s] = dom(Mr[off + s] + coef * x)
                                    nonzero = True
            if nonzero:
                action[(g, comp)] = M
    name = f"{V1.meta.get('name', '?')}o{V2.meta.get('name', '?')}"
    meta = {"name": name, "layout": None}
    out = GradedModule(V1.datum, alpha, dom, dims, action, T, meta)
    out.meta["blocks_of"] = (V1, V2)
    out.meta["layout"] = layout
    return out


def alg_gens(n: int):
    return [("x", t) for t in range(n)] + [("t", r) for r in range(n - 1)]


def _target(alg: KLRAlgebra, g, comp):
    d, w = comp
    kind, r = g
    if kind == "x":
        return (d + 2 * alg.datum.d(w[r]), w)
    return (d - alg.datum.dot(w[r], w[r + 1]), w[:r] + (w[r + 1], w[r]) + w[r + 2 :])


def induce(*mods: GradedModule, hi: int | None = None) -> GradedModule:
    """V_1 o ... o V_m (folded left to right)."""
    if not mods:
        raise ValueError("need at least one module")
    out = reduce(lambda a, b: induce2(a, b), mods)
    if hi is not None:
        out = out.truncate(hi)
    return out


def generator_vector(V: GradedModule, parts):
    """Component and coordinates of 1 (x) v_1 (x) ... (x) v_m in a left-folded induced module.

    ``parts`` lists (comp, vector) for the factors in order.
    """
    parts = list(parts)
    if len(parts) == 1:
        return parts[0]
    V1, _ = V.meta["blocks_of"]
    c1, v1 = generator_vector(V1, parts[:-1])
    c2, v2 = parts[-1]
    u = tuple(range(V.n))
    comp = (c1[0] + c2[0], c1[1] + c2[1])
    for bu, b1, b2, off in V.meta["layout"][comp]:
        if bu == u and b1 == c1 and b2 == c2:
            vec = [V.dom.zero()] * V.dim(comp)
            for j, x in enumerate(a * b for a in v1 for b in v2):
                vec[off + j] = V.dom(x)
            return comp, vec
    raise KeyError("generator block not found")


def restrict(V: GradedModule, composition) -> GradedModule:
    """Restriction to the block subalgebra H_{beta_1} x ... x H_{beta_m}."""
    composition = [tuple(b) for b in composition]
    if tuple(map(sum, zip(*composition))) != V.alpha:
        raise ValueError("composition does not sum to alpha")
    sizes = tuple(sum(b) for b in composition)
    if len(sizes) == 1:
        return V
    allowed = set()
    import itertools

    for ws in itertools.product(*[V.datum.words(b) for b in composition]):
        allowed.add(sum(ws, ()))
    boundary = set(itertools.accumulate(sizes[:-1]))
    dims = {c: n for c, n in V.dims.items() if c[1] in allowed}
    act_ = {}
    for (g, c), M in V.action.items():
        if c[1] not in allowed:
            continue
        if g[0] == "t" and g[1] + 1 in boundary:
            continue
        act_[(g, c)] = M
    meta = {"name": f"Res({V.meta.get('name', '?')})", "blocks": sizes, "composition": composition}
    return GradedModule(V.datum, V.alpha, V.dom, dims, act_, V.hi, meta)
