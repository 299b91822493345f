"""Module constructions behind the standard family: z-tensor models, extension towers,
induced presentations and idempotent images."""
from __future__ import annotations

from ..exact_linalg import rank, sparse_kernel
from ..graded_modules import CyclicPresentation, GradedModule, generator_vector, induce
from ..graded_modules.homs import annihilator_generators
from ..klr_algebra import KLRElement, WindowError


class ConstructionError(RuntimeError):
    pass


def lowest_vector(V: GradedModule):
    c = V.comps()[0]
    v = [V.dom.zero()] * V.dim(c)
    v[0] = V.dom.one()
    return c, v


# ------------------------------------------------------------ z-tensor model
def delta_from_z(L: GradedModule, hi: int, first_letter: int | None = None) -> GradedModule:
    """k[z] (x) L with z = sum_{p: i_p = i_1} x_p acting freely, truncated at ``hi``.

    Needs equal symmetrisers on the support; x_t acts through
    a x_t = z - sum_p (x_p - x_t), the differences acting on L.
    """
    datum, dom = L.datum, L.dom
    support = [i for i in datum.index_set if L.alpha[i - 1] > 0]
    if len({datum.d(i) for i in support}) > 1:
        raise ConstructionError("z-construction needs equal symmetrisers on the support")
    if first_letter is None:
        cands = [i for i in support if dom(L.alpha[i - 1]) != 0]
        if not cands:
            raise ConstructionError(f"every coefficient of alpha vanishes in {dom.name}")
        first_letter = min(cands, key=lambda i: (L.alpha[i - 1], i))
    a = L.alpha[first_letter - 1]
    if dom(a) == 0:
        raise ConstructionError(f"a_{first_letter} vanishes in {dom.name}")
    inv_a = dom.inv(dom(a))
    step = 2 * datum.d(first_letter)
    layout: dict = {}
    where: dict = {}
    for c in L.comps():
        m = 0
        while c[0] + step * m <= hi:
            comp = (c[0] + step * m, c[1])
            blocks = layout.setdefault(comp, [])
            off = sum(L.dim(b[1]) for b in blocks)
            blocks.append((m, c, off))
            where[(m, c)] = (comp, off)
            m += 1
    dims = {comp: sum(L.dim(b[1]) for b in bl) for comp, bl in layout.items()}
    n = L.n
    action: dict = {}

    def put(M, toff, soff, block, coef):
        for r, row in enumerate(block):
            for s, x in enumerate(row):
                if x:
                    M[toff + r][soff + s] = dom(M[toff + r][soff + s] + coef * x)

    for comp, blocks in layout.items():
        for g in L.gens():
            tgt = L.target(g, comp)
            if tgt not in dims:
                continue
            M = [[dom.zero()] * dims[comp] for _ in range(dims[tgt])]
            for m, c, off in blocks:
                if g[0] == "t":
                    G = L.matrix(g, c)
                    if G is not None:
                        tc = L.target(g, c)
                        put(M, where[(m, tc)][1], off, G, 1)
                    continue
                t = g[1]
                word = c[1]
                up = where.get((m + 1, c))
                if up is not None:
                    ident = [[dom.one() if r == s else dom.zero() for s in range(L.dim(c))] for r in range(L.dim(c))]
                    put(M, up[1], off, ident, inv_a)
                for p in range(n):
                    if word[p] != first_letter or p == t:
                        continue
                    tc = L.target(("x", p), c)
                    pos = where.get((m, tc))
                    if pos is None:
                        continue
                    Xp = L.matrix(("x", p), c)
                    Xt = L.matrix(("x", t), c)
                    if Xp is not None:
                        put(M, pos[1], off, Xp, -inv_a)
                    if Xt is not None:
                        put(M, pos[1], off, Xt, inv_a)
            if any(x for row in M for x in row):
                action[(g, comp)] = M
    meta = {"name": f"Delta_z({L.meta.get('name', '?')})", "z_letter": first_letter}
    return GradedModule(datum, L.alpha, dom, dims, action, hi, meta)


# ----------------------------------------------------------- extension tower
def _path(V: GradedModule, gens, comp):
    end, M = V._path(gens, comp)
    return end, M


def ext1_degree0(L: GradedModule, N: GradedModule):
    """(cocycle basis, coboundary images, variable index) for extensions of L by N in degree 0."""
    dom = L.dom
    index = {}
    nv = 0
    for c in L.comps():
        for g in L.gens():
            t = L.target(g, c)
            if N.dim(t):
                index[(g, c)] = nv
                nv += N.dim(t) * L.dim(c)
    rows = []
    for c in L.comps():
        for name, lhs, rhs, scalar, poly in L._relations(c[1]):
            paths = [(lhs, 1)]
            if rhs is not None:
                paths.append((rhs, -1))
            for exps, coef in (poly or {}).items():
                paths.append(([("x", t) for t, e in enumerate(exps) for _ in range(e)], -coef))
            acc: dict = {}
            end_comp = None
            for gens, sign in paths:
                comps = [c]
                for g in gens:
                    comps.append(L.target(g, comps[-1]))
                if end_comp is None:
                    end_comp = comps[-1]
                elif comps[-1] != end_comp:
                    raise AssertionError("relation paths end in different components")
                for j, g in enumerate(gens):
                    src = comps[j]
                    if (g, src) not in index:
                        continue
                    _, Lpre = _path(L, gens[:j], c)
                    _, Nsuf = _path(N, gens[j + 1 :], comps[j + 1])
                    if not any(x for row in Lpre for x in row) or not any(x for row in Nsuf for x in row):
                        continue
                    base = index[(g, src)]
                    ls = L.dim(src)
                    for a, nrow in enumerate(Nsuf):
                        for k, nk in enumerate(nrow):
                            if not nk:
                                continue
                            for b in range(L.dim(c)):
                                for l in range(ls):
                                    lv = Lpre[l][b]
                                    if lv:
                                        key = (a, b)
                                        var = base + k * ls + l
                                        d = acc.setdefault(key, {})
                                        d[var] = d.get(var, 0) + sign * nk * lv
            for d in acc.values():
                d = {k: v for k, v in d.items() if dom(v)}
                if d:
                    rows.append(d)
    Z = sparse_kernel(rows, nv, dom) if nv else []
    # coboundary of B = (B_c: L_c -> N_c): C_{g,c} = N_g B_c - B_{gc} L_g
    Bimg = []
    for c in L.comps():
        for k in range(N.dim(c)):
            for l in range(L.dim(c)):
                vec = [dom.zero()] * nv
                for g in L.gens():
                    if (g, c) not in index:
                        continue
                    G = N.matrix(g, c)
                    if G is None:
                        continue
                    base, ls = index[(g, c)], L.dim(c)
                    for a in range(N.dim(L.target(g, c))):
                        if G[a][k]:
                            vec[base + a * ls + l] += G[a][k]
                for c2 in L.comps():
                    for g in L.gens():
                        if L.target(g, c2) != c or (g, c2) not in index:
                            continue
                        G = L.matrix(g, c2)
                        if G is None:
                            continue
                        base, ls = index[(g, c2)], L.dim(c2)
                        for s_ in range(ls):
                            if G[l][s_]:
                                vec[base + k * ls + s_] -= G[l][s_]
                Bimg.append([dom(x) for x in vec])
    return Z, Bimg, index


def nonsplit_extension(L: GradedModule, N: GradedModule) -> GradedModule:
    """The middle term of the unique nonsplit 0 -> N -> E -> L -> 0 (degree 0)."""
    if L.hi is not None or N.hi is not None:
        raise ConstructionError("extension tower needs finite-dimensional pieces")
    dom = L.dom
    Z, Bimg, index = ext1_degree0(L, N)
    nv = len(Z[0]) if Z else 0
    rb = rank(Bimg, nv, dom) if (Bimg and nv) else 0
    ext = len(Z) - rb
    if ext != 1:
        raise ConstructionError(f"extension space has dimension {ext} (expected 1)")
    chosen = None
    for z in Z:
        if rank(Bimg + [z], nv, dom) > rb:
            chosen = z
            break
    comps = sorted(set(L.dims) | set(N.dims))
    dims = {c: N.dim(c) + L.dim(c) for c in comps}
    action = {}
    for c in comps:
        for g in L.gens():
            t = L.target(g, c)
            if t not in dims:
                continue
            M = [[dom.zero()] * dims[c] for _ in range(dims[t])]
            nN, nT = N.dim(c), N.dim(t)
            G = N.matrix(g, c) if N.dim(c) else None
            if G is not None:
                for a in range(nT):
                    for b in range(nN):
                        M[a][b] = G[a][b]
            G = L.matrix(g, c) if L.dim(c) else None
            if G is not None:
                for a in range(L.dim(t)):
                    for b in range(L.dim(c)):
                        M[nT + a][nN + b] = G[a][b]
            if (g, c) in index:
                base = index[(g, c)]
                ls = L.dim(c)
                for a in range(nT):
                    for b in range(ls):
                        x = chosen[base + a * ls + b]
                        if x:
                            M[a][nN + b] = x
            if any(x for row in M for x in row):
                action[(g, c)] = M
    return GradedModule(L.datum, L.alpha, dom, dims, action, None, {"name": "ext"})


def delta_tower(L: GradedModule, hi: int) -> GradedModule:
    """Delta_m(alpha) built by nonsplit extensions, truncated where it agrees with Delta(alpha)."""
    d_alpha = L.datum.d_root(L.alpha)
    step = 2 * d_alpha
    lo = L.lo
    # degrees < step*(m-1) + lo are final
    m = 1
    while step * (m - 1) + lo - 1 < hi:
        m += 1
    E = L
    for _ in range(m - 1):
        E = nonsplit_extension(L, E.shift(step))
    out = E.truncate(hi)
    out.meta["name"] = f"Delta_tower({L.meta.get('name', '?')})"
    out.meta["tower_length"] = m
    return out


# --------------------------------------------------------- induced modules
def embed_block_element(elem: KLRElement, alg, words, k: int) -> KLRElement:
    """b in H_{beta_k} 1_{i_k} as 1 (x) ... (x) b (x) ... (x) 1 in H_alpha 1_{i}."""
    off = sum(len(w) for w in words[:k])
    n = sum(len(w) for w in words)
    terms = {}
    for (u, a, i), c in elem.terms.items():
        full_u = list(range(n))
        full_a = [0] * n
        for x in range(len(u)):
            full_u[off + x] = off + u[x]
            full_a[off + x] = a[x]
        full_i = tuple(sum((tuple(i) if j == k else tuple(words[j]) for j in range(len(words))), ()))
        terms[(tuple(full_u), tuple(full_a), full_i)] = c
    return KLRElement(alg, terms, elem.dom)


def induced_presentation(parts: list[CyclicPresentation], hi: int, name: str = "") -> CyclicPresentation:
    """Presentation of P_1.module o ... o P_m.module on the generator 1 (x) v_1 (x) ... (x) v_m."""
    if len(parts) == 1:
        P = parts[0]
        V = P.module if (P.module.hi is not None and P.module.hi == hi) else P.module.truncate(hi)
        return CyclicPresentation(V, P.comp, P.vector, P.generators, P.ann_degree, name or P.name)
    V = induce(*[p.module for p in parts])
    if V.hi is not None and V.hi < hi:
        raise WindowError(f"induced module only trusted through {V.hi}", hi)
    V = V.truncate(hi) if V.hi is not None else V
    comp, vec = generator_vector(V, [(p.comp, p.vector) for p in parts])
    words = [p.word for p in parts]
    gens = []
    for k, p in enumerate(parts):
        for g in p.generators:
            gens.append(embed_block_element(g, V.alg, words, k))
    return CyclicPresentation(V, comp, vec, gens, min(p.ann_degree for p in parts), name)


def direct_presentation(V: GradedModule, comp, vec, ann_degree: int, name: str = "") -> CyclicPresentation:
    gens = annihilator_generators(V, comp, vec, ann_degree)
    return CyclicPresentation(V, comp, list(vec), gens, ann_degree, name)

