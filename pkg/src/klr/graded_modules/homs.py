"""Homomorphisms: finite commuting systems, cyclic presentations, candidate Hom spaces, heads."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..exact_linalg import coordinates, independent_columns, rank, sparse_kernel
from ..klr_algebra import KLRElement, WindowError
from ..klr_algebra.algebra import _acc
from .module import GradedModule, from_embedding, mat_mul, mat_vec


# --------------------------------------------------------------- hom blocks
@dataclass
class Hom:
    """A degree-``degree`` map given by matrices on source components."""

    source: GradedModule
    target: GradedModule
    degree: int
    blocks: dict  # source comp -> matrix (target rows x source cols)
    hi: int | None = None  # source components above hi are not described

    def tgt(self, comp):
        return (comp[0] + self.degree, comp[1])

    def apply(self, comp, vec):
        M = self.blocks.get(comp)
        if M is None:
            return [self.target.dom.zero()] * self.target.dim(self.tgt(comp))
        return mat_vec(M, vec, self.target.dom)

    def rank_at(self, comp) -> int:
        M = self.blocks.get(comp)
        if M is None:
            return 0
        return rank(M, self.source.dim(comp), self.target.dom)

    def injective_components(self) -> dict:
        return {c: self.rank_at(c) == self.source.dim(c) for c in self.source.comps() if self.hi is None or c[0] <= self.hi}

    def is_injective(self) -> bool:
        return all(self.injective_components().values())

    def is_zero(self) -> bool:
        return all(all(x == 0 for row in M for x in row) for M in self.blocks.values())

    def compose(self, inner: "Hom") -> "Hom":
        """self o inner."""
        dom = self.target.dom
        blocks = {}
        for c, M in inner.blocks.items():
            N = self.blocks.get(inner.tgt(c))
            if N is not None:
                blocks[c] = mat_mul(N, M, dom)
        hi = _min_none(inner.hi, None if self.hi is None else self.hi - inner.degree)
        return Hom(inner.source, self.target, self.degree + inner.degree, blocks, hi)

    def scale(self, c) -> "Hom":
        dom = self.target.dom
        return Hom(self.source, self.target, self.degree, {k: [[dom(c * x) for x in row] for row in M] for k, M in self.blocks.items()}, self.hi)

    def commutation_defects(self) -> list:
        """Generators and components where the map fails to commute with the action."""
        S, T, dom = self.source, self.target, self.target.dom
        bad = []
        for comp in S.comps():
            if self.hi is not None and comp[0] > self.hi:
                continue
            for g in S.gens():
                try:
                    sc = S.target(g, comp)
                    if self.hi is not None and sc[0] > self.hi:
                        continue
                    A = S.matrix(g, comp)
                    B = T.matrix(g, self.tgt(comp))
                except WindowError:
                    continue
                phi_c = self.blocks.get(comp)
                phi_t = self.blocks.get(sc)
                left = mat_mul(B, phi_c, dom) if (B is not None and phi_c is not None) else None
                right = mat_mul(phi_t, A, dom) if (A is not None and phi_t is not None) else None
                if _differs(left, right):
                    bad.append((g, comp))
        return bad


def _min_none(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _differs(A, B) -> bool:
    if A is None and B is None:
        return False
    if A is None:
        return any(x for row in B for x in row)
    if B is None:
        return any(x for row in A for x in row)
    return any(a != b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def hom_finite(M: GradedModule, N: GradedModule, d: int) -> list[Hom]:
    """Basis of Hom(M, N)_d for finite-dimensional M by solving the commuting equations."""
    if M.hi is not None or N.hi is not None:
        raise ValueError("hom_finite needs finite-dimensional modules")
    dom = N.dom
    index = {}
    ncols = 0
    for c in M.comps():
        t = (c[0] + d, c[1])
        if N.dim(t):
            index[c] = ncols
            ncols += M.dim(c) * N.dim(t)
    if ncols == 0:
        return []

    def var(c, a, b):
        # entry (a, b) of the block at source comp c
        return index[c] + a * M.dim(c) + b

    rows = []
    for c in M.comps():
        for g in M.gens():
            sc = M.target(g, c)
            tc = (c[0] + d, c[1])
            tt = (sc[0] + d, sc[1])
            nt = N.dim(tt)
            if not nt:
                continue
            A = M.matrix(g, c)
            B = N.matrix(g, tc)
            for a in range(nt):
                for b in range(M.dim(c)):
                    row: dict = {}
                    if B is not None and c in index:
                        for k in range(N.dim(tc)):
                            if B[a][k]:
                                j = var(c, k, b)
                                row[j] = row.get(j, 0) + B[a][k]
                    if A is not None and sc in index:
                        for k in range(M.dim(sc)):
                            if A[k][b]:
                                j = var(sc, a, k)
                                row[j] = row.get(j, 0) - A[k][b]
                    row = {j: v for j, v in row.items() if dom(v)}
                    if row:
                        rows.append(row)
    out = []
    for vec in sparse_kernel(rows, ncols, dom):
        blocks = {}
        for c, off in index.items():
            m, nn = M.dim(c), N.dim((c[0] + d, c[1]))
            blocks[c] = [[vec[off + a * m + b] for b in range(m)] for a in range(nn)]
        out.append(Hom(M, N, d, blocks))
    return out


def hom_degree_range(M: GradedModule, N: GradedModule) -> range:
    return range(N.lo - M.top, N.top - M.lo + 1)


def image_module(phi: Hom, name: str = "image") -> GradedModule:
    spans = {}
    for c, Mx in phi.blocks.items():
        cols = [list(col) for col in zip(*Mx)]
        cols = [v for v in cols if any(v)]
        if cols:
            spans[phi.tgt(c)] = cols
    return from_embedding(phi.target, spans, phi.target.hi, name)


# ------------------------------------------------------------------ heads
class HeadError(RuntimeError):
    pass


@dataclass
class HeadResult:
    simple: GradedModule  # bar-invariantly normalised
    shift: int  # q^shift M maps onto ``simple`` in degree 0
    hom_degree: int
    hom_dims: dict


def simple_head(M: GradedModule, name: str = "L") -> HeadResult:
    """Head of M via the unique map M -> M^* (contravariant pairing)."""
    D = M.dual()
    dims = {}
    found = []
    for d in hom_degree_range(M, D):
        hs = hom_finite(M, D, d)
        if hs:
            dims[d] = len(hs)
            found.extend(hs)
    if len(found) != 1:
        raise HeadError(f"contravariant hom space has total dimension {len(found)} (expected 1): {dims}")
    phi = found[0]
    image = image_module(phi, name)
    lo, top = image.lo, image.top
    if (lo + top) % 2:
        raise HeadError("head character cannot be centred")
    k = -(lo + top) // 2
    L = image.shift(k)
    L.meta["name"] = name
    for w, s in L.character().items():
        if not s.is_bar_invariant():
            raise HeadError(f"head character is not bar-invariant on {w}")
    return HeadResult(L, phi.degree + k, phi.degree, dims)


def is_simple(V: GradedModule) -> bool:
    """Finite V is simple iff Hom(V, V^*) is one-dimensional in total and that map is an isomorphism."""
    D = V.dual()
    homs = [h for d in hom_degree_range(V, D) for h in hom_finite(V, D, d)]
    return len(homs) == 1 and homs[0].is_injective()


# --------------------------------------------------------- cyclic modules
@dataclass
class CyclicPresentation:
    """V = H v with the non-idempotent generators of Ann(v) found through ``ann_degree``."""

    module: GradedModule
    comp: tuple
    vector: list
    generators: list = field(default_factory=list)  # KLRElements in H 1_word
    ann_degree: int = 0
    name: str = ""
    _sections: dict = field(default_factory=dict, repr=False)

    @property
    def word(self):
        return self.comp[1]

    @property
    def degree(self) -> int:
        return self.comp[0]

    @property
    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    def section(self, comp):
        """Keys h with h.v a basis of ``comp`` and the change-of-basis coefficients."""
        if comp in self._sections:
            return self._sections[comp]
        V, alg = self.module, self.module.alg
        e = comp[0] - self.degree
        keys = alg.basis_keys(e, left=[comp[1]], right=[self.word]) if e >= alg.d_min else []
        imgs = []
        for h in keys:
            _, v = V.apply_key(h, self.comp, self.vector)
            imgs.append(v)
        n = V.dim(comp)
        idx = independent_columns(imgs, V.dom) if imgs else []
        if len(idx) != n:
            raise WindowError(f"generator does not span component {comp} within the window", comp[0])
        chosen = [keys[j] for j in idx]
        basis = [imgs[j] for j in idx]
        ident = [[V.dom.one() if r == c else V.dom.zero() for r in range(n)] for c in range(n)]
        coef = coordinates(basis, ident, V.dom)
        self._sections[comp] = (chosen, coef)
        return chosen, coef


def annihilator_generators(V: GradedModule, comp, vec, ann_degree: int) -> list[KLRElement]:
    """Non-idempotent generators (in H 1_i) of the left ideal Ann(v), complete through ``ann_degree``."""
    alg = V.alg
    dom = V.dom
    i = comp[1]
    need = comp[0] + ann_degree + alg.buffer
    if V.hi is not None and need > V.hi:
        raise WindowError(f"annihilator through degree {ann_degree} needs the module through {need}", need)
    gens: list[KLRElement] = []
    for e in range(alg.d_min, ann_degree + 1):
        for k in alg.words:
            keys = alg.basis_keys(e, left=[k], right=[i])
            if not keys:
                continue
            tgt = (comp[0] + e, k)
            n = V.dim(tgt)
            if n:
                rows = [dict() for _ in range(n)]
                for j, h in enumerate(keys):
                    _, v = V.apply_key(h, comp, vec)
                    for r, x in enumerate(v):
                        if x:
                            rows[r][j] = x
                kernel = sparse_kernel(rows, len(keys), dom)
            else:
                kernel = [[dom.one() if r == c else dom.zero() for r in range(len(keys))] for c in range(len(keys))]
            if not kernel:
                continue
            pos = {h: j for j, h in enumerate(keys)}
            span = []
            for b in gens:
                for h in alg.basis_keys(e - b.degree, left=[k], right=[_left_word(b)]) if e - b.degree >= alg.d_min else []:
                    prod: dict = {}
                    for bk, bc in b.terms.items():
                        _acc(prod, alg.mul_keys(h, bk), bc)
                    vecp = [dom.zero()] * len(keys)
                    for kk, c in prod.items():
                        vecp[pos[kk]] = dom(c)
                    if any(vecp):
                        span.append(vecp)
            r0 = rank(span, len(keys), dom) if span else 0
            for kv in kernel:
                r1 = rank(span + [kv], len(keys), dom)
                if r1 > r0:
                    span.append(kv)
                    r0 = r1
                    gens.append(KLRElement(alg, {keys[j]: x for j, x in enumerate(kv) if x}, dom))
    return gens


def _left_word(elem: KLRElement):
    ws = elem.left_words()
    if len(ws) != 1:
        raise ValueError("element is not supported on a single left word")
    return next(iter(ws))


def present(V: GradedModule, comp, vec, ann_degree: int, name: str = "") -> CyclicPresentation:
    gens = annihilator_generators(V, comp, vec, ann_degree)
    return CyclicPresentation(V, comp, list(vec), gens, ann_degree, name)


# ------------------------------------------------------------ hom spaces
@dataclass
class HomSpace:
    degree: int
    basis: list  # vectors in the target component (degree(v) + d, word(v))
    target_comp: tuple
    ann_degree: int
    certified_zero: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_required_degree(P: CyclicPresentation, W: GradedModule, d: int) -> int:
    return P.degree + d + P.max_generator_degree + W.alg.buffer


def hom_space(P: CyclicPresentation, W: GradedModule, d: int) -> HomSpace:
    """Vectors w of degree deg(v)+d and weight word(v) killed by every annihilator generator.

    This is a certified superset of Hom(V, W)_d; dimension 0 certifies vanishing.
    """
    need = hom_required_degree(P, W, d)
    if W.hi is not None and need > W.hi:
        raise WindowError(f"Hom in degree {d} needs the target trusted through {need}", need)
    tc = (P.degree + d, P.word)
    n = W.dim(tc)
    if n == 0:
        return HomSpace(d, [], tc, P.ann_degree, True)
    rows = []
    for g in P.generators:
        for _, M in W.element_matrix(g, tc).items():
            for row in M:
                r = {j: x for j, x in enumerate(row) if x}
                if r:
                    rows.append(r)
    basis = sparse_kernel(rows, n, W.dom) if rows else [[W.dom.one() if r == c else W.dom.zero() for r in range(n)] for c in range(n)]
    return HomSpace(d, basis, tc, P.ann_degree, not basis)


def extend_hom(P: CyclicPresentation, W: GradedModule, w, d: int, hi: int | None = None) -> Hom:
    """The map h.v -> h.w on source components through degree ``hi``."""
    V = P.module
    top = V.hi if hi is None else hi
    if top is None:
        top = V.top
    if W.hi is not None:
        top = min(top, W.hi - d)
    tc = (P.degree + d, P.word)
    blocks = {}
    for comp in V.comps():
        if comp[0] > top:
            continue
        keys, coef = P.section(comp)
        t = (comp[0] + d, comp[1])
        m = W.dim(t)
        if not m:
            continue
        imgs = []
        for h in keys:
            _, x = W.apply_key(h, tc, w)
            imgs.append(x)
        # column c of the block: sum_j coef[c][j] * imgs[j]
        block = [[W.dom(sum(coef[c][j] * imgs[j][r] for j in range(len(keys)))) for c in range(V.dim(comp))] for r in range(m)]
        blocks[comp] = block
    return Hom(V, W, d, blocks, top)
