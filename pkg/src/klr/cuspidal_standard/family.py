"""Cuspidal simples, reduced standards and standard modules attached to a convex order."""
from __future__ import annotations

from dataclasses import dataclass

from ..exact_linalg import QQ, Domain, coordinates, rref
from ..graded_modules import (
    CyclicPresentation,
    GradedModule,
    Hom,
    extend_hom,
    from_embedding,
    generator_vector,
    hom_space,
    induce,
    one_dimensional,
    shuffle,
    simple_head,
)
from ..klr_algebra import WindowError
from ..root_data import CartanDatum, ConvexOrder, KostantPartition, kostant_partitions, minimal_pairs, root_str
from .construct import (
    ConstructionError,
    delta_from_z,
    delta_tower,
    direct_presentation,
    induced_presentation,
    lowest_vector,
)


@dataclass
class CuspidalRecord:
    root: tuple
    pairs_tried: list
    agree: bool


@dataclass
class PowerRecord:
    """How Delta(alpha^m) was cut out of Delta(alpha)^{o m}."""

    root: tuple
    m: int
    idempotent_order: str  # "X.d" or "d.X"
    scale: object
    verified_degrees: int
    shift: int


class StandardFamily:
    """Caches L(alpha), L(lambda), reduced and proper standard modules for one Cartan datum and order.

    ``ann_degree`` bounds the degrees through which annihilator generators of
    standard modules are computed.
    """

    def __init__(self, datum: CartanDatum, order: ConvexOrder | None = None, dom: Domain = QQ, ann_degree: int = 4, method: str = "auto"):
        self.datum = datum
        self.order = order or ConvexOrder.from_word(datum)
        self.dom = dom
        self.ann_degree = ann_degree
        self.method = method
        self._cusp: dict = {}
        self.cusp_records: dict = {}
        self._heads: dict = {}
        self._delta: dict = {}
        self._power: dict = {}
        self.power_records: dict = {}
        self._standard: dict = {}

    # ------------------------------------------------------------ simples
    def kps(self, alpha) -> list[KostantPartition]:
        return kostant_partitions(tuple(alpha), self.order)

    def cuspidal(self, beta) -> GradedModule:
        beta = tuple(beta)
        if beta in self._cusp:
            return self._cusp[beta]
        if not self.datum.is_root(beta):
            raise ValueError(f"{root_str(beta)} is not a positive root")
        name = f"L({root_str(beta)})"
        if sum(beta) == 1:
            L = one_dimensional(self.datum, beta.index(1) + 1, self.dom)
            L.meta["name"] = name
            self._cusp[beta] = L
            self.cusp_records[beta] = CuspidalRecord(beta, [], True)
            return L
        pairs = minimal_pairs(beta, self.order)
        heads = []
        for mp in pairs[:2]:
            M = induce(self.cuspidal(mp.gamma), self.cuspidal(mp.beta))
            heads.append(simple_head(M, name).simple)
        L = heads[0]
        agree = all(h.character() == L.character() for h in heads[1:])
        self.cusp_records[beta] = CuspidalRecord(beta, [(mp.beta, mp.gamma) for mp in pairs[:2]], agree)
        if not agree:
            raise ConstructionError(f"cuspidal module for {root_str(beta)} depends on the minimal pair")
        self._cusp[beta] = L
        return L

    def _head(self, lam: KostantPartition):
        key = lam.parts
        if key not in self._heads:
            M = induce(*[self.cuspidal(b) for b in lam.parts])
            self._heads[key] = (M, simple_head(M, f"L{lam.label()}"))
        return self._heads[key]

    def simple(self, lam: KostantPartition) -> GradedModule:
        if len(lam.parts) == 1:
            return self.cuspidal(lam.parts[0])
        return self._head(lam)[1].simple

    def shift_of(self, lam: KostantPartition) -> int:
        """s(lambda): the reduced standard is q^s L(lambda_1) o ... o L(lambda_n), with head L(lambda) in degree 0."""
        if len(lam.parts) == 1:
            return 0
        return self._head(lam)[1].shift

    def reduced_standard(self, lam: KostantPartition) -> GradedModule:
        if len(lam.parts) == 1:
            return self.cuspidal(lam.parts[0])
        M, h = self._head(lam)
        out = M.shift(h.shift)
        out.meta["name"] = f"Dbar{lam.label()}"
        return out

    def reduced_standard_character(self, lam: KostantPartition) -> dict:
        """q^s times the shuffle of the cuspidal characters (independent of the module model)."""
        ch = self.cuspidal(lam.parts[0]).character()
        for b in lam.parts[1:]:
            ch = shuffle(self.datum, ch, self.cuspidal(b).character())
        s = self.shift_of(lam)
        return {w: v.shift(s) for w, v in ch.items()}

    def simple_characters(self, alpha) -> dict:
        return {lam.label(): self.simple(lam).character() for lam in self.kps(alpha)}

    # ---------------------------------------------------- cuspidal standard
    def _window(self, L: GradedModule, hi: int) -> int:
        return max(hi, L.lo + self.ann_degree + L.alg.buffer)

    def delta_module(self, beta, hi: int, method: str | None = None) -> GradedModule:
        beta = tuple(beta)
        method = method or self.method
        L = self.cuspidal(beta)
        if method == "auto":
            method = "z" if self._z_applicable(L) else "tower"
        key = (beta, method)
        cached = self._delta.get(key)
        if cached is not None and cached.hi >= hi:
            return cached if cached.hi == hi else cached.truncate(hi)
        V = delta_from_z(L, hi) if method == "z" else delta_tower(L, hi)
        V.meta["name"] = f"Delta({root_str(beta)})"
        self._delta[key] = V
        return V

    def _z_applicable(self, L: GradedModule) -> bool:
        supp = [i for i in self.datum.index_set if L.alpha[i - 1]]
        if len({self.datum.d(i) for i in supp}) > 1:
            return False
        return any(self.dom(L.alpha[i - 1]) != 0 for i in supp)

    def standard_cuspidal(self, beta, hi: int, method: str | None = None) -> CyclicPresentation:
        beta = tuple(beta)
        L = self.cuspidal(beta)
        H = self._window(L, hi)
        V = self.delta_module(beta, H, method)
        comp, vec = lowest_vector(V)
        return direct_presentation(V, comp, vec, self.ann_degree, f"Delta({root_str(beta)})")

    # ------------------------------------------------------- divided powers
    def standard_power(self, beta, m: int, hi: int) -> CyclicPresentation:
        beta = tuple(beta)
        if m == 1:
            return self.standard_cuspidal(beta, hi)
        key = (beta, m)
        cached = self._power.get(key)
        if cached is not None and cached.module.hi >= hi:
            return cached
        d_alpha = self.datum.d_root(beta)
        N = d_alpha * m * (m - 1)
        shift = N // 2
        H = hi
        for _ in range(8):
            try:
                P, rec = self._power_attempt(beta, m, H, N, shift)
            except WindowError:
                H += 2 * d_alpha
                continue
            if P.module.hi >= hi:
                self._power[key] = P
                self.power_records[key] = rec
                return P
            H += hi - P.module.hi
        raise WindowError(f"could not build Delta({root_str(beta)}^{m}) through degree {hi}", hi)

    def _power_attempt(self, beta, m: int, H: int, N: int, shift: int):
        d_alpha = self.datum.d_root(beta)
        base = self.standard_cuspidal(beta, H + 2 * N + 4 * d_alpha)
        Delta = base.module
        # the degree 2 d_alpha endomorphism of Delta(alpha) (multiplication by z)
        zs = hom_space(base, Delta, 2 * d_alpha)
        if zs.dim != 1:
            raise ConstructionError(f"End(Delta({root_str(beta)})) in degree {2 * d_alpha} has candidate dimension {zs.dim}")
        I = induce(*[Delta] * m)
        PI = induced_presentation([base] * m, I.hi, f"Delta({root_str(beta)})^{m}")
        I = PI.module
        buf = I.alg.buffer
        # X_r: z on factor r
        X = []
        for r in range(m):
            parts = [(base.comp, base.vector)] * m
            parts[r] = ((base.comp[0] + 2 * d_alpha, base.comp[1]), zs.basis[0])
            _, w = generator_vector(I, parts)
            X.append(extend_hom(PI, I, w, 2 * d_alpha, I.hi - buf - 2 * d_alpha))
        ds = hom_space(PI, I, -N)
        if ds.dim != 1:
            raise ConstructionError(f"lowest-degree endomorphism space of Delta^{m} has candidate dimension {ds.dim}")
        D = extend_hom(PI, I, ds.basis[0], -N, I.hi - buf)
        if D.commutation_defects():
            raise ConstructionError("divided difference candidate is not a module map")
        Xd = None
        for r in range(m):
            for _ in range(m - 1 - r):
                Xd = X[r] if Xd is None else X[r].compose(Xd)
        top = PI.module.hi - buf - 2 * N
        for order_name, e in (("X.d", Xd.compose(D)), ("d.X", D.compose(Xd))):
            e = _restrict(e, top)
            ee = _restrict(e.compose(e), top)
            c = _ratio(ee, e)
            if c is None or c == 0:
                continue
            e = e.scale(self.dom.inv(self.dom(c)))
            ee = _restrict(e.compose(e), top)
            if _ratio(ee, e) != 1:
                raise ConstructionError("e_m failed the idempotent check")
            break
        else:
            raise ConstructionError("no idempotent of the form X^delta d found")
        if e.commutation_defects():
            raise ConstructionError("e_m is not a module endomorphism in the window")
        image = _image(e, top)
        v = e.apply(PI.comp, PI.vector)
        B = rref([r for r in image["basis"][PI.comp]], I.dim(PI.comp), self.dom)[0]
        coords = coordinates(B, [v], self.dom)[0]
        # place the head L(alpha^m) in degree 0
        Lm = self.simple(KostantPartition((beta,) * m))
        applied = Lm.lo - image["module"].lo
        if abs(applied) != shift:
            raise ConstructionError(f"image of e_m sits at shift {applied}, expected +-{shift}")
        V = image["module"].shift(applied)
        V.meta["name"] = f"Delta({root_str(beta)}^{m})"
        comp = (PI.comp[0] + applied, PI.comp[1])
        P = direct_presentation(V, comp, coords, self.ann_degree, V.meta["name"])
        return P, PowerRecord(beta, m, order_name, c, top, applied)

    # ----------------------------------------------------------- standards
    def standard(self, lam: KostantPartition, hi: int) -> CyclicPresentation:
        key = lam.parts
        cached = self._standard.get(key)
        if cached is not None and cached.module.hi >= hi:
            return cached
        groups = lam.grouped()
        if len(groups) == 1:
            beta, m = groups[0]
            P = self.standard_power(beta, m, hi) if m > 1 else self.standard_cuspidal(beta, hi)
            self._standard[key] = P
            return P
        H = hi
        for _ in range(10):
            pieces = [self.standard_power(b, m, H) for b, m in groups]
            I = induce(*[p.module for p in pieces])
            if I.hi >= hi:
                P = induced_presentation(pieces, hi, f"Delta{lam.label()}")
                self._standard[key] = P
                return P
            H += hi - I.hi
        raise WindowError(f"could not build Delta{lam.label()} through degree {hi}", hi)


def _restrict(phi: Hom, top: int) -> Hom:
    return Hom(phi.source, phi.target, phi.degree, {c: M for c, M in phi.blocks.items() if c[0] <= top}, top)


def _ratio(A: Hom, B: Hom):
    """c with A = c B on every common block, or None."""
    c = None
    for comp in set(A.blocks) | set(B.blocks):
        MA, MB = A.blocks.get(comp), B.blocks.get(comp)
        ra = [x for row in MA for x in row] if MA else []
        rb = [x for row in MB for x in row] if MB else []
        n = max(len(ra), len(rb))
        ra += [0] * (n - len(ra))
        rb += [0] * (n - len(rb))
        for a, b in zip(ra, rb):
            if b == 0:
                if a != 0:
                    return None
                continue
            if c is None:
                c = a / b
            elif a != c * b:
                return None
    return c


def _image(e: Hom, top: int) -> dict:
    spans = {}
    for c, M in e.blocks.items():
        cols = [list(col) for col in zip(*M)]
        cols = [v for v in cols if any(v)]
        if cols:
            spans[e.tgt(c)] = cols
    V = from_embedding(e.target, spans, top, "image")
    basis = {c: rows for c, rows in spans.items()}
    return {"module": V, "basis": basis}
