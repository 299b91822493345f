"""Degreewise matrix models of graded KLR modules.

A component is a pair ``(degree, word)``.  Generators are ``("x", t)`` and
``("t", r)`` with 0-based positions.  ``action[(gen, comp)]`` is the matrix
(target rows, source columns) of the generator on that component.

A module with ``hi = None`` is finite dimensional and stored in full.  With
an integer ``hi`` it is the truncation of a larger module: every component
of degree ``<= hi`` is exact, and a generator action is stored whenever
its target degree is ``<= hi``.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from ..exact_linalg import QQ, Domain, LaurentSeries, SparseMatrix, parse_domain, rank, rref
from ..klr_algebra import KLRAlgebra, KLRElement, WindowError, lexmin_word
from ..root_data import CartanDatum

Comp = tuple  # (degree, word)
Gen = tuple  # ("x", t) | ("t", r)


def gen_label(gen: Gen) -> str:
    return f"{gen[0]}{gen[1] + 1}"


def parse_gen(label: str) -> Gen:
    return (label[0], int(label[1:]) - 1)


def mat_mul(A, B, dom: Domain):
    if not A or not B:
        return [[dom.zero()] * (len(B[0]) if B else 0) for _ in A]
    cols = len(B[0])
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out.append([dom(sum(a * B[k][c] for k, a in nz)) for c in range(cols)])
    return out


def mat_vec(A, v, dom: Domain) -> list:
    nz = [(k, x) for k, x in enumerate(v) if x]
    return [dom(sum(row[k] * x for k, x in nz)) for row in A]


def mat_add(A, B, dom: Domain, c=1):
    return [[dom(a + c * b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def zero_mat(r: int, c: int, dom: Domain):
    return [[dom.zero()] * c for _ in range(r)]


def is_zero(M) -> bool:
    return all(x == 0 for row in M for x in row)


class GradedModule:
    def __init__(
        self,
        datum: CartanDatum,
        alpha: Sequence[int],
        dom: Domain,
        dims: Mapping[Comp, int],
        action: Mapping[tuple, list],
        hi: int | None = None,
        meta: dict | None = None,
    ):
        self.datum = datum
        self.alpha = tuple(alpha)
        self.dom = dom
        self.dims = {(int(d), tuple(w)): int(n) for (d, w), n in dims.items() if n > 0 and (hi is None or d <= hi)}
        self.hi = hi
        self.action = {}
        for (gen, comp), M in action.items():
            tgt = self.target(gen, comp)
            if comp in self.dims and tgt in self.dims and not is_zero(M):
                self.action[(gen, comp)] = M
        self.meta = dict(meta or {})
        self._keymats: dict = {}

    # ---------------------------------------------------------------- shape
    @property
    def alg(self) -> KLRAlgebra:
        return KLRAlgebra(self.datum, self.alpha)

    @property
    def n(self) -> int:
        return sum(self.alpha)

    @property
    def lo(self) -> int:
        return min((d for d, _ in self.dims), default=0)

    @property
    def top(self) -> int:
        return max((d for d, _ in self.dims), default=-1)

    @property
    def finite(self) -> bool:
        return self.hi is None

    def comps(self) -> list[Comp]:
        return sorted(self.dims)

    def dim(self, comp: Comp) -> int:
        return self.dims.get(comp, 0)

    def total_dim(self) -> int:
        if self.hi is not None:
            raise ValueError("truncated module has no total dimension")
        return sum(self.dims.values())

    @property
    def boundary(self) -> frozenset:
        """Crossings missing from a block subalgebra (empty for H_alpha itself)."""
        sizes = self.meta.get("blocks")
        if not sizes:
            return frozenset()
        return frozenset(r - 1 for r in itertools.accumulate(sizes[:-1]))

    def gens(self) -> list[Gen]:
        cut = self.boundary
        return [("x", t) for t in range(self.n)] + [("t", r) for r in range(self.n - 1) if r not in cut]

    def gen_degree(self, gen: Gen, word) -> int:
        kind, r = gen
        if kind == "x":
            return 2 * self.datum.d(word[r])
        return -self.datum.dot(word[r], word[r + 1])

    def target(self, gen: Gen, comp: Comp) -> Comp:
        d, w = comp
        kind, r = gen
        if kind == "x":
            return (d + 2 * self.datum.d(w[r]), w)
        return (d - self.datum.dot(w[r], w[r + 1]), w[:r] + (w[r + 1], w[r]) + w[r + 2 :])

    # -------------------------------------------------------------- action
    def matrix(self, gen: Gen, comp: Comp):
        """Matrix of ``gen`` on ``comp``, or None when the map is zero."""
        tgt = self.target(gen, comp)
        if self.hi is not None and tgt[0] > self.hi:
            raise WindowError(f"generator {gen_label(gen)} leaves the trusted window at degree {tgt[0]} > {self.hi}", tgt[0])
        return self.action.get((gen, comp))

    def apply_gen(self, gen: Gen, comp: Comp, vec):
        tgt = self.target(gen, comp)
        M = self.matrix(gen, comp)
        if M is None or self.dim(tgt) == 0:
            return tgt, [self.dom.zero()] * self.dim(tgt)
        return tgt, mat_vec(M, vec, self.dom)

    def key_matrix(self, key, comp: Comp):
        """(target comp, matrix) of the normal-form monomial ``key``; matrix None if zero.

        The monomial tau_w x^a 1_i is applied x-part first, then the crossings.
        """
        memo = self._keymats.get((key, comp))
        if memo is not None:
            return memo
        w, a, i = key
        if comp[1] != i:
            res = (None, None)
        else:
            cur = comp
            M = None  # identity
            steps = [("x", t) for t, e in enumerate(a) for _ in range(e)]
            steps += [("t", r) for r in reversed(lexmin_word(w))]
            for g in steps:
                G = self.matrix(g, cur)
                cur = self.target(g, cur)
                if G is None:
                    M = False
                    # keep walking to report the target and window errors consistently
                    continue
                if M is False:
                    continue
                M = G if M is None else mat_mul(G, M, self.dom)
            if M is None:
                M = [[self.dom.one() if r == c else self.dom.zero() for c in range(self.dim(comp))] for r in range(self.dim(comp))]
            res = (cur, None if M is False else M)
        self._keymats[(key, comp)] = res
        return res

    def apply_key(self, key, comp: Comp, vec):
        tgt, M = self.key_matrix(key, comp)
        if tgt is None:
            return None, None
        if M is None:
            return tgt, [self.dom.zero()] * self.dim(tgt)
        return tgt, mat_vec(M, vec, self.dom)

    def apply(self, elem: KLRElement, comp: Comp, vec) -> dict:
        """elem . vec as {comp: vector} (zero parts dropped)."""
        out: dict = {}
        for key, c in elem.terms.items():
            tgt, v = self.apply_key(key, comp, vec)
            if tgt is None or self.dim(tgt) == 0:
                continue
            acc = out.setdefault(tgt, [self.dom.zero()] * self.dim(tgt))
            for k, x in enumerate(v):
                if x:
                    acc[k] = self.dom(acc[k] + c * x)
        return {k: v for k, v in out.items() if any(v)}

    def element_matrix(self, elem: KLRElement, comp: Comp) -> dict:
        """{target comp: matrix} of a (possibly non-monomial) element on ``comp``."""
        out: dict = {}
        for key, c in elem.terms.items():
            tgt, M = self.key_matrix(key, comp)
            if tgt is None or M is None or self.dim(tgt) == 0:
                continue
            if tgt in out:
                out[tgt] = mat_add(out[tgt], M, self.dom, c)
            else:
                out[tgt] = [[self.dom(c * x) for x in row] for row in M]
        return {k: M for k, M in out.items() if not is_zero(M)}

    # ------------------------------------------------------------ relations
    def _path(self, gens: Sequence[Gen], comp: Comp):
        """Apply ``gens`` in order (first element first); matrix None means zero."""
        cur = comp
        M = [[self.dom.one() if r == c else self.dom.zero() for c in range(self.dim(comp))] for r in range(self.dim(comp))]
        for g in gens:
            G = self.matrix(g, cur)
            cur = self.target(g, cur)
            if M is None:
                continue
            M = None if G is None else mat_mul(G, M, self.dom)
        if M is None:
            M = zero_mat(self.dim(cur), self.dim(comp), self.dom)
        return cur, M

    def _poly_matrix(self, poly: Mapping, comp: Comp, tgt: Comp):
        total = zero_mat(self.dim(tgt), self.dim(comp), self.dom)
        for exps, c in poly.items():
            steps = [("x", t) for t, e in enumerate(exps) for _ in range(e)]
            end, M = self._path(steps, comp)
            if end != tgt:
                raise AssertionError("relation polynomial is not homogeneous of the expected degree")
            total = mat_add(total, M, self.dom, c)
        return total

    def _relations(self, word):
        """(name, lhs path, rhs path | None, scalar on identity, polynomial) per defining relation."""
        alg = self.alg
        n = self.n
        out = []
        for s, t in itertools.combinations(range(n), 2):
            out.append((f"x{s + 1}x{t + 1}", [("x", s), ("x", t)], [("x", t), ("x", s)], 0, None))
        for r in range(n - 1):
            for t in range(n):
                st = r + 1 if t == r else r if t == r + 1 else t
                delta = (word[r] == word[r + 1]) * ((t == r + 1) - (t == r))
                out.append((f"x{t + 1}t{r + 1}", [("t", r), ("x", t)], [("x", st), ("t", r)], delta, None))
            out.append((f"t{r + 1}^2", [("t", r), ("t", r)], None, 0, alg.quad_poly(word, r)))
        for r, s in itertools.combinations(range(n - 1), 2):
            if s - r > 1:
                out.append((f"t{r + 1}t{s + 1}", [("t", r), ("t", s)], [("t", s), ("t", r)], 0, None))
        for m in range(n - 2):
            out.append(
                (f"braid{m + 1}", [("t", m + 1), ("t", m), ("t", m + 1)], [("t", m), ("t", m + 1), ("t", m)], 0, alg.braid_poly(word, m))
            )
        cut = self.boundary
        if cut:
            out = [rel for rel in out if not any(g[0] == "t" and g[1] in cut for g in rel[1] + (rel[2] or []))]
        return out

    def relation_defects(self, max_degree: int | None = None) -> list[str]:
        """Defining relations failing as matrix identities on components within the window."""
        limit = self.hi
        if max_degree is not None:
            limit = max_degree if limit is None else min(limit, max_degree)
        bad = []
        for comp in self.comps():
            if limit is not None and comp[0] > limit:
                continue
            for name, lhs, rhs, scalar, poly in self._relations(comp[1]):
                try:
                    tl, D = self._path(lhs, comp)
                    if limit is not None and tl[0] > limit:
                        continue
                    if rhs is not None:
                        tr, R = self._path(rhs, comp)
                        if tr != tl:
                            raise AssertionError("relation sides land in different components")
                        D = mat_add(D, R, self.dom, -1)
                    if scalar and tl == comp:
                        for k in range(len(D)):
                            D[k][k] = self.dom(D[k][k] - scalar)
                    if poly:
                        D = mat_add(D, self._poly_matrix(poly, comp, tl), self.dom, -1)
                except WindowError:
                    continue
                if not is_zero(D):
                    bad.append(f"{name} on {comp}")
        return bad

    # -------------------------------------------------------- constructions
    def shift(self, k: int) -> "GradedModule":
        """q^k V: every component moves up by k."""
        if k == 0:
            return self
        dims = {(d + k, w): n for (d, w), n in self.dims.items()}
        act = {(g, (d + k, w)): M for (g, (d, w)), M in self.action.items()}
        meta = {k2: v for k2, v in self.meta.items() if k2 not in ("layout", "blocks_of")}
        meta["shift"] = meta.get("shift", 0) + k
        return GradedModule(self.datum, self.alpha, self.dom, dims, act, None if self.hi is None else self.hi + k, meta)

    def truncate(self, hi: int) -> "GradedModule":
        if self.hi is not None and hi > self.hi:
            raise WindowError(f"cannot truncate at {hi} beyond trusted degree {self.hi}", hi)
        return GradedModule(self.datum, self.alpha, self.dom, self.dims, self.action, hi, self.meta)

    def dual(self) -> "GradedModule":
        """V^* with (h f)(v) = f(iota(h) v); component (d, i) is the dual of (-d, i)."""
        if self.hi is not None:
            raise ValueError("duality is only applied to finite-dimensional modules")
        dims = {(-d, w): n for (d, w), n in self.dims.items()}
        act = {}
        for (g, (d, w)), M in self.action.items():
            td, tw = self.target(g, (d, w))
            # g maps V_(d,w) -> V_(td,tw); on duals it maps (-td, tw) -> (-d, w) by transpose
            act[(g, (-td, tw))] = [list(col) for col in zip(*M)]
        meta = {"name": f"dual({self.meta.get('name', '?')})"}
        return GradedModule(self.datum, self.alpha, self.dom, dims, act, None, meta)

    def change_domain(self, dom: Domain) -> "GradedModule":
        """Entrywise conversion (e.g. an integral model read modulo p)."""
        act = {k: [[dom(x) for x in row] for row in M] for k, M in self.action.items()}
        return GradedModule(self.datum, self.alpha, dom, self.dims, act, self.hi, self.meta)

    # ------------------------------------------------------------ character
    def character(self) -> dict:
        """{word: LaurentSeries} of graded dimensions of weight spaces."""
        per: dict = {}
        for (d, w), n in self.dims.items():
            per.setdefault(w, {})[d] = n
        lo = self.lo
        out = {}
        for w in self.datum.words(self.alpha):
            c = per.get(w, {})
            if self.hi is None:
                if c:
                    out[w] = LaurentSeries(c)
            else:
                out[w] = LaurentSeries(c, lo, self.hi, open_above=True)
        return out

    def graded_dim(self) -> LaurentSeries:
        tot: dict = {}
        for (d, _), n in self.dims.items():
            tot[d] = tot.get(d, 0) + n
        if self.hi is None:
            return LaurentSeries(tot)
        return LaurentSeries(tot, self.lo, self.hi, open_above=True)

    # ---------------------------------------------------------------- json
    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "type": self.datum.label,
            "domain": self.dom.name,
            "window": [self.lo, self.hi],
            "trust": self.hi,
            "dims": [[d, list(w), n] for (d, w), n in sorted(self.dims.items())],
            "actions": [
                {"gen": gen_label(g), "deg": c[0], "word": list(c[1]), "matrix": SparseMatrix.from_dense(M, self.dom, self.dim(c)).to_json()}
                for (g, c), M in sorted(self.action.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            ],
            "meta": {k: v for k, v in sorted(self.meta.items()) if isinstance(v, (int, str))},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedModule":
        datum = CartanDatum.parse(data["type"])
        dom = parse_domain(data["domain"])
        dims = {(d, tuple(w)): n for d, w, n in data["dims"]}
        act = {}
        for a in data["actions"]:
            comp = (a["deg"], tuple(a["word"]))
            act[(parse_gen(a["gen"]), comp)] = SparseMatrix.from_json(a["matrix"], dom).to_dense()
        return cls(datum, data["alpha"], dom, dims, act, data["trust"], data.get("meta"))

    def __repr__(self) -> str:
        name = self.meta.get("name", "module")
        win = "finite" if self.hi is None else f"trusted through {self.hi}"
        return f"<GradedModule {name} over {self.datum.label} alpha={self.alpha} {self.dom.name}, {win}>"


# ------------------------------------------------------------------ builders
def one_dimensional(datum: CartanDatum, letter: int, dom: Domain = QQ) -> GradedModule:
    """L(alpha_i): k in degree 0 on the word (i), x acting by zero."""
    alpha = [0] * datum.rank
    alpha[letter - 1] = 1
    return GradedModule(datum, alpha, dom, {(0, (letter,)): 1}, {}, None, {"name": f"L(a{letter})"})


def trivial_zero(datum: CartanDatum, dom: Domain = QQ) -> GradedModule:
    """The module k over H_0 (empty word)."""
    return GradedModule(datum, [0] * datum.rank, dom, {(0, ()): 1}, {}, None, {"name": "1"})


def submodule(V: GradedModule, spans: Mapping[Comp, Iterable[Sequence]], close: bool = True, name: str = "sub") -> tuple[GradedModule, dict]:
    """Submodule generated (or spanned, when ``close`` is False) by the given vectors.

    Returns the module and its embedding ``{comp: basis rows in V coordinates}``.
    """
    dom = V.dom
    basis: dict = {}
    queue = []
    for comp, vecs in spans.items():
        for v in vecs:
            queue.append((comp, [dom(x) for x in v]))

    def add(comp, v):
        rows = basis.get(comp, [])
        n = V.dim(comp)
        if rank(rows + [v], n, dom) > len(rows):
            basis[comp] = rows + [v]
            return True
        return False

    limit = V.hi if V.hi is None else V.hi
    while queue:
        comp, v = queue.pop()
        if not any(v) or (limit is not None and comp[0] > limit):
            continue
        if not add(comp, v):
            continue
        if close:
            for g in V.gens():
                try:
                    tgt, w = V.apply_gen(g, comp, v)
                except WindowError:
                    continue
                if any(w):
                    queue.append((tgt, w))
    trust = V.hi
    if close and V.hi is not None:
        trust = V.hi - V.alg.buffer
    return from_embedding(V, basis, trust, name), {c: rref(b, V.dim(c), dom)[0] for c, b in basis.items()}


def from_embedding(V: GradedModule, basis: Mapping[Comp, list], hi: int | None, name: str) -> GradedModule:
    """Module structure on invariant subspaces ``basis[comp]`` (rows in V coordinates)."""
    from ..exact_linalg import coordinates

    dom = V.dom
    B = {c: rref(rows, V.dim(c), dom)[0] for c, rows in basis.items() if rows}
    B = {c: r for c, r in B.items() if r and (hi is None or c[0] <= hi)}
    dims = {c: len(r) for c, r in B.items()}
    act = {}
    for comp, rows in B.items():
        for g in V.gens():
            try:
                tgt = V.target(g, comp)
                if hi is not None and tgt[0] > hi:
                    continue
                M = V.matrix(g, comp)
            except WindowError:
                continue
            if M is None or tgt not in B:
                if M is not None and tgt not in B:
                    imgs = [mat_vec(M, r, dom) for r in rows]
                    if any(any(x) for x in imgs):
                        raise ValueError(f"subspace is not invariant under {gen_label(g)} at {comp}")
                continue
            imgs = [mat_vec(M, r, dom) for r in rows]
            coords = coordinates(B[tgt], imgs, dom)
            if coords is None:
                raise ValueError(f"subspace is not invariant under {gen_label(g)} at {comp}")
            act[(g, comp)] = [list(col) for col in zip(*coords)] if coords else []
    meta = {"name": name}
    return GradedModule(V.datum, V.alpha, dom, dims, act, hi, meta)
