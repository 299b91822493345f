"""Z-forms of cyclic modules and their reductions modulo p."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from ..exact_linalg import GF, QQ, coordinates, hermite_row_basis
from ..graded_modules import GradedModule
from ..graded_modules.module import mat_vec
from ..klr_algebra import WindowError


class LatticeError(RuntimeError):
    pass


@dataclass
class IntegralLattice:
    """H_Z . v inside a rational module, one Hermite basis per component."""

    ambient: GradedModule
    comp: tuple
    vector: list
    basis: dict  # comp -> rows (ambient coordinates, rational)
    hi: int | None
    actions: dict  # (gen, comp) -> integer matrix in lattice coordinates

    def rank_at(self, comp) -> int:
        return len(self.basis.get(comp, []))

    def is_full(self) -> bool:
        return all(self.rank_at(c) == self.ambient.dim(c) for c in self.ambient.comps() if self.hi is None or c[0] <= self.hi)

    def module(self, dom) -> GradedModule:
        """The lattice tensored with ``dom`` (Q or F_p)."""
        act = {k: [[dom(x) for x in row] for row in M] for k, M in self.actions.items()}
        dims = {c: len(rows) for c, rows in self.basis.items()}
        meta = {"name": f"{self.ambient.meta.get('name', '?')}_Z"}
        return GradedModule(self.ambient.datum, self.ambient.alpha, dom, dims, act, self.hi, meta)

    def to_json(self) -> dict:
        return {
            "generator": {"deg": self.comp[0], "word": list(self.comp[1]), "vector": [str(x) for x in self.vector]},
            "trust": self.hi,
            "basis": [
                {"deg": c[0], "word": list(c[1]), "rows": [[str(x) for x in r] for r in rows]}
                for c, rows in sorted(self.basis.items())
            ],
        }


def _hnf_rational(vectors, ncols: int):
    """Hermite basis of the Z-span of rational vectors (scaled through a common denominator)."""
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return []
    den = 1
    for v in vecs:
        for x in v:
            den = lcm(den, int(QQ(x).denominator))
    ints = [[int(QQ(x) * den) for x in v] for v in vecs]
    H = hermite_row_basis(ints, ncols)
    return [[QQ(x) / den for x in row] for row in H]


def integral_form(V: GradedModule, comp, vector, hi: int | None = None) -> IntegralLattice:
    """Lattice spanned over Z by tau_w x^a . v for the normal-form monomials of the algebra."""
    if V.dom != QQ:
        raise ValueError("integral forms are taken inside rational modules")
    alg = V.alg
    if hi is None:
        hi = V.hi if V.hi is None else V.hi - alg.buffer
    elif V.hi is not None and hi > V.hi - alg.buffer:
        raise WindowError(f"lattice through {hi} needs the module through {hi + alg.buffer}", hi + alg.buffer)
    basis = {}
    for c in V.comps():
        if hi is not None and c[0] > hi:
            continue
        e = c[0] - comp[0]
        keys = alg.basis_keys(e, left=[c[1]], right=[comp[1]]) if e >= alg.d_min else []
        imgs = []
        for h in keys:
            _, v = V.apply_key(h, comp, vector)
            imgs.append(v)
        rows = _hnf_rational(imgs, V.dim(c))
        if len(rows) != V.dim(c):
            raise LatticeError(f"generator does not span component {c}")
        basis[c] = rows
    actions = {}
    for c, rows in basis.items():
        for g in V.gens():
            t = V.target(g, c)
            if t not in basis:
                continue
            M = V.matrix(g, c)
            if M is None:
                continue
            imgs = [mat_vec(M, r, QQ) for r in rows]
            co = coordinates(basis[t], imgs, QQ)
            if co is None:
                raise LatticeError(f"image of the lattice at {c} under {g} leaves the span")
            # coordinates are returned per image; transpose to (target rows x source cols)
            mat = [[co[j][i] for j in range(len(rows))] for i in range(len(basis[t]))]
            for row in mat:
                for x in row:
                    if QQ(x).denominator != 1:
                        raise LatticeError(f"lattice is not invariant under {g} at {c}")
            if any(x for row in mat for x in row):
                actions[(g, c)] = [[int(x) for x in row] for row in mat]
    return IntegralLattice(V, comp, list(vector), basis, hi, actions)


def reduce_mod_p(lattice: IntegralLattice, p: int) -> GradedModule:
    M = lattice.module(GF(p))
    M.meta["name"] = f"{lattice.ambient.meta.get('name', '?')} mod {p}"
    return M

