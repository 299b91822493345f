"""Elements of H_alpha as finite combinations of normal-form monomials."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..exact_linalg import QQ, Domain
from .algebra import Key, KLRAlgebra
from .permutations import act, from_word, identity, lexmin_word


class KLRElement:
    __slots__ = ("alg", "dom", "terms")

    def __init__(self, alg: KLRAlgebra, terms: Mapping[Key, object] | None = None, dom: Domain = QQ):
        self.alg = alg
        self.dom = dom
        self.terms = {k: dom(v) for k, v in (terms or {}).items() if dom(v) != 0}

    # ------------------------------------------------------------ builders
    @classmethod
    def idempotent(cls, alg: KLRAlgebra, word, dom: Domain = QQ) -> "KLRElement":
        return cls(alg, {alg.idempotent_key(word): 1}, dom)

    @classmethod
    def one(cls, alg: KLRAlgebra, dom: Domain = QQ) -> "KLRElement":
        return cls(alg, {alg.idempotent_key(i): 1 for i in alg.words}, dom)

    @classmethod
    def generator(cls, alg: KLRAlgebra, gen, word, dom: Domain = QQ) -> "KLRElement":
        """``gen`` is ('x', t) or ('t', r) (0-based), times 1_word on the right."""
        e = alg.gen_apply(gen, {alg.idempotent_key(word): 1})
        return cls(alg, e, dom)

    @classmethod
    def monomial(cls, alg: KLRAlgebra, w, exps, word, coeff=1, dom: Domain = QQ) -> "KLRElement":
        return cls(alg, {(tuple(w), tuple(exps), tuple(word)): coeff}, dom)

    @classmethod
    def block_idempotent(cls, alg: KLRAlgebra, composition: Sequence[Sequence[int]], dom: Domain = QQ) -> "KLRElement":
        """1_{beta_1,...,beta_m}: sum of 1_i over concatenations i of words of weight beta_k."""
        import itertools

        pieces = [alg.datum.words(b) for b in composition]
        if tuple(map(sum, zip(*composition))) != alg.alpha:
            raise ValueError("composition does not sum to alpha")
        terms = {alg.idempotent_key(sum(ws, ())): 1 for ws in itertools.product(*pieces)}
        return cls(alg, terms, dom)

    # ----------------------------------------------------------- algebra
    def _check(self, other: "KLRElement") -> None:
        if other.alg is not self.alg:
            raise ValueError("weight mismatch between KLR elements")
        if other.dom != self.dom:
            raise ValueError("coefficient domain mismatch")

    def __add__(self, other: "KLRElement") -> "KLRElement":
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return KLRElement(self.alg, t, self.dom)

    def __neg__(self) -> "KLRElement":
        return KLRElement(self.alg, {k: -v for k, v in self.terms.items()}, self.dom)

    def __sub__(self, other: "KLRElement") -> "KLRElement":
        return self + (-other)

    def scale(self, c) -> "KLRElement":
        return KLRElement(self.alg, {k: c * v for k, v in self.terms.items()}, self.dom)

    def __mul__(self, other):
        if not isinstance(other, KLRElement):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for k, v in self.alg.mul_keys(k1, k2).items():
                    out[k] = out.get(k, 0) + c1 * c2 * v
        return KLRElement(self.alg, out, self.dom)

    __rmul__ = scale

    def iota(self) -> "KLRElement":
        out: dict = {}
        for k, c in self.terms.items():
            for k2, v in self.alg.iota_key(k).items():
                out[k2] = out.get(k2, 0) + c * v
        return KLRElement(self.alg, out, self.dom)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, KLRElement) and other.alg is self.alg and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # ----------------------------------------------------------- grading
    def degrees(self) -> set[int]:
        return {self.alg.degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is not homogeneous (or is zero)")
        return ds.pop()

    def homogeneous_component(self, d: int) -> "KLRElement":
        return KLRElement(self.alg, {k: v for k, v in self.terms.items() if self.alg.degree(k) == d}, self.dom)

    def left_words(self) -> set:
        return {act(k[0], k[2]) for k in self.terms}

    def right_words(self) -> set:
        return {k[2] for k in self.terms}

    # -------------------------------------------------------------- json
    def to_json(self) -> list:
        out = []
        for (w, a, i), c in sorted(self.terms.items(), key=lambda kv: (kv[0][2], lexmin_word(kv[0][0]), kv[0][1])):
            out.append(
                {
                    "word": list(i),
                    "reduced_word": [r + 1 for r in lexmin_word(w)],
                    "exponents": list(a),
                    "coeff": self.dom.to_str(c),
                }
            )
        return out

    @classmethod
    def from_json(cls, alg: KLRAlgebra, data: Iterable[dict], dom: Domain = QQ) -> "KLRElement":
        terms = {}
        for t in data:
            w = from_word([r - 1 for r in t["reduced_word"]], alg.n)
            terms[(w, tuple(t["exponents"]), tuple(t["word"]))] = dom.parse(t["coeff"])
        return cls(alg, terms, dom)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (w, a, i), c in sorted(self.terms.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
            mono = "".join(f"t{r + 1}" for r in lexmin_word(w))
            mono += "".join(f"x{t + 1}" + (f"^{e}" if e > 1 else "") for t, e in enumerate(a) if e)
            parts.append(f"{c}*{mono or ''}1_{''.join(map(str, i))}")
        return " + ".join(parts)


def element_identity(alg: KLRAlgebra, dom: Domain = QQ) -> KLRElement:
    return KLRElement.one(alg, dom)


def trivial_key(n: int, word) -> Key:
    return (identity(n), tuple([0] * n), tuple(word))
