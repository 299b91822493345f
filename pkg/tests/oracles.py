"""Independent oracles used by the test-suite.

The faithful polynomial representation of a KLR algebra: x_r acts by
multiplication, tau_r by a divided difference on equal neighbouring letters
and by a polynomial twist of the place permutation otherwise.  It shares no
code with the rewriting engine beyond the Cartan data.
"""
from __future__ import annotations

import itertools

import sympy

from klr.klr_algebra.permutations import lexmin_word


class PolynomialRep:
    def __init__(self, datum, alpha):
        self.datum = datum
        self.n = sum(alpha)
        self.xs = sympy.symbols(f"x0:{self.n}")
        self.alpha = tuple(alpha)

    def _twist(self, i, j, u, v):
        """P_ij(u, v): 1 unless i > j and c_ij < 0."""
        d = self.datum
        if i > j and d.c(i, j) < 0:
            return u ** (-d.c(j, i)) - v ** (-d.c(i, j))
        return sympy.Integer(1)

    def tau(self, r, vec):
        out = {}
        x = self.xs
        for word, f in vec.items():
            i, j = word[r], word[r + 1]
            swapped = f.subs({x[r]: x[r + 1], x[r + 1]: x[r]}, simultaneous=True)
            if i == j:
                g = sympy.cancel((swapped - f) / (x[r] - x[r + 1]))
                tgt = word
            else:
                g = self._twist(i, j, x[r], x[r + 1]) * swapped
                tgt = word[:r] + (j, i) + word[r + 2:]
            out[tgt] = sympy.expand(out.get(tgt, 0) + g)
        return {k: v for k, v in out.items() if v != 0}

    def xmul(self, t, vec):
        return {k: sympy.expand(self.xs[t] * v) for k, v in vec.items()}

    def act_key(self, key, vec):
        w, a, i = key
        src = {i: vec[i]} if i in vec else {}
        if not src:
            return {}
        for t, e in enumerate(a):
            for _ in range(e):
                src = self.xmul(t, src)
        for r in reversed(lexmin_word(w)):
            src = self.tau(r, src)
        return src

    def act(self, elem, vec):
        out = {}
        for key, c in elem.terms.items():
            for k, v in self.act_key(key, vec).items():
                out[k] = sympy.expand(out.get(k, 0) + c * v)
        return {k: v for k, v in out.items() if v != 0}

    def test_vectors(self, words, degree=2):
        """A few polynomials per word, enough to separate normal-form monomials."""
        x = self.xs
        monos = [sympy.Integer(1)]
        for e in itertools.product(range(degree + 1), repeat=self.n):
            if sum(e) <= degree:
                monos.append(sympy.Mul(*[x[k] ** e[k] for k in range(self.n)]))
        base = sum((k + 2) * m for k, m in enumerate(monos))
        return [{w: base} for w in words] + [{w: sympy.Integer(1)} for w in words]


def shuffle_character(datum, ch1, ch2):
    """Quantum shuffle of two characters given as {word: {deg: coeff}}."""
    out = {}
    for w1, s1 in ch1.items():
        for w2, s2 in ch2.items():
            n1, n2 = len(w1), len(w2)
            for pos in itertools.combinations(range(n1 + n2), n1):
                word = [None] * (n1 + n2)
                rest = [k for k in range(n1 + n2) if k not in pos]
                for k, p in enumerate(pos):
                    word[p] = w1[k]
                for k, p in enumerate(rest):
                    word[p] = w2[k]
                shift = 0
                for a in range(n1):
                    for b in range(n2):
                        if pos[a] > rest[b]:
                            shift -= datum.dot(w1[a], w2[b])
                tgt = out.setdefault(tuple(word), {})
                for d1, c1 in s1.items():
                    for d2, c2 in s2.items():
                        tgt[d1 + d2 + shift] = tgt.get(d1 + d2 + shift, 0) + c1 * c2
    return {w: {d: c for d, c in s.items() if c} for w, s in out.items()}
