"""Graded dimensions of 1_i H 1_j obtained by closing 1_j under generators."""
from __future__ import annotations

from collections import deque

from ..exact_linalg import QQ
from .algebra import KLRAlgebra
from .permutations import act, lexmin_word


class _Echelon:
    """Incremental row echelon form of sparse vectors keyed by basis monomials."""

    def __init__(self, order_key):
        self.rows: dict = {}
        self.order_key = order_key

    def insert(self, vec: dict) -> dict | None:
        v = {k: QQ(c) for k, c in vec.items() if c}
        while v:
            lead = max(v, key=self.order_key)
            row = self.rows.get(lead)
            if row is None:
                c = v[lead]
                v = {k: x / c for k, x in v.items()}
                self.rows[lead] = v
                return v
            c = v[lead]
            for k, x in row.items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return None

    def __len__(self) -> int:
        return len(self.rows)


def closure_graded_dims(alg: KLRAlgebra, right_word, lo: int, hi: int) -> dict:
    """{(left_word, degree): dim} for lo <= degree <= hi, from the span of products of generators.

    Intermediate products are kept up to ``hi`` plus a slack covering every
    descent through negative-degree crossings.
    """
    datum = alg.datum
    n = alg.n
    slack = (n * (n - 1) // 2) * max((abs(x) for row in datum.gram for x in row), default=0)
    cap = hi + slack
    order_key = lambda k: (lexmin_word(k[0]), k[1])  # noqa: E731
    spaces: dict = {}
    start = alg.idempotent_key(right_word)
    queue = deque([{start: 1}])
    spaces[(tuple(right_word), 0)] = _Echelon(order_key)
    spaces[(tuple(right_word), 0)].insert({start: 1})
    gens = [("x", t) for t in range(n)] + [("t", r) for r in range(n - 1)]
    while queue:
        elem = queue.popleft()
        for g in gens:
            prod = alg.gen_apply(g, elem)
            if not prod:
                continue
            key0 = next(iter(prod))
            deg = alg.degree(key0)
            if deg > cap:
                continue
            lw = act(key0[0], key0[2])
            sp = spaces.setdefault((lw, deg), _Echelon(order_key))
            new = sp.insert(prod)
            if new is not None:
                queue.append(new)
    return {
        (lw, d): len(sp) for (lw, d), sp in spaces.items() if lo <= d <= hi and len(sp)
    }
