"""Finite-type Cartan data and positive roots (Bourbaki numbering)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

Root = tuple  # coefficient vector over the simple roots


def _gram(kind: str, n: int) -> list[list[int]]:
    """Symmetrised form (alpha_i . alpha_j), short simple roots squared to 2."""
    B = [[0] * n for _ in range(n)]

    def link(i, j, v):
        B[i][j] = B[j][i] = v

    if kind == "A":
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif kind == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        for i in range(n - 1):
            B[i][i] = 4
        B[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif kind == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        for i in range(n - 1):
            B[i][i] = 2
        B[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in 6..8")
        for i in range(n):
            B[i][i] = 2
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif kind == "F":
        if n != 4:
            raise ValueError("F_4 only")
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif kind == "G":
        if n != 2:
            raise ValueError("G_2 only")
        B[0][0], B[1][1] = 2, 6
        link(0, 1, -3)
    else:
        raise ValueError(f"unknown Cartan type {kind!r}")
    return B


@dataclass(frozen=True)
class CartanDatum:
    """Cartan datum with index set ``1..rank``.

    ``gram[i][j]`` is ``alpha_i . alpha_j``; ``d_i = gram[i][i] / 2`` and
    ``c_ij = gram[i][j] / d_i``.  Signs are ``eps(i, j) = +1`` for ``i < j``.
    """

    kind: str
    rank: int
    gram: tuple = field(repr=False)

    @classmethod
    def of_type(cls, kind: str, rank: int) -> "CartanDatum":
        kind = kind.upper()
        B = _gram(kind, rank)
        return cls(kind, rank, tuple(tuple(r) for r in B))

    @classmethod
    def parse(cls, label: str) -> "CartanDatum":
        """``"A3"``, ``"B2"``, ``"G2"`` ..."""
        label = label.strip().replace("_", "")
        if len(label) < 2 or not label[1:].isdigit():
            raise ValueError(f"bad Cartan type label {label!r}")
        return cls.of_type(label[0], int(label[1:]))

    @classmethod
    def from_json(cls, text_or_dict) -> "CartanDatum":
        data = json.loads(text_or_dict) if isinstance(text_or_dict, str) else text_or_dict
        conv = data.get("sign_convention", "lt")
        if conv != "lt":
            raise ValueError("only the 'lt' sign convention (eps_ij = +1 iff i < j) is supported")
        return cls.of_type(data["type"], int(data["rank"]))

    def to_json(self) -> dict:
        return {"type": self.kind, "rank": self.rank, "sign_convention": "lt"}

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def index_set(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def dot(self, i: int, j: int) -> int:
        return self.gram[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.gram[i - 1][i - 1] // 2

    def c(self, i: int, j: int) -> int:
        return self.gram[i - 1][j - 1] // self.d(i)

    @cached_property
    def cartan_matrix(self) -> tuple:
        n = self.rank
        return tuple(tuple(self.c(i, j) for j in range(1, n + 1)) for i in range(1, n + 1))

    def eps(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("eps is only defined for distinct labels")
        return 1 if i < j else -1

    @property
    def simply_laced(self) -> bool:
        return self.kind in ("A", "D", "E")

    def validate(self) -> None:
        n = self.rank
        for i in range(1, n + 1):
            if self.c(i, i) != 2:
                raise ValueError("diagonal of the Cartan matrix must be 2")
            for j in range(1, n + 1):
                if i != j:
                    if self.c(i, j) > 0:
                        raise ValueError("off-diagonal Cartan entries must be <= 0")
                    if self.d(i) * self.c(i, j) != self.d(j) * self.c(j, i):
                        raise ValueError("symmetriser mismatch")
                    if self.c(i, j) < 0 and self.eps(i, j) * self.eps(j, i) != -1:
                        raise ValueError("sign choice must satisfy eps_ij eps_ji = -1")
        if min(self.d(i) for i in self.index_set) != 1:
            raise ValueError("short simple roots must have d_i = 1")

    # ------------------------------------------------------------- roots
    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        n = self.rank
        return sum(a[i] * b[j] * self.gram[i][j] for i in range(n) if a[i] for j in range(n) if b[j])

    def d_root(self, beta: Sequence[int]) -> int:
        return self.pairing(beta, beta) // 2

    def simple_root(self, i: int) -> Root:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        """s_i(beta) = beta - <beta, alpha_i^vee> alpha_i."""
        coroot = sum(beta[j] * self.gram[j][i - 1] for j in range(self.rank)) // self.d(i)
        out = list(beta)
        out[i - 1] -= coroot
        return tuple(out)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """Closure of the simple roots under simple reflections."""
        self.validate()
        roots = {self.simple_root(i) for i in self.index_set}
        queue = sorted(roots)
        bound = 4 * self.rank * self.rank + 8
        while queue:
            beta = queue.pop()
            for i in self.index_set:
                g = self.reflect(i, beta)
                if all(x >= 0 for x in g) and any(g) and g not in roots:
                    if sum(g) > bound or len(roots) > 200:
                        raise ValueError("root closure does not terminate: not of finite type")
                    roots.add(g)
                    queue.append(g)
        return tuple(sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r))))

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def height(self, beta: Sequence[int]) -> int:
        return sum(beta)

    def words(self, alpha: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """All words in I^alpha, lexicographically sorted."""
        counts = list(alpha)
        n = sum(counts)
        out: list[tuple[int, ...]] = []
        cur: list[int] = []

        def rec():
            if len(cur) == n:
                out.append(tuple(cur))
                return
            for i in range(self.rank):
                if counts[i]:
                    counts[i] -= 1
                    cur.append(i + 1)
                    rec()
                    cur.pop()
                    counts[i] += 1

        rec()
        return tuple(out)

    def weight(self, word: Sequence[int]) -> Root:
        w = [0] * self.rank
        for i in word:
            w[i - 1] += 1
        return tuple(w)


def root_str(beta: Sequence[int]) -> str:
    """``(1, 2)`` -> ``a1+2a2``."""
    parts = []
    for k, c in enumerate(beta):
        if c:
            parts.append(("" if c == 1 else str(c)) + f"a{k + 1}")
    return "+".join(parts) if parts else "0"
