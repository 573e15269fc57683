"""Finite groups given by multiplication tables."""
from __future__ import annotations

from itertools import permutations
from math import gcd


class FiniteGroup:
    """A finite group; ``table[g][h]`` is the index of the product gh."""

    def __init__(self, table, labels=None):
        table = [list(map(int, row)) for row in table]
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise ValueError("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for r in table for x in r):
            raise ValueError("table entries out of range")
        ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
        if not ids:
            raise ValueError("no identity element")
        self.identity = ids[0]
        inv = []
        for g in range(n):
            cand = [h for h in range(n) if table[g][h] == self.identity]
            if len(cand) != 1 or table[cand[0]][g] != self.identity:
                raise ValueError(f"element {g} has no two-sided inverse")
            inv.append(cand[0])
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        raise ValueError("multiplication table is not associative")
        self.table = tuple(tuple(r) for r in table)
        self.inverses = tuple(inv)
        self.labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(n))

    def __len__(self):
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        e = 1
        for g in range(len(self)):
            k = self.element_order(g)
            e = e * k // gcd(e, k)
        return e

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def __repr__(self):
        return f"FiniteGroup(order={len(self)})"


def cyclic_group(n: int) -> FiniteGroup:
    labels = ["e"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], labels)


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return FiniteGroup(table, labels)


def group_from_name(name: str) -> FiniteGroup:
    """Parse names like 'Z3' or 'S3'."""
    name = name.strip().upper().replace("_", "")
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")
