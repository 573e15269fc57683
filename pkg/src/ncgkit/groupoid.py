"""Finite groupoids and their convolution algebras.

A morphism g: s(g) -> t(g) composes with h when s(g) = t(h); the composite
g.h goes from s(h) to t(g).  The convolution product is
(f1 f2)(g) = sum over g1.g2 = g of f1(g1) f2(g2), so on the basis of point
masses e_g e_h = e_{g.h} when composable and 0 otherwise.
"""
from __future__ import annotations

from math import gcd

import numpy as np

from .algebra import FinAlgebra
from .errors import ValidationError
from .groups import FiniteGroup, group_from_name


class FiniteGroupoid:
    def __init__(self, objects: int, morphisms, composition, labels=None):
        self.objects = int(objects)
        morphisms = [tuple(map(int, m)) for m in morphisms]
        ids = [m[0] for m in morphisms]
        if sorted(ids) != list(range(len(morphisms))):
            raise ValidationError("morphism ids must be 0..n-1")
        morphisms.sort()
        self.source = tuple(m[1] for m in morphisms)
        self.target = tuple(m[2] for m in morphisms)
        if any(not 0 <= x < self.objects for x in self.source + self.target):
            raise ValidationError("morphism endpoint is not an object")
        comp = {(int(a), int(b)): int(c) for (a, b), c in dict(composition).items()}
        self.composition = comp
        self.labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(len(morphisms)))
        self._validate()

    def __len__(self):
        return len(self.source)

    def composable(self, a: int, b: int) -> bool:
        return self.source[a] == self.target[b]

    def compose(self, a: int, b: int) -> int:
        return self.composition[(a, b)]

    def _validate(self):
        n = len(self)
        for a in range(n):
            for b in range(n):
                ok = self.composable(a, b)
                if ok != ((a, b) in self.composition):
                    raise ValidationError(f"composition must be defined exactly on composable pairs ({a}, {b})")
                if ok:
                    c = self.composition[(a, b)]
                    if self.source[c] != self.source[b] or self.target[c] != self.target[a]:
                        raise ValidationError(f"composite of ({a}, {b}) has wrong endpoints")
        for (a, b), ab in self.composition.items():
            for c in range(n):
                if self.composable(b, c):
                    if self.composition[(ab, c)] != self.composition[(a, self.composition[(b, c)])]:
                        raise ValidationError("composition is not associative")
        idents = []
        for x in range(self.objects):
            cand = [u for u in range(n) if self.source[u] == x and self.target[u] == x
                    and all(self.composition[(u, g)] == g for g in range(n) if self.target[g] == x)
                    and all(self.composition[(g, u)] == g for g in range(n) if self.source[g] == x)]
            if not cand:
                raise ValidationError(f"object {x} has no identity morphism")
            idents.append(cand[0])
        self.identities = tuple(idents)
        inv = []
        for g in range(n):
            cand = [h for h in range(n) if self.composable(g, h) and self.composable(h, g)
                    and self.composition[(g, h)] == idents[self.target[g]]
                    and self.composition[(h, g)] == idents[self.source[g]]]
            if not cand:
                raise ValidationError(f"morphism {g} has no inverse")
            inv.append(cand[0])
        self.inverses = tuple(inv)

    def isotropy_exponent(self) -> int:
        e = 1
        for g in range(len(self)):
            if self.source[g] != self.target[g]:
                continue
            k, x = 1, g
            while x != self.identities[self.source[g]]:
                x = self.composition[(x, g)]
                k += 1
            e = e * k // gcd(e, k)
        return e

    def to_json(self) -> dict:
        return {
            "objects": self.objects,
            "morphisms": [[i, s, t] for i, (s, t) in enumerate(zip(self.source, self.target))],
            "composition": [[a, b, c] for (a, b), c in sorted(self.composition.items())],
            "inverses": list(self.inverses),
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroupoid":
        comp = {(a, b): c for a, b, c in data["composition"]}
        G = cls(data["objects"], data["morphisms"], comp, data.get("labels"))
        if "inverses" in data and tuple(data["inverses"]) != G.inverses:
            raise ValidationError("declared inverses disagree with the composition")
        return G

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.objects}, morphisms={len(self)})"


def pairs_groupoid(n: int) -> FiniteGroupoid:
    """The pair groupoid on n points: one morphism (i, j): j -> i for each pair."""
    morph = [(i * n + j, j, i) for i in range(n) for j in range(n)]
    comp = {(i * n + j, j * n + k): i * n + k for i in range(n) for j in range(n) for k in range(n)}
    labels = [f"({i},{j})" for i in range(n) for j in range(n)]
    return FiniteGroupoid(n, morph, comp, labels)


def group_groupoid(group) -> FiniteGroupoid:
    if isinstance(group, str):
        group = group_from_name(group)
    elif not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    n = len(group)
    comp = {(a, b): group.mul(a, b) for a in range(n) for b in range(n)}
    return FiniteGroupoid(1, [(g, 0, 0) for g in range(n)], comp, group.labels)


def action_groupoid(group, npoints: int, action) -> FiniteGroupoid:
    """Transformation groupoid: morphisms (g, x): x -> g.x; action[g][x] = g.x."""
    if isinstance(group, str):
        group = group_from_name(group)
    elif not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    ng = len(group)
    act = [[int(action[g][x]) for x in range(npoints)] for g in range(ng)]
    for x in range(npoints):
        if act[group.identity][x] != x:
            raise ValidationError("identity does not act trivially")
    for g in range(ng):
        for h in range(ng):
            for x in range(npoints):
                if act[g][act[h][x]] != act[group.mul(g, h)][x]:
                    raise ValidationError("map is not a group action")
    morph = [(g * npoints + x, x, act[g][x]) for g in range(ng) for x in range(npoints)]
    comp = {}
    for h in range(ng):
        for g in range(ng):
            for x in range(npoints):
                # (h, g.x) after (g, x) is (hg, x)
                comp[(h * npoints + act[g][x], g * npoints + x)] = group.mul(h, g) * npoints + x
    labels = [f"({group.labels[g]},{x})" for g in range(ng) for x in range(npoints)]
    return FiniteGroupoid(npoints, morph, comp, labels)


def relation_groupoid(classes) -> FiniteGroupoid:
    """Graph of an equivalence relation given by its classes (a partition of 0..n-1)."""
    pts = sorted(x for c in classes for x in c)
    n = len(pts)
    if pts != list(range(n)):
        raise ValidationError("classes must partition 0..n-1")
    cls_of = {x: i for i, c in enumerate(classes) for x in c}
    pairs = [(x, y) for x in range(n) for y in range(n) if cls_of[x] == cls_of[y]]
    index = {p: i for i, p in enumerate(pairs)}
    morph = [(i, y, x) for i, (x, y) in enumerate(pairs)]
    comp = {(index[(x, y)], index[(y, z)]): index[(x, z)]
            for (x, y) in pairs for (y2, z) in pairs if y2 == y}
    labels = [f"({x},{y})" for x, y in pairs]
    return FiniteGroupoid(n, morph, comp, labels)


def build_groupoid(desc, *args, **kwargs) -> FiniteGroupoid:
    if isinstance(desc, dict):
        kw = dict(desc)
        kind = kw.pop("kind")
        return build_groupoid(kind, **kw)
    if desc == "pairs":
        return pairs_groupoid(*args, **kwargs)
    if desc == "group":
        return group_groupoid(*args, **kwargs)
    if desc == "action":
        return action_groupoid(*args, **kwargs)
    if desc == "relation":
        return relation_groupoid(*args, **kwargs)
    raise ValueError(f"unknown groupoid kind {desc!r}")


def groupoid_algebra(G: FiniteGroupoid) -> FinAlgebra:
    """Convolution algebra with involution e_g^* = e_{g^-1}; the scalar field is
    Q(zeta_e) for e the exponent of the isotropy groups, which splits it."""
    n = len(G)
    c = np.zeros((n, n, n), dtype=object)
    for (a, b), ab in G.composition.items():
        c[a, b, ab] = 1
    unit = [0] * n
    for u in G.identities:
        unit[u] = 1
    inv = np.zeros((n, n), dtype=object)
    for g in range(n):
        inv[G.inverses[g], g] = 1
    return FinAlgebra(c, unit, inv, G.labels, G.isotropy_exponent())
