"""Functors and natural transformations between finite categories."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Check, FinCat, CategoryError


class NotAFunctor(CategoryError):
    pass


class NotNatural(CategoryError):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class FinFunctor:
    source: FinCat
    target: FinCat
    on_objects: dict
    on_morphisms: dict
    _caches: dict = field(default_factory=dict, compare=False, repr=False)

    def ob(self, x: str) -> str:
        return self.on_objects[x]

    def mor(self, f: str) -> str:
        return self.on_morphisms[f]

    def cache(self, key: str) -> dict:
        return self._caches.setdefault(key, {})

    def __repr__(self):
        return "FinFunctor(%r -> %r)" % (self.source, self.target)


@dataclass(frozen=True, eq=False)
class NatTrans:
    source: FinFunctor
    target: FinFunctor
    components: dict

    def at(self, x: str) -> str:
        return self.components[x]


def validate_functor(source: FinCat, target: FinCat, on_objects, on_morphisms) -> FinFunctor:
    """Check preservation of endpoints, identities and all composites."""
    ob = {str(k): str(v) for k, v in dict(on_objects).items()}
    mor = {str(k): str(v) for k, v in dict(on_morphisms).items()}
    for x in source.objects:
        if x not in ob:
            raise NotAFunctor(("object not mapped", x))
        if ob[x] not in target.identity:
            raise NotAFunctor(("image object unknown", x, ob[x]))
    for f in source.morphisms:
        if f not in mor:
            raise NotAFunctor(("morphism not mapped", f))
        g = mor[f]
        if g not in target.src:
            raise NotAFunctor(("image morphism unknown", f, g))
        if target.src[g] != ob[source.src[f]] or target.tgt[g] != ob[source.tgt[f]]:
            raise NotAFunctor(("endpoints not preserved", f, g))
    for x in source.objects:
        if mor[source.id_of(x)] != target.id_of(ob[x]):
            raise NotAFunctor(("identity not preserved", x))
    ttable = target.table
    for (f, g), h in source.table.items():
        if ttable[(mor[f], mor[g])] != mor[h]:
            raise NotAFunctor(("composite not preserved", f, g))
    return FinFunctor(source, target, ob, mor)


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})


def compose_functors(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    """F followed by G (so the classical composite G∘F)."""
    if F.target is not G.source and F.target.objects != G.source.objects:
        raise NotAFunctor("composition endpoint mismatch")
    return FinFunctor(
        F.source,
        G.target,
        {x: G.on_objects[y] for x, y in F.on_objects.items()},
        {f: G.on_morphisms[g] for f, g in F.on_morphisms.items()},
    )


def functors_equal(F: FinFunctor, G: FinFunctor) -> bool:
    return F.on_objects == G.on_objects and F.on_morphisms == G.on_morphisms


def validate_nat_trans(F: FinFunctor, G: FinFunctor, components) -> NatTrans:
    """Check component typing and every naturality square."""
    if F.source is not G.source or F.target is not G.target:
        raise NotNatural("parallel functors required")
    comp = {str(k): str(v) for k, v in dict(components).items()}
    T = F.target
    for x in F.source.objects:
        if x not in comp:
            raise NotNatural(("component missing", x))
        c = comp[x]
        if c not in T.src:
            raise NotNatural(("component unknown", x, c))
        if T.src[c] != F.ob(x) or T.tgt[c] != G.ob(x):
            raise NotNatural(("component endpoints", x, c))
    for f in F.source.morphisms:
        x, y = F.source.src[f], F.source.tgt[f]
        # G(f)∘α_x  vs  α_y∘F(f)
        if T.comp(comp[x], G.mor(f)) != T.comp(F.mor(f), comp[y]):
            raise NotNatural(("square", f))
    return NatTrans(F, G, comp)


def identity_nat_trans(F: FinFunctor) -> NatTrans:
    return NatTrans(F, F, {x: F.target.id_of(F.ob(x)) for x in F.source.objects})


@dataclass(frozen=True)
class FunctorProperties:
    full: Check
    faithful: Check
    essentially_surjective: Check

    @property
    def equivalence(self) -> bool:
        return bool(self.full and self.faithful and self.essentially_surjective)


def functor_properties(F: FinFunctor) -> FunctorProperties:
    """Fullness, faithfulness and essential surjectivity, all exhaustive."""
    S, T = F.source, F.target
    full = Check(True)
    faithful = Check(True)
    for x in S.objects:
        for y in S.objects:
            image = {}
            for f in S.hom(x, y):
                g = F.mor(f)
                if g in image and faithful.holds:
                    faithful = Check(False, (image[g], f))
                image.setdefault(g, f)
            if full.holds:
                for g in T.hom(F.ob(x), F.ob(y)):
                    if g not in image:
                        full = Check(False, (x, y, g))
                        break
    hit = set(F.on_objects.values())
    ess = Check(True)
    for t in T.objects:
        if t in hit:
            continue
        if not any(T.hom(t, h) and any(f in T.inverses for f in T.hom(t, h)) for h in hit):
            ess = Check(False, t)
            break
    return FunctorProperties(full, faithful, ess)
