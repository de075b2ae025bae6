"""Finite categories as explicit composition tables.

Objects and morphisms are plain string identifiers.  A category carries its
identity table and its full composition table; ``validate_category`` checks
the axioms exhaustively, so everything downstream can rely on them.  All
values are immutable after validation and every predicate is a deterministic
exhaustive search over sorted identifiers.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

import numpy as np


class CategoryError(Exception):
    """Base class for category validation and lookup failures."""


class MissingIdentity(CategoryError):
    pass


class NonComposablePairInTable(CategoryError):
    pass


class MissingComposite(CategoryError):
    pass


class CompositeEndpointViolation(CategoryError):
    pass


class AssociativityViolation(CategoryError):
    pass


class UnitViolation(CategoryError):
    pass


class UnknownMorphism(CategoryError):
    pass


class UnknownObject(CategoryError):
    pass


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive check, with a counterexample when it fails."""

    holds: bool
    counterexample: object = None
    info: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True, eq=False, repr=False)
class FinCat:
    """A finite category given by identifier sets and lookup tables.

    ``table`` maps a composable pair ``(f, g)`` with ``tgt(f) == src(g)`` to
    the composite "f then g" (g∘f in applicative order).  ``homs`` maps
    ``(x, y)`` to the sorted tuple of morphisms x→y, ``inverses`` maps every
    isomorphism to its (unique) two-sided inverse.
    """

    objects: tuple
    morphisms: tuple
    src: dict
    tgt: dict
    identity: dict
    table: dict
    homs: dict
    inverses: dict
    identity_morphisms: frozenset
    _caches: dict = field(default_factory=dict, compare=False, repr=False)

    def __repr__(self):
        return "FinCat(%d objects, %d morphisms)" % (
            len(self.objects),
            len(self.morphisms),
        )

    def comp(self, first: str, then: str) -> str:
        """Composite of ``first`` followed by ``then``."""
        return self.table[(first, then)]

    def hom(self, x: str, y: str) -> tuple:
        return self.homs.get((x, y), ())

    def endos(self, x: str) -> tuple:
        return self.homs.get((x, x), ())

    def id_of(self, x: str) -> str:
        return self.identity[x]

    def is_identity(self, f: str) -> bool:
        return f in self.identity_morphisms

    def require_object(self, x: str) -> None:
        if x not in self.identity:
            raise UnknownObject(x)

    def require_morphism(self, f: str) -> None:
        if f not in self.src:
            raise UnknownMorphism(f)

    def cache(self, key: str) -> dict:
        return self._caches.setdefault(key, {})


def _intern(s: str) -> str:
    return sys.intern(str(s))


def validate_category(objects, morphisms, identity, composition) -> FinCat:
    """Check the category axioms exhaustively and return a ``FinCat``.

    ``morphisms`` is an iterable of ``(id, src, tgt)`` triples, ``identity``
    maps objects to morphism ids, ``composition`` maps composable pairs
    ``(first, then)`` to composite ids.  Composites with an identity on
    either side may be omitted; they are forced by the unit laws and are
    filled in here.
    """
    obs = tuple(sorted(_intern(x) for x in objects))
    if len(set(obs)) != len(obs):
        raise CategoryError("duplicate object identifiers")
    obset = set(obs)

    src, tgt = {}, {}
    for mid, s, t in morphisms:
        mid, s, t = _intern(mid), _intern(s), _intern(t)
        if mid in src:
            raise CategoryError("duplicate morphism identifier %r" % mid)
        if s not in obset:
            raise UnknownObject("morphism %r has unknown source %r" % (mid, s))
        if t not in obset:
            raise UnknownObject("morphism %r has unknown target %r" % (mid, t))
        src[mid], tgt[mid] = s, t
    mors = tuple(sorted(src))

    ident = {}
    for x in obs:
        if x not in identity:
            raise MissingIdentity("object %r has no identity morphism" % x)
        i = _intern(identity[x])
        if i not in src:
            raise MissingIdentity("identity %r of %r is not a morphism" % (i, x))
        if src[i] != x or tgt[i] != x:
            raise MissingIdentity(
                "identity %r of %r has endpoints (%r, %r)" % (i, x, src[i], tgt[i])
            )
        ident[x] = i
    id_mors = frozenset(ident.values())

    table = {}
    for (f, g), h in dict(composition).items():
        f, g, h = _intern(f), _intern(g), _intern(h)
        for m in (f, g, h):
            if m not in src:
                raise UnknownMorphism("composition table mentions %r" % m)
        if tgt[f] != src[g]:
            raise NonComposablePairInTable((f, g))
        table[(f, g)] = h

    # Unit laws force the identity composites; fill them in and reject
    # conflicting entries.
    for f in mors:
        for pair, forced in (((ident[src[f]], f), f), ((f, ident[tgt[f]]), f)):
            have = table.get(pair)
            if have is None:
                table[pair] = forced
            elif have != forced:
                raise UnitViolation((pair[0], pair[1], have))

    homs = {}
    for f in mors:
        homs.setdefault((src[f], tgt[f]), []).append(f)
    homs = {k: tuple(sorted(v)) for k, v in homs.items()}

    _check_completeness_and_associativity(obs, mors, src, tgt, table, homs)

    inverses = {}
    for f in mors:
        x, y = src[f], tgt[f]
        for g in homs.get((y, x), ()):
            if table[(f, g)] == ident[x] and table[(g, f)] == ident[y]:
                inverses[f] = g
                break

    return FinCat(
        objects=obs,
        morphisms=mors,
        src=src,
        tgt=tgt,
        identity=ident,
        table=table,
        homs=homs,
        inverses=inverses,
        identity_morphisms=id_mors,
    )


def _check_completeness_and_associativity(obs, mors, src, tgt, table, homs):
    """Exhaustive totality, endpoint and associativity checks.

    Vectorised with small integer tables: the largest generated categories
    have ~10^8 composable triples, far beyond what pure-Python loops handle.
    """
    code = {m: i for i, m in enumerate(mors)}
    nmor = len(mors)
    hom_ids = {k: v for k, v in homs.items()}
    loc = {}  # (x, y) -> int32 array mapping global code -> local hom index

    def glob2loc(x, y):
        a = loc.get((x, y))
        if a is None:
            a = np.full(nmor, -1, dtype=np.int64)
            for i, m in enumerate(hom_ids.get((x, y), ())):
                a[code[m]] = i
            loc[(x, y)] = a
        return a

    outs = {}
    for (x, y) in hom_ids:
        outs.setdefault(x, []).append(y)
    for x in outs:
        outs[x].sort()

    pair_tabs = {}  # (a, b, c) -> (P global codes, L local codes)

    def pair_tab(a, b, c):
        got = pair_tabs.get((a, b, c))
        if got is not None:
            return got
        h1 = hom_ids[(a, b)]
        h2 = hom_ids[(b, c)]
        g2l = glob2loc(a, c)
        p = np.empty((len(h1), len(h2)), dtype=np.int64)
        for i, f in enumerate(h1):
            row = p[i]
            for j, g in enumerate(h2):
                h = table.get((f, g))
                if h is None:
                    raise MissingComposite((f, g))
                row[j] = code[h]
        l = g2l[p]
        if (l < 0).any():
            i, j = map(int, np.argwhere(l < 0)[0])
            raise CompositeEndpointViolation((h1[i], h2[j], mors[p[i, j]]))
        pair_tabs[(a, b, c)] = (p, l)
        return p, l

    # Totality and endpoints over every composable pair.
    for (a, b) in sorted(hom_ids):
        for c in outs.get(b, ()):
            pair_tab(a, b, c)

    # Associativity over every composable triple.
    for (a, b) in sorted(hom_ids):
        for c in outs.get(b, ()):
            _, l_abc = pair_tab(a, b, c)
            for d in outs.get(c, ()):
                p_acd, _ = pair_tab(a, c, d)
                p_abd, _ = pair_tab(a, b, d)
                _, l_bcd = pair_tab(b, c, d)
                n1, n2 = l_abc.shape
                n3 = l_bcd.shape[1]
                chunk = max(1, 2_000_000 // max(1, n2 * n3))
                for i0 in range(0, n1, chunk):
                    i1 = min(n1, i0 + chunk)
                    left = p_acd[l_abc[i0:i1]]  # (i, n2, n3)
                    right = p_abd[
                        np.arange(i0, i1)[:, None, None], l_bcd[None, :, :]
                    ]
                    if not np.array_equal(left, right):
                        i, j, k = map(int, np.argwhere(left != right)[0])
                        raise AssociativityViolation(
                            (
                                hom_ids[(a, b)][i0 + i],
                                hom_ids[(b, c)][j],
                                hom_ids[(c, d)][k],
                            )
                        )


# ---------------------------------------------------------------------------
# Elementary predicates.  All are exhaustive; none mutate the category.
# ---------------------------------------------------------------------------


def mono_witness(C: FinCat, f: str):
    """A parallel pair (g1, g2) with f∘g1 = f∘g2 and g1 ≠ g2, if one exists."""
    C.require_morphism(f)
    x = C.src[f]
    table = C.table
    for w in C.objects:
        seen = {}
        for g in C.hom(w, x):
            c = table[(g, f)]
            if c in seen:
                return (seen[c], g)
            seen[c] = g
    return None


def is_mono(C: FinCat, f: str) -> bool:
    return mono_witness(C, f) is None


def is_iso(C: FinCat, f: str):
    """The two-sided inverse of ``f`` if it exists, else None."""
    C.require_morphism(f)
    return C.inverses.get(f)


def is_ei(C: FinCat) -> Check:
    """Every endomorphism is an isomorphism."""
    for x in C.objects:
        for f in C.endos(x):
            if f not in C.inverses:
                return Check(False, f)
    return Check(True)


def automorphisms(C: FinCat, x: str) -> tuple:
    C.require_object(x)
    return tuple(f for f in C.endos(x) if f in C.inverses)


def is_transitive(C: FinCat) -> Check:
    """Aut(y) acts transitively on hom(x, y) for every pair of objects.

    The action is a group action, so it suffices to check that the orbit of
    the first morphism in each hom-set is the whole hom-set.
    """
    table = C.table
    for (x, y), fs in sorted(C.homs.items()):
        auts = automorphisms(C, y)
        f1 = fs[0]
        orbit = {table[(f1, s)] for s in auts}
        for f2 in fs:
            if f2 not in orbit:
                return Check(False, (x, y, f1, f2))
    return Check(True)


def iso_classes(C: FinCat) -> tuple:
    """Partition of the objects by mutual isomorphism, sorted canonically."""
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f, g in C.inverses.items():
        a, b = find(C.src[f]), find(C.tgt[f])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(sorted(v)) for v in groups.values()))


def below_set(C: FinCat, y: str) -> tuple:
    """Isomorphism classes [x] with hom(x, y) nonempty."""
    C.require_object(y)
    return tuple(
        cls for cls in iso_classes(C) if C.hom(cls[0], y)
    )


def is_groupoid(C: FinCat) -> bool:
    return len(C.inverses) == len(C.morphisms)
