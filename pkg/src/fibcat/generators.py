"""Builders for every worked example, truncated to finite size.

All identifier schemes are fixed and canonical so that generated categories
are deterministic bit for bit:

  FI objects            decimal numerals "0".."N"
  injections m→n        "m>n:i0,i1,..."   (0-based image tuple)
  decorated injections  "m>n:i0,...:d0,..."
  tuple fibers          "(d0,d1,...)"
  product pairs         "(left@right)"
  slice morphisms       "obj~underlying~obj"

Every builder routes its output through the validators; generation never
bypasses validation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FinCat, CategoryError, validate_category
from .functors import (
    FinFunctor,
    FunctorProperties,
    functor_properties,
    functors_equal,
    identity_functor,
    validate_functor,
)
from .groth import GrothResult, grothendieck
from .groups import GroupTable
from .indexed import IndexedCat, validate_indexed
from .limits import Cospan, Square, pullback, is_pullback_square


class MissingPullback(CategoryError):
    pass


# ---------------------------------------------------------------------------
# Small generic categories
# ---------------------------------------------------------------------------


def terminal_category() -> FinCat:
    return validate_category(["*"], [("id", "*", "*")], {"*": "id"}, {})


def discrete_category(names) -> FinCat:
    names = sorted(str(n) for n in names)
    return validate_category(
        names, [("id_%s" % n, n, n) for n in names], {n: "id_%s" % n for n in names}, {}
    )


def codiscrete_category(names) -> FinCat:
    """Exactly one morphism between every ordered pair of objects."""
    names = sorted(str(n) for n in names)
    mid = lambda x, y: "%s_%s" % (x, y)
    mors = [(mid(x, y), x, y) for x in names for y in names]
    comp = {
        (mid(x, y), mid(y, z)): mid(x, z) for x in names for y in names for z in names
    }
    return validate_category(names, mors, {x: mid(x, x) for x in names}, comp)


def thin_category(names, leq) -> FinCat:
    """Poset as a category; ``leq(x, y)`` decides x ≤ y (must be a partial order)."""
    names = sorted(str(n) for n in names)
    mid = lambda x, y: "%s_to_%s" % (x, y)
    mors = [(mid(x, y), x, y) for x in names for y in names if leq(x, y)]
    comp = {}
    for x in names:
        for y in names:
            if not leq(x, y):
                continue
            for z in names:
                if leq(y, z):
                    comp[(mid(x, y), mid(y, z))] = mid(x, z)
    return validate_category(names, mors, {x: mid(x, x) for x in names}, comp)


def chain_poset(n: int) -> FinCat:
    names = ["p%d" % i for i in range(n)]
    return thin_category(names, lambda x, y: int(x[1:]) <= int(y[1:]))


def square_poset() -> FinCat:
    """The commutative square a ≤ b ≤ d, a ≤ c ≤ d (a lattice)."""
    order = {"a": {"a", "b", "c", "d"}, "b": {"b", "d"}, "c": {"c", "d"}, "d": {"d"}}
    return thin_category(order, lambda x, y: y in order[x])


def cospan_poset() -> FinCat:
    """b ≤ d ≥ c with no meet; the cospan (b→d, c→d) has no pullback."""
    order = {"b": {"b", "d"}, "c": {"c", "d"}, "d": {"d"}}
    return thin_category(order, lambda x, y: y in order[x])


def span_poset() -> FinCat:
    """b ≥ a ≤ c with no join; spans out of a admit no completing square."""
    order = {"a": {"a", "b", "c"}, "b": {"b"}, "c": {"c"}}
    return thin_category(order, lambda x, y: y in order[x])


# ---------------------------------------------------------------------------
# FI and its decorated variants
# ---------------------------------------------------------------------------


def injections(m: int, n: int) -> tuple:
    """All injections m→n as image tuples, lexicographically ordered."""
    return tuple(itertools.permutations(range(n), m))


def inj_id(m: int, n: int, imgs) -> str:
    return "%d>%d:%s" % (m, n, ",".join(map(str, imgs)))


def parse_inj(mid: str):
    head, imgs = mid.split(":", 1)
    m, n = head.split(">")
    images = tuple(int(i) for i in imgs.split(",")) if imgs else ()
    return int(m), int(n), images


def fi_truncated(N: int) -> FinCat:
    """Finite sets 0..N and injections, composition by function composition."""
    objects = [str(n) for n in range(N + 1)]
    mors = []
    by_pair = {}
    for m in range(N + 1):
        for n in range(m, N + 1):
            for imgs in injections(m, n):
                mors.append((inj_id(m, n, imgs), str(m), str(n)))
            by_pair[(m, n)] = injections(m, n)
    comp = {}
    for m in range(N + 1):
        for n in range(m, N + 1):
            for p in range(n, N + 1):
                for f in by_pair[(m, n)]:
                    fid = inj_id(m, n, f)
                    for g in by_pair[(n, p)]:
                        comp[(fid, inj_id(n, p, g))] = inj_id(
                            m, p, tuple(g[i] for i in f)
                        )
    identity = {str(n): inj_id(n, n, tuple(range(n))) for n in range(N + 1)}
    return validate_category(objects, mors, identity, comp)


def _check_element_ids(G: GroupTable) -> None:
    for e in G.elements:
        if "," in e or ":" in e or ">" in e:
            raise CategoryError("group element id %r clashes with the id scheme" % e)


def dec_id(m: int, n: int, imgs, decs) -> str:
    return "%d>%d:%s:%s" % (m, n, ",".join(map(str, imgs)), ",".join(decs))


def parse_dec(mid: str):
    head, imgs, decs = mid.split(":")
    m, n = head.split(">")
    images = tuple(int(i) for i in imgs.split(",")) if imgs else ()
    return int(m), int(n), images, tuple(decs.split(",")) if decs else ()


def decorated_composite(G: GroupTable, f_imgs, f_decs, g_imgs, g_decs):
    """Compose decorated injections: pull the second decoration back along
    the first injection and multiply on the right."""
    imgs = tuple(g_imgs[i] for i in f_imgs)
    decs = tuple(G.mul(d, g_decs[i]) for d, i in zip(f_decs, f_imgs))
    return imgs, decs


def fi_g_direct(G: GroupTable, N: int) -> FinCat:
    """Injections decorated with one group element per source point."""
    _check_element_ids(G)
    objects = [str(n) for n in range(N + 1)]
    data = {}
    for m in range(N + 1):
        for n in range(m, N + 1):
            pairs = [
                (imgs, decs)
                for imgs in injections(m, n)
                for decs in itertools.product(G.elements, repeat=m)
            ]
            data[(m, n)] = pairs
    mors = [
        (dec_id(m, n, imgs, decs), str(m), str(n))
        for (m, n), pairs in sorted(data.items())
        for imgs, decs in pairs
    ]
    comp = {}
    for m in range(N + 1):
        for n in range(m, N + 1):
            for p in range(n, N + 1):
                for f_imgs, f_decs in data[(m, n)]:
                    fid = dec_id(m, n, f_imgs, f_decs)
                    for g_imgs, g_decs in data[(n, p)]:
                        imgs, decs = decorated_composite(
                            G, f_imgs, f_decs, g_imgs, g_decs
                        )
                        comp[(fid, dec_id(n, p, g_imgs, g_decs))] = dec_id(
                            m, p, imgs, decs
                        )
    identity = {
        str(n): dec_id(n, n, tuple(range(n)), (G.unit,) * n) for n in range(N + 1)
    }
    return validate_category(objects, mors, identity, comp)


def _tuple_id(parts) -> str:
    return "(%s)" % ",".join(parts)


def gpow_fiber(G: GroupTable, n: int) -> FinCat:
    """The one-object groupoid G^n; morphisms are n-tuples of elements."""
    tuples = list(itertools.product(G.elements, repeat=n))
    mors = [(_tuple_id(t), "*", "*") for t in tuples]
    comp = {}
    for u in tuples:
        uid = _tuple_id(u)
        for v in tuples:
            comp[(uid, _tuple_id(v))] = _tuple_id(
                tuple(G.mul(b, a) for a, b in zip(u, v))
            )
    return validate_category(["*"], mors, {"*": _tuple_id((G.unit,) * n)}, comp)


def indexed_gpow(G: GroupTable, N: int) -> IndexedCat:
    """The strict indexed category n ↦ G^n over truncated FI, arrows by
    coordinate pullback along the injection."""
    _check_element_ids(G)
    base = fi_truncated(N)
    fibers = {str(n): gpow_fiber(G, n) for n in range(N + 1)}
    arrows = {}
    for f in base.morphisms:
        m, n, imgs = parse_inj(f)
        src_fib, tgt_fib = fibers[str(n)], fibers[str(m)]
        on_m = {}
        for t in itertools.product(G.elements, repeat=n):
            on_m[_tuple_id(t)] = _tuple_id(tuple(t[i] for i in imgs))
        arrows[f] = validate_functor(src_fib, tgt_fib, {"*": "*"}, on_m)
    return validate_indexed(base, fibers, arrows)


def fi_g_comparison(G: GroupTable, N: int, gr: GrothResult = None):
    """Comparison functor from the Grothendieck construction to the directly
    decorated category; decorations are inverted componentwise because the
    construction multiplies them in the opposite order."""
    gr = gr if gr is not None else grothendieck(indexed_gpow(G, N))
    direct = fi_g_direct(G, N)
    on_objects = {t: xa[0] for t, xa in gr.obj_of.items()}
    on_morphisms = {}
    for t, tm in gr.mor_of.items():
        m, n, imgs = parse_inj(tm.base_part)
        decs = tm.fiber_part[1:-1]
        parts = tuple(decs.split(",")) if decs else ()
        on_morphisms[t] = dec_id(m, n, imgs, tuple(G.inv[d] for d in parts))
    F = validate_functor(gr.total, direct, on_objects, on_morphisms)
    return F, functor_properties(F)


# ---------------------------------------------------------------------------
# Constant indexed categories and products
# ---------------------------------------------------------------------------


def delta_const(X: FinCat, Y: FinCat) -> IndexedCat:
    """The constant indexed category: every fiber Y, every arrow the identity."""
    idf = identity_functor(Y)
    return validate_indexed(X, {x: Y for x in X.objects}, {f: idf for f in X.morphisms})


def _pair_id(a: str, b: str) -> str:
    return "(%s@%s)" % (a, b)


def product_category(X: FinCat, Y: FinCat) -> FinCat:
    objects = {_pair_id(x, y): (x, y) for x in X.objects for y in Y.objects}
    mors = [
        (_pair_id(f, g), _pair_id(X.src[f], Y.src[g]), _pair_id(X.tgt[f], Y.tgt[g]))
        for f in X.morphisms
        for g in Y.morphisms
    ]
    comp = {}
    for (f1, g1), h1 in X.table.items():
        for (f2, g2), h2 in Y.table.items():
            comp[(_pair_id(f1, f2), _pair_id(g1, g2))] = _pair_id(h1, h2)
    identity = {
        _pair_id(x, y): _pair_id(X.id_of(x), Y.id_of(y))
        for x in X.objects
        for y in Y.objects
    }
    return validate_category(objects, mors, identity, comp)


@dataclass(frozen=True)
class ProductCheck:
    iso: FinFunctor
    properties: FunctorProperties
    projection_agrees: bool


def product_check(X: FinCat, Y: FinCat, gr: GrothResult = None) -> ProductCheck:
    """The total category of the constant indexed category is the product."""
    gr = gr if gr is not None else grothendieck(delta_const(X, Y))
    P = product_category(X, Y)
    iso = validate_functor(
        gr.total,
        P,
        {t: _pair_id(*xa) for t, xa in gr.obj_of.items()},
        {t: _pair_id(tm.base_part, tm.fiber_part) for t, tm in gr.mor_of.items()},
    )
    props = functor_properties(iso)
    first = validate_functor(
        P,
        X,
        {_pair_id(x, y): x for x in X.objects for y in Y.objects},
        {_pair_id(f, g): f for f in X.morphisms for g in Y.morphisms},
    )
    from .functors import compose_functors

    agrees = functors_equal(compose_functors(iso, first), gr.proj)
    return ProductCheck(iso, props, agrees)


# ---------------------------------------------------------------------------
# Block permutations
# ---------------------------------------------------------------------------


def _power_fiber(inner: FinCat, n: int) -> FinCat:
    """n-fold product of a category with itself; tuples joined with ';'."""
    obs = {
        "(%s)" % ",".join(t): t for t in itertools.product(inner.objects, repeat=n)
    }
    mid = lambda t: "(%s)" % ";".join(t)
    mors = [
        (
            mid(t),
            "(%s)" % ",".join(inner.src[m] for m in t),
            "(%s)" % ",".join(inner.tgt[m] for m in t),
        )
        for t in itertools.product(inner.morphisms, repeat=n)
    ]
    comp = {}
    for t1 in itertools.product(inner.morphisms, repeat=n):
        for t2 in itertools.product(inner.morphisms, repeat=n):
            if all(inner.tgt[a] == inner.src[b] for a, b in zip(t1, t2)):
                comp[(mid(t1), mid(t2))] = mid(
                    tuple(inner.comp(a, b) for a, b in zip(t1, t2))
                )
    identity = {
        o: mid(tuple(inner.id_of(x) for x in t)) for o, t in obs.items()
    }
    return validate_category(obs, mors, identity, comp)


def block_perm_indexed(N: int, Q: int) -> IndexedCat:
    """Fibers are powers of truncated FI; arrows select coordinates."""
    base = fi_truncated(N)
    inner = fi_truncated(Q)
    fibers = {str(n): _power_fiber(inner, n) for n in range(N + 1)}
    arrows = {}
    for f in base.morphisms:
        m, n, imgs = parse_inj(f)
        src_fib, tgt_fib = fibers[str(n)], fibers[str(m)]
        on_o = {
            "(%s)" % ",".join(t): "(%s)" % ",".join(t[i] for i in imgs)
            for t in itertools.product(inner.objects, repeat=n)
        }
        on_m = {
            "(%s)" % ";".join(t): "(%s)" % ";".join(t[i] for i in imgs)
            for t in itertools.product(inner.morphisms, repeat=n)
        }
        arrows[f] = validate_functor(src_fib, tgt_fib, on_o, on_m)
    return validate_indexed(base, fibers, arrows)


def _parse_obj_tuple(oid: str):
    inner = oid[1:-1]
    return tuple(inner.split(",")) if inner else ()


def _parse_mor_tuple(mid: str):
    inner = mid[1:-1]
    return tuple(inner.split(";")) if inner else ()


def block_counting_functor(gr: GrothResult, N: int, Q: int) -> FinFunctor:
    """Counting functor to FI: a partitioned set goes to its total size and a
    block map to the induced injection on underlying sets."""
    target = fi_truncated(N * Q)
    on_objects, sizes_of = {}, {}
    for t, (nstr, sizes_id) in gr.obj_of.items():
        sizes = tuple(int(s) for s in _parse_obj_tuple(sizes_id))
        sizes_of[t] = sizes
        on_objects[t] = str(sum(sizes))
    on_morphisms = {}
    for t, tm in gr.mor_of.items():
        m, n, imgs = parse_inj(tm.base_part)
        src_sizes = sizes_of[gr.total.src[t]]
        tgt_sizes = sizes_of[gr.total.tgt[t]]
        offs = [0]
        for q in tgt_sizes:
            offs.append(offs[-1] + q)
        blocks = [parse_inj(p)[2] for p in _parse_mor_tuple(tm.fiber_part)]
        global_imgs = []
        for i in range(m):
            for local in blocks[i]:
                global_imgs.append(offs[imgs[i]] + local)
        on_morphisms[t] = inj_id(sum(src_sizes), sum(tgt_sizes), tuple(global_imgs))
    return validate_functor(gr.total, target, on_objects, on_morphisms)


# ---------------------------------------------------------------------------
# Disjoint unions of groups and two-colour FI
# ---------------------------------------------------------------------------


def disjoint_union_groupoid(G: GroupTable, H: GroupTable) -> FinCat:
    mors = [("A:%s" % g, "A", "A") for g in G.elements] + [
        ("B:%s" % h, "B", "B") for h in H.elements
    ]
    comp = {}
    for a in G.elements:
        for b in G.elements:
            comp[("A:%s" % a, "A:%s" % b)] = "A:%s" % G.mul(b, a)
    for a in H.elements:
        for b in H.elements:
            comp[("B:%s" % a, "B:%s" % b)] = "B:%s" % H.mul(b, a)
    return validate_category(
        ["A", "B"], mors, {"A": "A:%s" % G.unit, "B": "B:%s" % H.unit}, comp
    )


def colored_strings(colors: str, N: int) -> list:
    """All strings over ``colors`` with at most N occurrences of each colour."""
    out = []
    for length in range(len(colors) * N + 1):
        for s in itertools.product(colors, repeat=length):
            if all(s.count(c) <= N for c in colors):
                out.append("".join(s))
    return sorted(out)


def fi_colored(color_groups: dict, N: int) -> FinCat:
    """Colour-preserving decorated injections between coloured finite sets."""
    colors = "".join(sorted(color_groups))
    for G in color_groups.values():
        _check_element_ids(G)
    objects = colored_strings(colors, N)

    def arrows_between(s, t):
        spos = {c: [i for i, ch in enumerate(s) if ch == c] for c in colors}
        tpos = {c: [i for i, ch in enumerate(t) if ch == c] for c in colors}
        if any(len(spos[c]) > len(tpos[c]) for c in colors):
            return []
        out = []
        per_color = [
            list(itertools.permutations(tpos[c], len(spos[c]))) for c in colors
        ]
        for combo in itertools.product(*per_color):
            imgs = [None] * len(s)
            for c, chosen in zip(colors, combo):
                for k, i in enumerate(spos[c]):
                    imgs[i] = chosen[k]
            dec_pools = [color_groups[ch].elements for ch in s]
            for decs in itertools.product(*dec_pools):
                out.append((tuple(imgs), decs))
        return out

    mid = lambda s, t, imgs, decs: "%s>%s:%s:%s" % (
        s,
        t,
        ",".join(map(str, imgs)),
        ",".join(decs),
    )
    data = {}
    mors = []
    for s in objects:
        for t in objects:
            arr = arrows_between(s, t)
            if arr:
                data[(s, t)] = arr
                for imgs, decs in arr:
                    mors.append((mid(s, t, imgs, decs), s, t))
    comp = {}
    for (s, t), arr1 in data.items():
        for (t2, u), arr2 in data.items():
            if t2 != t:
                continue
            for f_imgs, f_decs in arr1:
                fid = mid(s, t, f_imgs, f_decs)
                for g_imgs, g_decs in arr2:
                    imgs = tuple(g_imgs[i] for i in f_imgs)
                    decs = tuple(
                        color_groups[s[k]].mul(d, g_decs[f_imgs[k]])
                        for k, d in enumerate(f_decs)
                    )
                    comp[(fid, mid(t, u, g_imgs, g_decs))] = mid(s, u, imgs, decs)
    identity = {
        s: mid(
            s,
            s,
            tuple(range(len(s))),
            tuple(color_groups[ch].unit for ch in s),
        )
        for s in objects
    }
    return validate_category(objects, mors, identity, comp)


@dataclass(frozen=True)
class GhComparison:
    functor: FinFunctor
    properties: FunctorProperties
    product: FinCat
    colored: FinCat


def fi_gh_comparison(G: GroupTable, H: GroupTable, N: int) -> GhComparison:
    """Compare FI_G × FI_H with the two-colour category: (m, n) goes to the
    block string a^m b^n, morphism pairs to block-form coloured morphisms."""
    left = product_category(fi_g_direct(G, N), fi_g_direct(H, N))
    right = fi_colored({"a": G, "b": H}, N)
    on_objects, on_morphisms = {}, {}
    for x in left.objects:
        lft, rgt = x[1:-1].split("@")
        on_objects[x] = "a" * int(lft) + "b" * int(rgt)
    for p in left.morphisms:
        lft, rgt = p[1:-1].split("@")
        m1, n1, imgs1, decs1 = parse_dec(lft)
        m2, n2, imgs2, decs2 = parse_dec(rgt)
        imgs = tuple(imgs1) + tuple(n1 + i for i in imgs2)
        decs = decs1 + decs2
        s = "a" * m1 + "b" * m2
        t = "a" * n1 + "b" * n2
        on_morphisms[p] = "%s>%s:%s:%s" % (
            s,
            t,
            ",".join(map(str, imgs)),
            ",".join(decs),
        )
    F = validate_functor(left, right, on_objects, on_morphisms)
    return GhComparison(F, functor_properties(F), left, right)


# ---------------------------------------------------------------------------
# Slice indexed categories, arrow categories, the codomain fibration
# ---------------------------------------------------------------------------


def _slice_mid(f: str, h: str, g: str) -> str:
    for part in (f, h, g):
        if "~" in part:
            raise CategoryError("morphism id %r clashes with the slice id scheme" % part)
    return "%s~%s~%s" % (f, h, g)


def slice_category(C: FinCat, x: str) -> FinCat:
    """Objects are morphisms into x; maps are commuting triangles."""
    C.require_object(x)
    objs = [f for f in C.morphisms if C.tgt[f] == x]
    mors = []
    comp = {}
    tris = {}
    for f in objs:
        for g in objs:
            for h in C.hom(C.src[f], C.src[g]):
                if C.comp(h, g) == f:
                    mors.append((_slice_mid(f, h, g), f, g))
                    tris.setdefault((f, g), []).append(h)
    for (f, g), hs in tris.items():
        for (g2, e), hs2 in tris.items():
            if g2 != g:
                continue
            for h in hs:
                for h2 in hs2:
                    comp[(_slice_mid(f, h, g), _slice_mid(g, h2, e))] = _slice_mid(
                        f, C.comp(h, h2), e
                    )
    identity = {f: _slice_mid(f, C.id_of(C.src[f]), f) for f in objs}
    return validate_category(objs, mors, identity, comp)


def _chosen_pullback(C: FinCat, j: str, f: str, choose=None):
    pb = pullback(C, Cospan(j, f))
    if pb is None:
        raise MissingPullback((j, f))
    if choose is not None:
        pb = choose(Cospan(j, f), pb) or pb
    return pb


def slice_indexed(C: FinCat, choose=None) -> IndexedCat:
    """Slices of C indexed by chosen pullbacks; non-strict in general.

    The compositor and unitor components are the mediating isomorphisms
    between iterated chosen pullbacks, read off the pullback mediator
    tables.  ``choose`` optionally overrides the canonical pullback with
    another representative (a ``limits.Pullback``, e.g. from
    ``limits.as_pullback``), which is how incoherent choices are exercised.
    """
    fibers = {x: slice_category(C, x) for x in C.objects}
    arrows = {}
    for j in C.morphisms:
        x, y = C.src[j], C.tgt[j]
        fib_y, fib_x = fibers[y], fibers[x]
        on_o, on_m = {}, {}
        for f in fib_y.objects:
            on_o[f] = _chosen_pullback(C, j, f, choose).leg1
        for smid in fib_y.morphisms:
            f, g = fib_y.src[smid], fib_y.tgt[smid]
            h = smid.split("~")[1]
            pb_f, pb_g = _chosen_pullback(C, j, f, choose), _chosen_pullback(C, j, g, choose)
            w = pb_g.mediators[
                (C.src[pb_f.leg1], pb_f.leg1, C.comp(pb_f.leg2, h))
            ]
            on_m[smid] = _slice_mid(pb_f.leg1, w, pb_g.leg1)
        arrows[j] = validate_functor(fib_y, fib_x, on_o, on_m)

    compositors = {}
    for (f, g), gf in C.table.items():
        z = C.tgt[g]
        comps = {}
        for q in fibers[z].objects:
            pb_g = _chosen_pullback(C, g, q, choose)
            pb_fg = _chosen_pullback(C, f, pb_g.leg1, choose)
            pb_tot = _chosen_pullback(C, gf, q, choose)
            s = pb_fg.leg1
            v = C.comp(pb_fg.leg2, pb_g.leg2)
            w = pb_tot.mediators[(C.src[s], s, v)]
            comps[q] = _slice_mid(s, w, pb_tot.leg1)
        compositors[(f, g)] = comps

    unitors = {}
    for x in C.objects:
        comps = {}
        for f in fibers[x].objects:
            pb = _chosen_pullback(C, C.id_of(x), f, choose)
            w = pb.mediators[(C.src[f], f, C.id_of(C.src[f]))]
            comps[f] = _slice_mid(f, w, pb.leg1)
        unitors[x] = comps

    return validate_indexed(C, fibers, arrows, compositors, unitors)


def _arrow_mid(f: str, u: str, v: str, g: str) -> str:
    # endpoints are part of the id: the same square (u, v) can relate
    # several pairs of arrow objects
    return "%s~%s~%s~%s" % (f, u, v, g)


def arrow_category(C: FinCat) -> FinCat:
    """Morphisms of C as objects, commuting squares as morphisms."""
    objs = list(C.morphisms)
    mors = []
    comp = {}
    sqs = {}
    for f in objs:
        for g in objs:
            for u in C.hom(C.src[f], C.src[g]):
                for v in C.hom(C.tgt[f], C.tgt[g]):
                    if C.comp(u, g) == C.comp(f, v):
                        mors.append((_arrow_mid(f, u, v, g), f, g))
                        sqs.setdefault((f, g), []).append((u, v))
    for (f, g), ps in sqs.items():
        for (g2, e), ps2 in sqs.items():
            if g2 != g:
                continue
            for u, v in ps:
                for u2, v2 in ps2:
                    comp[(_arrow_mid(f, u, v, g), _arrow_mid(g, u2, v2, e))] = _arrow_mid(
                        f, C.comp(u, u2), C.comp(v, v2), e
                    )
    identity = {f: _arrow_mid(f, C.id_of(C.src[f]), C.id_of(C.tgt[f]), f) for f in objs}
    return validate_category(objs, mors, identity, comp)


@dataclass(frozen=True)
class CodomainReport:
    comparison: FinFunctor
    properties: FunctorProperties
    fibration: bool
    cartesian_lifts_are_pullbacks: bool


def codomain_check(C: FinCat, gr: GrothResult = None) -> CodomainReport:
    """Total category of the slices vs the arrow category, plus the fibration
    whose cartesian lifts are pullback squares."""
    from .groth import choose_cleaving, is_fibration

    M = slice_indexed(C)
    gr = gr if gr is not None else grothendieck(M)
    A = arrow_category(C)
    on_objects = {t: fa[1] for t, fa in gr.obj_of.items()}
    on_morphisms = {}
    for t, tm in gr.mor_of.items():
        k = tm.base_part
        _, f_src = gr.obj_of[gr.total.src[t]]
        _, g = gr.obj_of[gr.total.tgt[t]]
        h_u = tm.fiber_part.split("~")[1]
        pb = _chosen_pullback(C, k, g)
        on_morphisms[t] = _arrow_mid(f_src, C.comp(h_u, pb.leg2), k, g)
    F = validate_functor(gr.total, A, on_objects, on_morphisms)
    props = functor_properties(F)

    fib = is_fibration(gr.proj)
    lifts_ok = True
    if fib:
        cleaving = choose_cleaving(gr.proj)
        for (k, b), lift in sorted(cleaving.entries.items()):
            if gr.proj.target.is_identity(k):
                continue
            _, g = gr.obj_of[b]
            fprime = gr.obj_of[gr.total.src[lift]][1]
            h_u = gr.mor_of[lift].fiber_part.split("~")[1]
            pb = _chosen_pullback(C, k, g)
            sq = Square(
                top=C.comp(h_u, pb.leg2),
                left=fprime,
                right=g,
                bottom=k,
            )
            if not is_pullback_square(C, sq):
                lifts_ok = False
                break
    return CodomainReport(F, props, bool(fib), lifts_ok)
