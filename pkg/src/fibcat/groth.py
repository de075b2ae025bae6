"""The Grothendieck construction and the theory of fibrations it carries.

Total-category objects are pairs (x, a) of a base object and a fiber object;
morphisms are pairs (f, k) with f: x→y in the base and k: a → M(f)(b) in the
fiber over x.  Composition twists the second factor through the arrow
functors and the compositor:

    (g, l)∘(f, k) = (g∘f,  mu[f,g](c) ∘ M(f)(l) ∘ k)

Identities are (id_x, eta_x(a)), which is (id_x, id_a) whenever the unitors
are identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Check, FinCat, CategoryError, UnknownMorphism, validate_category
from .functors import FinFunctor, NatTrans, compose_functors, validate_functor, validate_nat_trans
from .indexed import IndexedCat


class FibrationError(CategoryError):
    pass


class NotAFibration(FibrationError):
    pass


class TriangleDoesNotCommute(FibrationError):
    pass


@dataclass(frozen=True)
class TotalMor:
    base_part: str
    fiber_part: str


@dataclass(frozen=True, eq=False)
class GrothResult:
    """Total category and projection, plus the pair encodings both ways."""

    indexed: IndexedCat
    total: FinCat
    proj: FinFunctor
    obj_of: dict  # total object id -> (x, a)
    mor_of: dict  # total morphism id -> TotalMor
    obj_id: dict  # (x, a) -> total object id
    mor_id: dict  # (f, k) -> total morphism id

    def __iter__(self):
        return iter((self.total, self.proj))


def _enc(a: str, b: str) -> str:
    return "(%s@%s)" % (a, b)


def _enc_mor(f: str, k: str, b: str) -> str:
    # The target fiber object disambiguates (f, k) when M(f) identifies
    # fiber objects; without it distinct morphisms could share an id.
    return "(%s@%s@%s)" % (f, k, b)


def grothendieck(M: IndexedCat) -> GrothResult:
    """Build and fully validate the total category and its projection."""
    base = M.base
    obj_id, obj_of = {}, {}
    for x in base.objects:
        for a in M.fiber_at(x).objects:
            t = _enc(x, a)
            obj_id[(x, a)] = t
            obj_of[t] = (x, a)
    if len(obj_of) != len(obj_id):
        raise CategoryError("total object id collision")

    mor_id, mor_of, mor_rec = {}, {}, []
    for f in base.morphisms:
        x, y = base.src[f], base.tgt[f]
        fib_x, Mf = M.fiber_at(x), M.arrow_at(f)
        for b in M.fiber_at(y).objects:
            mfb = Mf.ob(b)
            for a in fib_x.objects:
                for k in fib_x.hom(a, mfb):
                    t = _enc_mor(f, k, b)
                    mor_id[(f, k, b)] = t
                    mor_of[t] = TotalMor(f, k)
                    mor_rec.append((t, obj_id[(x, a)], obj_id[(y, b)]))
    if len(mor_of) != len(mor_id):
        raise CategoryError("total morphism id collision")

    by_src = {}
    tgt_obj = {}
    for t, s, o in mor_rec:
        by_src.setdefault(s, []).append(t)
        tgt_obj[t] = o

    identity = {}
    for x in base.objects:
        eta = M.eta(x)
        for a in M.fiber_at(x).objects:
            identity[obj_id[(x, a)]] = mor_id[(base.id_of(x), eta.at(a), a)]

    table = {}
    for t1, _, mid in mor_rec:
        f, k = mor_of[t1].base_part, mor_of[t1].fiber_part
        x = base.src[f]
        fib_x, Mf = M.fiber_at(x), M.arrow_at(f)
        for t2 in by_src.get(mid, ()):
            g, l = mor_of[t2].base_part, mor_of[t2].fiber_part
            gf = base.comp(f, g)
            c = obj_of[tgt_obj[t2]][1]
            # second projection of g applied to l, then the compositor at c
            fib = fib_x.comp(fib_x.comp(k, Mf.mor(l)), M.mu(f, g).at(c))
            table[(t1, t2)] = mor_id[(gf, fib, c)]

    total = validate_category(obj_of, mor_rec, identity, table)
    proj = validate_functor(
        total,
        base,
        {t: xa[0] for t, xa in obj_of.items()},
        {t: tm.base_part for t, tm in mor_of.items()},
    )
    return GrothResult(M, total, proj, obj_of, mor_of, obj_id, mor_id)


# ---------------------------------------------------------------------------
# Cartesian morphisms and fibrations, for arbitrary functors
# ---------------------------------------------------------------------------


def _over_map(P: FinFunctor) -> dict:
    """Total morphisms grouped by (base image, total target), cached."""
    cache = P.cache("over")
    if "map" not in cache:
        m = {}
        for phi in P.source.morphisms:
            m.setdefault((P.mor(phi), P.source.tgt[phi]), []).append(phi)
        cache["map"] = m
    return cache["map"]


def is_cartesian(P: FinFunctor, phi: str) -> bool:
    """Full universal property: every compatible morphism factors uniquely.

    For every g composable with P(phi) and every theta over P(phi)∘g into
    tgt(phi) there must be exactly one psi over g with phi∘psi = theta.
    """
    A, X = P.source, P.target
    if phi not in A.src:
        raise UnknownMorphism(phi)
    cache = P.cache("cartesian")
    if phi in cache:
        return cache[phi]
    f = P.mor(phi)
    b = A.tgt[phi]
    a = A.src[phi]
    over = _over_map(P)
    result = True
    for g in X.morphisms:
        if X.tgt[g] != X.src[f]:
            continue
        fg = X.comp(g, f)
        for theta in over.get((fg, b), ()):
            n = 0
            for psi in A.hom(A.src[theta], a):
                if P.mor(psi) == g and A.comp(psi, phi) == theta:
                    n += 1
                    if n > 1:
                        break
            if n != 1:
                result = False
                break
        if not result:
            break
    cache[phi] = result
    return result


def fiber_objects(P: FinFunctor, x: str) -> tuple:
    return tuple(t for t in P.source.objects if P.ob(t) == x)


def fiber(P: FinFunctor, x: str) -> FinCat:
    """Subcategory of everything sitting over x and id_x."""
    P.target.require_object(x)
    cache = P.cache("fiber")
    if x in cache:
        return cache[x]
    A = P.source
    obs = fiber_objects(P, x)
    idx = P.target.id_of(x)
    mors = [m for m in A.morphisms if P.mor(m) == idx and A.src[m] in set(obs)]
    fib = validate_category(
        obs,
        [(m, A.src[m], A.tgt[m]) for m in mors],
        {o: A.id_of(o) for o in obs},
        {
            (m1, m2): A.comp(m1, m2)
            for m1 in mors
            for m2 in mors
            if A.tgt[m1] == A.src[m2]
        },
    )
    cache[x] = fib
    return fib


def fiber_inclusion(P: FinFunctor, x: str) -> FinFunctor:
    fib = fiber(P, x)
    return validate_functor(
        fib,
        P.source,
        {o: o for o in fib.objects},
        {m: m for m in fib.morphisms},
    )


def is_fibration(P: FinFunctor) -> Check:
    """Every base morphism has a cartesian lift to every object over its target."""
    X = P.target
    for f in X.morphisms:
        y = X.tgt[f]
        for b in fiber_objects(P, y):
            lifts = _over_map(P).get((f, b), ())
            if not any(is_cartesian(P, phi) for phi in lifts):
                return Check(False, (f, b))
    return Check(True)


@dataclass(frozen=True, eq=False)
class Cleaving:
    P: FinFunctor
    entries: dict  # (base morphism f, total object b over tgt f) -> lift

    def lift(self, f: str, b: str) -> str:
        return self.entries[(f, b)]

    def reindexed_object(self, f: str, b: str) -> str:
        return self.P.source.src[self.entries[(f, b)]]


def choose_cleaving(P: FinFunctor) -> Cleaving:
    """Deterministic cleaving: the least cartesian lift, identities for identities."""
    X = P.target
    A = P.source
    entries = {}
    over = _over_map(P)
    for f in X.morphisms:
        y = X.tgt[f]
        for b in fiber_objects(P, y):
            if X.is_identity(f):
                entries[(f, b)] = A.id_of(b)
                continue
            for phi in over.get((f, b), ()):  # hom lists are sorted
                if is_cartesian(P, phi):
                    entries[(f, b)] = phi
                    break
            else:
                raise NotAFibration((f, b))
    for (f, b), phi in entries.items():
        if not is_cartesian(P, phi):
            raise NotAFibration((f, b))
    return Cleaving(P, entries)


def cartesian_factor(P: FinFunctor, phi: str, g: str, theta: str):
    """The unique psi over g with phi∘psi = theta; None when absent."""
    A = P.source
    found = None
    for psi in A.hom(A.src[theta], A.src[phi]):
        if P.mor(psi) == g and A.comp(psi, phi) == theta:
            if found is not None:
                return None
            found = psi
    return found


def reindexing(P: FinFunctor, cleaving: Cleaving, f: str) -> FinFunctor:
    """Fiber-to-fiber functor induced by the cleaving along f: x→y."""
    X = P.target
    x, y = X.src[f], X.tgt[f]
    fib_y, fib_x = fiber(P, y), fiber(P, x)
    on_objects = {b: cleaving.reindexed_object(f, b) for b in fib_y.objects}
    on_morphisms = {}
    A = P.source
    idx = X.id_of(x)
    for psi in fib_y.morphisms:
        b, b2 = fib_y.src[psi], fib_y.tgt[psi]
        theta = A.comp(cleaving.lift(f, b), psi)
        w = cartesian_factor(P, cleaving.lift(f, b2), idx, theta)
        if w is None:
            raise NotAFibration((f, b2))
        on_morphisms[psi] = w
    return validate_functor(fib_y, fib_x, on_objects, on_morphisms)


def invert_total(gr: GrothResult, phi: str):
    """Two-sided inverse of a total morphism, from the exhaustive iso scan."""
    gr.total.require_morphism(phi)
    return gr.total.inverses.get(phi)


def canonical_lift(gr: GrothResult, f: str, b: str) -> str:
    """The lift (f, id) of f to the total object b over tgt(f)."""
    M = gr.indexed
    x = M.base.src[f]
    _, b_fib = gr.obj_of[b]
    return gr.mor_id[(f, M.fiber_at(x).id_of(M.arrow_at(f).ob(b_fib)), b_fib)]


def check_fibred_functor(H: FinFunctor, P: FinFunctor, Q: FinFunctor) -> Check:
    """H commutes with the projections and preserves cartesian morphisms."""
    if H.source is not P.source or H.target is not Q.source:
        raise TriangleDoesNotCommute("endpoint categories differ")
    for x in P.source.objects:
        if Q.ob(H.ob(x)) != P.ob(x):
            raise TriangleDoesNotCommute(("object", x))
    for m in P.source.morphisms:
        if Q.mor(H.mor(m)) != P.mor(m):
            raise TriangleDoesNotCommute(("morphism", m))
    for phi in P.source.morphisms:
        if is_cartesian(P, phi) and not is_cartesian(Q, H.mor(phi)):
            return Check(False, phi)
    return Check(True)


def check_fibred_nat_trans(beta: NatTrans, H: FinFunctor, K: FinFunctor, P: FinFunctor, Q: FinFunctor) -> Check:
    """All components of beta are vertical (project to identities)."""
    check_fibred_functor(H, P, Q)
    check_fibred_functor(K, P, Q)
    for a in P.source.objects:
        comp = beta.at(a)
        if Q.mor(comp) != P.target.id_of(P.ob(a)):
            return Check(False, (a, comp))
    return Check(True)


def fiber_iso_to_indexed_fiber(gr: GrothResult, x: str) -> FinFunctor:
    """The canonical isomorphism M(x) → fiber of the projection over x."""
    M = gr.indexed
    fib_x = M.fiber_at(x)
    fib_total = fiber(gr.proj, x)
    eta = M.eta(x)
    idx = M.base.id_of(x)
    on_objects = {a: gr.obj_id[(x, a)] for a in fib_x.objects}
    on_morphisms = {}
    for k in fib_x.morphisms:
        b = fib_x.tgt[k]
        on_morphisms[k] = gr.mor_id[(idx, fib_x.comp(k, eta.at(b)), b)]
    return validate_functor(fib_x, fib_total, on_objects, on_morphisms)
