"""Pullbacks and weak pushouts by exhaustive universal-property search.

A pullback of a cospan is a terminal commutative square over it; a weak
pushout of a span is a pullback square over that span which is initial among
all pullback squares on the same span.  Both searches enumerate every
candidate and verify mediator existence and uniqueness against every
competitor, so a positive answer is a certificate.

Results are cached on the category instance (keyed by the cospan or span),
which keeps whole-category audits tractable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Check, FinCat, CategoryError
from .functors import FinFunctor


class NotACospan(CategoryError):
    pass


class NotASpan(CategoryError):
    pass


class NonCommuting(CategoryError):
    pass


@dataclass(frozen=True)
class Cospan:
    """A pair of morphisms f1: c1→d, f2: c2→d with a common target."""

    f1: str
    f2: str


@dataclass(frozen=True)
class Span:
    """A pair of morphisms g1: p→c1, g2: p→c2 with a common source."""

    g1: str
    g2: str


@dataclass(frozen=True)
class Square:
    """A commutative square: right∘top = bottom∘left.

    top: p→c1, left: p→c2, right: c1→d, bottom: c2→d.
    """

    top: str
    left: str
    right: str
    bottom: str


@dataclass(frozen=True)
class Pullback:
    apex: str
    leg1: str  # apex -> src(f1)
    leg2: str  # apex -> src(f2)
    mediators: dict  # (q, u, v) -> unique mediator w: q -> apex

    def square(self, cospan: Cospan) -> Square:
        return Square(self.leg1, self.leg2, cospan.f1, cospan.f2)


@dataclass(frozen=True)
class WeakPushout:
    apex: str
    square: Square
    mediators: dict  # competing pullback square -> unique mediator


def check_cospan(C: FinCat, cospan: Cospan) -> None:
    C.require_morphism(cospan.f1)
    C.require_morphism(cospan.f2)
    if C.tgt[cospan.f1] != C.tgt[cospan.f2]:
        raise NotACospan((cospan.f1, cospan.f2))


def check_span(C: FinCat, span: Span) -> None:
    C.require_morphism(span.g1)
    C.require_morphism(span.g2)
    if C.src[span.g1] != C.src[span.g2]:
        raise NotASpan((span.g1, span.g2))


def check_square(C: FinCat, sq: Square) -> None:
    for m in (sq.top, sq.left, sq.right, sq.bottom):
        C.require_morphism(m)
    ok = (
        C.src[sq.top] == C.src[sq.left]
        and C.tgt[sq.top] == C.src[sq.right]
        and C.tgt[sq.left] == C.src[sq.bottom]
        and C.tgt[sq.right] == C.tgt[sq.bottom]
        and C.comp(sq.top, sq.right) == C.comp(sq.left, sq.bottom)
    )
    if not ok:
        raise NonCommuting(sq)


def _competitors(C: FinCat, f1: str, f2: str) -> list:
    """All (q, u, v) with f1∘u = f2∘v, in construction (lexicographic) order."""
    c1, c2 = C.src[f1], C.src[f2]
    table = C.table
    out = []
    for q in C.objects:
        by_comp = {}
        for v in C.hom(q, c2):
            by_comp.setdefault(table[(v, f2)], []).append(v)
        for u in C.hom(q, c1):
            for v in by_comp.get(table[(u, f1)], ()):
                out.append((q, u, v))
    return out


def _pullback_of(C: FinCat, f1: str, f2: str):
    """Cached terminal competitor of the cospan (f1, f2), or None."""
    cache = C.cache("pullbacks")
    key = (f1, f2)
    if key in cache:
        return cache[key]
    comps = _competitors(C, f1, f2)
    # Verification order: competitors least likely to mediate first.
    verify = sorted(comps, key=lambda t: t[0], reverse=True)
    table = C.table
    result = None
    for (p, u0, v0) in comps:
        mediators = {}
        ok = True
        for (q, u, v) in verify:
            found = None
            for w in C.hom(q, p):
                if table[(w, u0)] == u and table[(w, v0)] == v:
                    if found is not None:
                        found = None
                        ok = False
                        break
                    found = w
            if not ok or found is None:
                ok = False
                break
            mediators[(q, u, v)] = found
        if ok:
            result = Pullback(p, u0, v0, mediators)
            break
    cache[key] = result
    return result


def pullback(C: FinCat, cospan: Cospan):
    """The chosen pullback of a cospan, or None when none exists.

    Ties between isomorphic answers are broken by the lexicographically least
    (apex, leg1, leg2), which makes outputs reproducible.
    """
    check_cospan(C, cospan)
    return _pullback_of(C, cospan.f1, cospan.f2)


def as_pullback(C: FinCat, cospan: Cospan, leg1: str, leg2: str):
    """Package a chosen competitor as a pullback, or None if not terminal.

    Unlike ``pullback`` this lets the caller pick a non-canonical
    representative; the mediator table is rebuilt for that choice.
    """
    check_cospan(C, cospan)
    comps = _competitors(C, cospan.f1, cospan.f2)
    table = C.table
    p = C.src[leg1]
    mediators = {}
    for (q, u, v) in comps:
        found = None
        for w in C.hom(q, p):
            if table[(w, leg1)] == u and table[(w, leg2)] == v:
                if found is not None:
                    return None
                found = w
        if found is None:
            return None
        mediators[(q, u, v)] = found
    return Pullback(p, leg1, leg2, mediators)


def is_pullback_square(C: FinCat, sq: Square) -> bool:
    """Whether the square is terminal over its own cospan.

    Uses the cached pullback: a commuting square is a pullback square exactly
    when its unique mediator into the chosen pullback is an isomorphism.
    """
    check_square(C, sq)
    pb = _pullback_of(C, sq.right, sq.bottom)
    if pb is None:
        return False
    w = pb.mediators.get((C.src[sq.top], sq.top, sq.left))
    if w is None:  # commuting squares are always competitors
        raise CategoryError("internal error: competitor not indexed")
    return w in C.inverses


def _pullback_completions(C: FinCat, g1: str, g2: str) -> list:
    """All pullback-square completions of the span (g1, g2), cached."""
    cache = C.cache("span_completions")
    key = (g1, g2)
    if key in cache:
        return cache[key]
    c1, c2 = C.tgt[g1], C.tgt[g2]
    table = C.table
    out = []
    for d in C.objects:
        by_comp = {}
        for f2 in C.hom(c2, d):
            by_comp.setdefault(table[(g2, f2)], []).append(f2)
        for f1 in C.hom(c1, d):
            for f2 in by_comp.get(table[(g1, f1)], ()):
                sq = Square(g1, g2, f1, f2)
                if is_pullback_square(C, sq):
                    out.append(sq)
    cache[key] = out
    return out


def _initial_mediators(C: FinCat, sq: Square, completions: list):
    """Unique mediators from ``sq`` to every pullback-square completion.

    Returns (mediators, failure); failure is (square, "no_mediator") or
    (square, "non_unique") so the two ways initiality can break stay
    distinguishable.
    """
    table = C.table
    d = C.tgt[sq.right]
    mediators = {}
    for other in completions:
        z = C.tgt[other.right]
        found = None
        for h in C.hom(d, z):
            if table[(sq.right, h)] == other.right and table[(sq.bottom, h)] == other.bottom:
                if found is not None:
                    return None, (other, "non_unique")
                found = h
        if found is None:
            return None, (other, "no_mediator")
        mediators[other] = found
    return mediators, None


def weak_pushout(C: FinCat, span: Span):
    """The chosen weak pushout of a span, or None.

    A weak pushout is a pullback-square completion of the span through which
    every other pullback-square completion factors uniquely.
    """
    check_span(C, span)
    cache = C.cache("weak_pushouts")
    key = (span.g1, span.g2)
    if key in cache:
        return cache[key]
    completions = _pullback_completions(C, span.g1, span.g2)
    result = None
    for sq in completions:
        mediators, failure = _initial_mediators(C, sq, completions)
        if failure is None:
            result = WeakPushout(C.tgt[sq.right], sq, mediators)
            break
    cache[key] = result
    return result


def is_weak_pushout_square(C: FinCat, sq: Square) -> Check:
    """Full universal check of a single candidate square."""
    check_square(C, sq)
    if not is_pullback_square(C, sq):
        return Check(False, (sq, "not_a_pullback_square"))
    completions = _pullback_completions(C, sq.top, sq.left)
    _, failure = _initial_mediators(C, sq, completions)
    if failure is not None:
        return Check(False, failure)
    return Check(True)


def has_pullback_square_completion(C: FinCat, span: Span) -> bool:
    check_span(C, span)
    return bool(_pullback_completions(C, span.g1, span.g2))


def all_cospans(C: FinCat):
    for d in C.objects:
        inbound = [f for x in C.objects for f in C.hom(x, d)]
        for f1 in inbound:
            for f2 in inbound:
                yield Cospan(f1, f2)


def all_spans(C: FinCat):
    for p in C.objects:
        outbound = [f for y in C.objects for f in C.hom(p, y)]
        for g1 in outbound:
            for g2 in outbound:
                yield Span(g1, g2)


def _image_square(F: FinFunctor, sq: Square) -> Square:
    return Square(F.mor(sq.top), F.mor(sq.left), F.mor(sq.right), F.mor(sq.bottom))


def preserves_pullbacks(F: FinFunctor) -> Check:
    """Image of every chosen pullback square is a pullback square.

    Pullback squares over a cospan agree up to an apex isomorphism and
    functors preserve isomorphisms, so checking the chosen one per cospan
    covers them all.
    """
    n = 0
    for cospan in all_cospans(F.source):
        pb = pullback(F.source, cospan)
        if pb is None:
            continue
        n += 1
        if not is_pullback_square(F.target, _image_square(F, pb.square(cospan))):
            return Check(False, pb.square(cospan))
    return Check(True, info={"pullback_squares_checked": n})


def preserves_weak_pushouts(F: FinFunctor) -> Check:
    """Image of every chosen weak pushout square passes the universal check."""
    n = 0
    for span in all_spans(F.source):
        wp = weak_pushout(F.source, span)
        if wp is None:
            continue
        n += 1
        verdict = is_weak_pushout_square(F.target, _image_square(F, wp.square))
        if not verdict:
            return Check(False, (wp.square, verdict.counterexample))
    return Check(True, info={"weak_pushout_squares_checked": n})
