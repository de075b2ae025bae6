import math

import pytest

from fibcat import (
    NotAFibration,
    canonical_lift,
    check_fibred_functor,
    check_fibred_nat_trans,
    choose_cleaving,
    compose_functors,
    fiber,
    fiber_inclusion,
    functor_properties,
    functors_equal,
    grothendieck,
    invert_total,
    is_cartesian,
    is_fibration,
    reindexing,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from fibcat.groth import cartesian_factor, fiber_iso_to_indexed_fiber
from fibcat.generators import (
    decorated_composite,
    delta_const,
    indexed_gpow,
    slice_indexed,
)
from fibcat.groups import (
    hom_as_functor,
    symmetric_group,
    trivial_group,
    validate_group_hom,
)


def perm_count(n, m):
    return math.factorial(n) // math.factorial(n - m)


def test_hom_set_cardinalities(gr_zpow2_3):
    # oracle: decorated injections m→n number |G|^m · n!/(n-m)!
    _, gr = gr_zpow2_3
    for m in range(4):
        for n in range(m, 4):
            got = len(gr.total.hom(gr.obj_id[(str(m), "*")], gr.obj_id[(str(n), "*")]))
            assert got == 2 ** m * perm_count(n, m)


def test_intro_figure_composition_rule():
    # the worked composite with decorations in a nonabelian group, so the
    # multiplication order is pinned: the result is (g1·h2, g2·h1, g3·h4)
    s3 = symmetric_group(3)
    g1, g2, g3 = "120", "201", "102"
    h1, h2, h3, h4 = "210", "021", "120", "012"
    f_imgs = (1, 0, 3)  # 1↦2, 2↦1, 3↦4 zero-based
    h_imgs = (4, 0, 1, 2)  # 1↦5, 2↦1, 3↦2, 4↦3 zero-based
    imgs, decs = decorated_composite(
        s3, f_imgs, (g1, g2, g3), h_imgs, (h1, h2, h3, h4)
    )
    assert imgs == (0, 4, 2)
    assert decs == (s3.mul(g1, h2), s3.mul(g2, h1), s3.mul(g3, h4))


def test_total_composition_agrees_with_decorated_rule(z2):
    M = indexed_gpow(z2, 3)
    gr = grothendieck(M)
    from fibcat.generators import fi_g_comparison

    F, props = fi_g_comparison(z2, 3, gr)
    assert props.equivalence
    assert props.full.holds and props.faithful.holds and props.essentially_surjective.holds


def test_isos_are_cartesian(gr_zpow2_3):
    _, gr = gr_zpow2_3
    for phi in gr.total.inverses:
        assert is_cartesian(gr.proj, phi)


def test_canonical_lifts_are_cartesian(gr_zpow2_3):
    M, gr = gr_zpow2_3
    for f in M.base.morphisms:
        y = M.base.tgt[f]
        for b in M.fiber_at(y).objects:
            assert is_cartesian(gr.proj, canonical_lift(gr, f, gr.obj_id[(y, b)]))


def test_noncartesian_witness_in_two_level_fiber(fi2):
    # fiber an arrow category a→b: the lift (f, non-iso vertical) fails
    Y = validate_category(
        ["a", "b"],
        [("ia", "a", "a"), ("ib", "b", "b"), ("v", "a", "b")],
        {"a": "ia", "b": "ib"},
        {},
    )
    M = delta_const(fi2, Y)
    gr = grothendieck(M)
    phi = gr.mor_id[(fi2.id_of("0"), "v", "b")]
    assert not is_cartesian(gr.proj, phi)


def test_fibration_for_group_surjection(z4, z2):
    p = validate_group_hom(z4, z2, {"0": "0", "1": "1", "2": "0", "3": "1"})
    assert is_fibration(hom_as_functor(p)).holds


def test_non_surjective_hom_is_not_a_fibration(z2):
    t = trivial_group()
    p = validate_group_hom(t, z2, {"e": "0"})
    rep = is_fibration(hom_as_functor(p))
    assert not rep.holds
    assert rep.counterexample == ("1", "*")


def test_cleaving_normalized_and_split_for_strict(gr_zpow2_3):
    M, gr = gr_zpow2_3
    cleaving = choose_cleaving(gr.proj)
    base = M.base
    for (f, b), lift in cleaving.entries.items():
        if base.is_identity(f):
            assert lift == gr.total.id_of(b)
    # split law: Cart(g∘f, c) = Cart(f, g*c) ∘ Cart(g, c) exactly
    for (f, g), gf in base.table.items():
        for c in [t for t in gr.total.objects if gr.proj.ob(t) == base.tgt[g]]:
            lift_g = cleaving.lift(g, c)
            gc = gr.total.src[lift_g]
            assert gr.total.comp(cleaving.lift(f, gc), lift_g) == cleaving.lift(gf, c)


def test_choose_cleaving_requires_fibration(z2):
    t = trivial_group()
    p = validate_group_hom(t, z2, {"e": "0"})
    with pytest.raises(NotAFibration):
        choose_cleaving(hom_as_functor(p))


def test_fiber_of_group_hom_is_kernel(z4, z2):
    p = validate_group_hom(z4, z2, {"0": "0", "1": "1", "2": "0", "3": "1"})
    F = hom_as_functor(p)
    fib = fiber(F, "*")
    assert set(fib.morphisms) == {"0", "2"}


def test_fiber_iso_to_indexed_fiber(gr_zpow2_3):
    M, gr = gr_zpow2_3
    for x in M.base.objects:
        iso = fiber_iso_to_indexed_fiber(gr, x)
        props = functor_properties(iso)
        assert props.equivalence
        assert len(iso.source.morphisms) == len(iso.target.morphisms)


def test_reindexing_identity_is_identity(gr_zpow2_3):
    M, gr = gr_zpow2_3
    cleaving = choose_cleaving(gr.proj)
    f = M.base.id_of("2")
    F = reindexing(gr.proj, cleaving, f)
    assert functors_equal(F, validate_functor(F.source, F.source, {o: o for o in F.source.objects}, {m: m for m in F.source.morphisms}))


def test_reindexing_matches_stored_arrow(gr_zpow2_3):
    # transport the reindexing along the canonical fiber isos and compare
    M, gr = gr_zpow2_3
    cleaving = choose_cleaving(gr.proj)
    for f in M.base.morphisms:
        x, y = M.base.src[f], M.base.tgt[f]
        star = reindexing(gr.proj, cleaving, f)
        iso_x = fiber_iso_to_indexed_fiber(gr, x)
        iso_y = fiber_iso_to_indexed_fiber(gr, y)
        transported = compose_functors(iso_y, star)
        direct = compose_functors(M.arrow_at(f), iso_x)
        assert functors_equal(transported, direct)


def test_reindexing_composite_iso(gr_zpow2_3):
    # f* ∘ g* is isomorphic to (g∘f)* via a transformation from the cleaving
    M, gr = gr_zpow2_3
    cleaving = choose_cleaving(gr.proj)
    base = M.base
    pairs = [(f, g) for (f, g) in base.table if not base.is_identity(f)][:6]
    for f, g in pairs:
        gf = base.comp(f, g)
        star_f = reindexing(gr.proj, cleaving, f)
        star_g = reindexing(gr.proj, cleaving, g)
        star_gf = reindexing(gr.proj, cleaving, gf)
        both = compose_functors(star_g, star_f)
        comps = {}
        for c in star_g.source.objects:
            composite = gr.total.comp(
                cleaving.lift(f, star_g.ob(c)), cleaving.lift(g, c)
            )
            w = cartesian_factor(gr.proj, cleaving.lift(gf, c), base.id_of(base.src[f]), composite)
            assert w is not None
            comps[c] = w
        validate_nat_trans(both, star_gf, comps)
        assert all(w in gr.total.inverses for w in comps.values())


def test_invert_total_cases(gr_zpow2_3):
    M, gr = gr_zpow2_3
    base = M.base
    # identity inverts to itself
    idt = gr.total.id_of(gr.obj_id[("2", "*")])
    assert invert_total(gr, idt) == idt
    # ((01), (g1,g2)) at (2,*) has an inverse with the inverse base part
    from fibcat.generators import inj_id

    swap = inj_id(2, 2, (1, 0))
    phi = gr.mor_id[(swap, "(0,1)", "*")]
    inv = invert_total(gr, phi)
    assert inv is not None
    assert gr.mor_of[inv].base_part == swap
    # non-invertible base part: no inverse
    incl = inj_id(1, 2, (0,))
    assert invert_total(gr, gr.mor_id[(incl, "(0)", "*")]) is None


def test_invert_total_closed_form_for_strict(gr_zpow2_3):
    # for strict data the inverse of (f, k) is (f^-1, M(f^-1)(k^-1))
    M, gr = gr_zpow2_3
    base = M.base
    for phi in sorted(gr.total.inverses)[:40]:
        tm = gr.mor_of[phi]
        f, k = tm.base_part, tm.fiber_part
        x = base.src[f]
        f_inv = base.inverses[f]
        k_inv = M.fiber_at(x).inverses[k]
        expected = M.arrow_at(f_inv).mor(k_inv)
        assert gr.mor_of[gr.total.inverses[phi]].fiber_part == expected


def test_vertical_inverses_stay_vertical(groth_corpus):
    for name, M, gr in groth_corpus:
        for phi, inv in gr.total.inverses.items():
            f = gr.mor_of[phi].base_part
            if M.base.is_identity(f):
                assert M.base.is_identity(gr.mor_of[inv].base_part)


def test_fibred_functor_identity(gr_zpow2_3):
    _, gr = gr_zpow2_3
    H = validate_functor(
        gr.total,
        gr.total,
        {o: o for o in gr.total.objects},
        {m: m for m in gr.total.morphisms},
    )
    assert check_fibred_functor(H, gr.proj, gr.proj).holds


def test_fibred_functor_failure_six_morphisms():
    # B has a two-object fiber over x; H collapses the cartesian lift of A
    # onto the non-cartesian theta0
    X = validate_category(
        ["x", "y"],
        [("ix", "x", "x"), ("iy", "y", "y"), ("f", "x", "y")],
        {"x": "ix", "y": "iy"},
        {},
    )
    A = validate_category(
        ["a", "b"],
        [("ia", "a", "a"), ("ib", "b", "b"), ("phi", "a", "b")],
        {"a": "ia", "b": "ib"},
        {},
    )
    B = validate_category(
        ["a0", "a1", "bp"],
        [
            ("i0", "a0", "a0"),
            ("i1", "a1", "a1"),
            ("ibp", "bp", "bp"),
            ("v", "a0", "a1"),
            ("theta0", "a0", "bp"),
            ("theta1", "a1", "bp"),
        ],
        {"a0": "i0", "a1": "i1", "bp": "ibp"},
        {("v", "theta1"): "theta0"},
    )
    P = validate_functor(A, X, {"a": "x", "b": "y"}, {"ia": "ix", "ib": "iy", "phi": "f"})
    Q = validate_functor(
        B,
        X,
        {"a0": "x", "a1": "x", "bp": "y"},
        {"i0": "ix", "i1": "ix", "v": "ix", "ibp": "iy", "theta0": "f", "theta1": "f"},
    )
    assert is_cartesian(Q, "theta1")
    assert not is_cartesian(Q, "theta0")
    H = validate_functor(A, B, {"a": "a0", "b": "bp"}, {"ia": "i0", "ib": "ibp", "phi": "theta0"})
    rep = check_fibred_functor(H, P, Q)
    assert not rep.holds and rep.counterexample == "phi"
    # a mismatched triangle is rejected outright
    H2 = validate_functor(A, B, {"a": "a1", "b": "bp"}, {"ia": "i1", "ib": "ibp", "phi": "theta1"})
    assert check_fibred_functor(H2, P, Q).holds


def test_fibred_nat_trans_verticality(gr_zpow2_3):
    _, gr = gr_zpow2_3
    H = validate_functor(
        gr.total,
        gr.total,
        {o: o for o in gr.total.objects},
        {m: m for m in gr.total.morphisms},
    )
    beta = validate_nat_trans(H, H, {o: gr.total.id_of(o) for o in gr.total.objects})
    assert check_fibred_nat_trans(beta, H, H, gr.proj, gr.proj).holds


def test_slice_projection_is_fibration(fi2):
    gr = grothendieck(slice_indexed(fi2))
    assert is_fibration(gr.proj).holds
    for x in fi2.objects:
        fiber_inclusion(gr.proj, x)  # validates


def test_fiber_of_constant_projection_is_the_fiber_category(fi2):
    gr = grothendieck(delta_const(fi2, fi2))
    for x in fi2.objects:
        iso = fiber_iso_to_indexed_fiber(gr, x)
        assert functor_properties(iso).equivalence
        assert len(iso.target.morphisms) == len(fi2.morphisms)


def test_total_iso_classes_at_small_truncation(z2):
    from fibcat import iso_classes

    gr = grothendieck(indexed_gpow(z2, 2))
    assert len(iso_classes(gr.total)) == 3  # one class per (n, *), n = 0, 1, 2


def test_round_trip_fibers_and_reindexing_across_corpus(groth_corpus):
    # fibers of the projection recover the given fibers, and the cleaving
    # reindexing recovers each arrow functor up to a canonical vertical iso
    from fibcat import NatTrans

    for name, M, gr in groth_corpus:
        cleaving = choose_cleaving(gr.proj)
        for x in M.base.objects:
            iso = fiber_iso_to_indexed_fiber(gr, x)
            assert functor_properties(iso).equivalence, (name, x)
        for f in M.base.morphisms:
            x, y = M.base.src[f], M.base.tgt[f]
            star = reindexing(gr.proj, cleaving, f)
            iso_x = fiber_iso_to_indexed_fiber(gr, x)
            iso_y = fiber_iso_to_indexed_fiber(gr, y)
            transported = compose_functors(iso_y, star)
            direct = compose_functors(M.arrow_at(f), iso_x)
            # canonical components: factor the chosen lift through (f, id)
            comps = {}
            for b in M.fiber_at(y).objects:
                t = gr.obj_id[(y, b)]
                w = cartesian_factor(
                    gr.proj,
                    canonical_lift(gr, f, t),
                    M.base.id_of(x),
                    cleaving.lift(f, t),
                )
                assert w is not None, (name, f, b)
                comps[b] = w
            nt = validate_nat_trans(transported, direct, comps)
            assert all(c in gr.total.inverses for c in nt.components.values())
