import pytest

from fibcat import (
    BadFiberFunctor,
    CoherenceViolation,
    UnitorViolation,
    restrict_to_aut,
    strict_functoriality_check,
    validate_functor,
    validate_indexed,
)
from fibcat.generators import (
    delta_const,
    fi_truncated,
    indexed_gpow,
    slice_indexed,
    square_poset,
)
from fibcat.groups import (
    TwistedAction,
    cyclic_group,
    twisted_from_surjection,
    twisted_indexed_data,
    validate_group_hom,
)


def test_delta_is_valid_and_strict(fi2):
    M = delta_const(fi2, fi2)
    assert M.strict
    assert strict_functoriality_check(M)


def test_gpow_is_valid_and_strict(z2):
    M = indexed_gpow(z2, 2)
    assert M.strict
    assert strict_functoriality_check(M)


def test_contravariance_endpoints_enforced(fi2):
    # a covariant-looking arrow table must be rejected, not auto-flipped
    Y = fi_truncated(1)
    M = delta_const(fi2, Y)
    bad_arrows = dict(M.arrows)
    f = next(m for m in fi2.morphisms if fi2.src[m] != fi2.tgt[m])
    bad_arrows[f] = validate_functor(Y, fi_truncated(2), {o: o for o in Y.objects}, {m: m for m in Y.morphisms})
    with pytest.raises(BadFiberFunctor):
        validate_indexed(fi2, M.fibers, bad_arrows)


def test_missing_compositor_for_nonstrict_data_fails(z2, s3):
    # S3 x Z/2 -> Z/2 with a 3-cycle section: the twisting element is
    # non-central in the kernel, so the arrows are not strictly functorial
    # and identity compositors cannot validate.
    from fibcat.groups import semidirect, trivial_action

    E = semidirect(z2, s3, trivial_action(z2, s3))
    p = validate_group_hom(E, z2, {e: e[1] for e in E.elements})
    section = {"0": "(0,012)", "1": "(1,120)"}
    T = twisted_from_surjection(p, section)
    assert any(v != T.acted.unit for v in T.phi.values())
    base, fiber, arrows, compositors = twisted_indexed_data(T)
    arrow_functors = {
        g: validate_functor(fiber, fiber, ob, mor) for g, (ob, mor) in arrows.items()
    }
    with pytest.raises((CoherenceViolation, UnitorViolation)):
        validate_indexed(base, {"*": fiber}, arrow_functors)
    # the real compositors validate
    M = validate_indexed(base, {"*": fiber}, arrow_functors, compositors)
    assert not M.strict


def test_unit_perturbation_raises_unitor_violation(z4_twisted):
    T = z4_twisted
    phi = dict(T.phi)
    phi[("0", "1")] = "2"  # breaks the normalisation phi(e, g) = e
    base, fiber, arrows, compositors = twisted_indexed_data(
        TwistedAction(T.acting, T.acted, T.act, phi)
    )
    arrow_functors = {
        g: validate_functor(fiber, fiber, ob, mor) for g, (ob, mor) in arrows.items()
    }
    with pytest.raises(UnitorViolation):
        validate_indexed(base, {"*": fiber}, arrow_functors, compositors)


def test_cocycle_perturbation_raises_coherence_violation():
    z8 = cyclic_group(8)
    z4 = cyclic_group(4)
    p = validate_group_hom(z8, z4, {str(i): str(i % 4) for i in range(8)})
    T = twisted_from_surjection(p, {str(i): str(i) for i in range(4)})
    phi = dict(T.phi)
    phi[("1", "1")] = "4" if T.phi[("1", "1")] == "0" else "0"
    base, fiber, arrows, compositors = twisted_indexed_data(
        TwistedAction(T.acting, T.acted, T.act, phi)
    )
    arrow_functors = {
        g: validate_functor(fiber, fiber, ob, mor) for g, (ob, mor) in arrows.items()
    }
    with pytest.raises(CoherenceViolation):
        validate_indexed(base, {"*": fiber}, arrow_functors, compositors)


def test_restrict_to_aut_gpow(z2):
    M = indexed_gpow(z2, 2)
    R = restrict_to_aut(M, "2")
    assert R.base.objects == ("2",)
    assert len(R.base.morphisms) == 2  # S2
    assert set(R.fibers) == {"2"}
    assert R.strict


def test_restrict_to_aut_constant(fi2):
    M = delta_const(fi2, fi_truncated(1))
    R = restrict_to_aut(M, "2")
    assert len(R.base.morphisms) == 2
    assert R.strict


def test_restrict_at_trivial_aut_gives_one_morphism_base():
    M = slice_indexed(square_poset())
    R = restrict_to_aut(M, "b")
    assert len(R.base.morphisms) == 1


def test_slice_indexed_nonstrict_over_fi(fi2):
    M = slice_indexed(fi2)
    assert not M.strict
    # non-strict data fails the 1-categorical functoriality recheck
    assert not strict_functoriality_check(M)
