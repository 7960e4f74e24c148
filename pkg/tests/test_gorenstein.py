"""Self-injective dimension reports, GP classification, relative machinery."""

import pytest

from conftest import F2, quiver_a2, quiver_a3_rel, quiver_dual_numbers

from silting_forge.algebra import (
    Arrow,
    DomainError,
    QuiverPresentation,
    ValidationError,
    compile_quiver_algebra,
)
from silting_forge.exactlinalg import Matrix
from silting_forge.modules import (
    ModuleMap,
    Presentation,
    direct_sum,
    enumerate_indecomposables,
    ext_dim,
    hom_dim,
    indecomposable_projectives,
    is_isomorphic,
    is_projective,
    map_spaces,
    quotient_module,
    regular_module,
    simple_module,
    submodule,
    zero_module,
)
from silting_forge.gorenstein import (
    GpClassification,
    d_theta_contains,
    find_gorenstein_silting_presentation,
    gen_g_contains,
    gext_dim,
    gorenstein_report,
    gorenstein_silting_check,
    gp_classification,
    is_g_exact,
    is_gorenstein_projective,
    left_approximation_sequence,
    proper_gp_presentation,
    right_gp_approximation,
    zero_target_presentation,
)


def two_loop_local_algebra():
    """k[x,y] with all products of the loops killed: socle is 2-dimensional,
    so the regular module has unbounded injective resolution."""
    q = QuiverPresentation(
        ["v"],
        [Arrow("x", "v", "v"), Arrow("y", "v", "v")],
        [[("1", ["x", "x"])], [("1", ["x", "y"])], [("1", ["y", "x"])], [("1", ["y", "y"])]],
        F2,
        4,
    )
    return compile_quiver_algebra(q)


@pytest.fixture(scope="module")
def gp_a2():
    alg = compile_quiver_algebra(quiver_a2())
    return alg, gp_classification(alg, 4)


@pytest.fixture(scope="module")
def gp_dual():
    alg = compile_quiver_algebra(quiver_dual_numbers())
    return alg, gp_classification(alg, 4)


# ---------------------------------------------------------------------------
# Reports.
# ---------------------------------------------------------------------------


def test_report_hereditary(a2):
    rep = gorenstein_report(a2)
    assert rep.verdict == "gorenstein"
    assert rep.left_injective_dimension == 1
    assert rep.right_injective_dimension == 1
    assert rep.global_dimension == 1
    assert bool(rep)


def test_report_self_injective(dual):
    rep = gorenstein_report(dual)
    assert rep.verdict == "gorenstein"
    assert rep.left_injective_dimension == 0
    assert rep.right_injective_dimension == 0
    assert rep.global_dimension is None
    assert rep.to_json()["global_dimension"] == "exceeds_bound"


def test_report_not_within_bound():
    alg = two_loop_local_algebra()
    rep = gorenstein_report(alg, bound=3)
    assert rep.verdict == "not_within_bound"
    assert not bool(rep)
    with pytest.raises(DomainError, match="GP test requires Gorenstein certificate"):
        is_gorenstein_projective(regular_module(alg), rep)


# ---------------------------------------------------------------------------
# GP detection and classification.
# ---------------------------------------------------------------------------


def test_projectives_are_gp(a2, dual):
    for alg in (a2, dual):
        cert = is_gorenstein_projective(regular_module(alg))
        assert bool(cert)


def test_simple_over_hereditary_is_not_gp(a2):
    cert = is_gorenstein_projective(simple_module(a2, "e1"))
    assert not bool(cert)
    assert cert.ext_dims[1] == 1


def test_simple_over_self_injective_is_gp(dual):
    cert = is_gorenstein_projective(simple_module(dual, "ev"))
    assert bool(cert)
    assert any("self-injective" in n for n in cert.notes)


def test_classification_hereditary_is_projectives(gp_a2):
    alg, gp = gp_a2
    projs = [p for p, _ in indecomposable_projectives(alg)]
    assert len(gp.modules) == len(projs)
    for m in gp.modules:
        assert is_projective(m)
        assert any(is_isomorphic(m, p) is not None for p in projs)
    assert gp.complete


def test_classification_self_injective_is_everything(gp_dual):
    alg, gp = gp_dual
    pool = enumerate_indecomposables(alg, 4)
    assert len(gp.modules) == len(pool) == 2


def test_classification_requires_certificate():
    alg = two_loop_local_algebra()
    with pytest.raises(DomainError):
        gp_classification(alg, 3, report=gorenstein_report(alg, bound=3))


def test_gp_closed_under_sums_and_summands(gp_a2, gp_dual):
    for alg, gp in (gp_a2, gp_dual):
        for a in gp.modules:
            for b in gp.modules:
                assert bool(is_gorenstein_projective(direct_sum([a, b], algebra=alg)[0]))
    alg, gp = gp_a2
    s1 = simple_module(alg, "e1")
    bad = direct_sum([s1, gp.modules[0]], algebra=alg)[0]
    assert not bool(is_gorenstein_projective(bad))


# ---------------------------------------------------------------------------
# Right approximations and proper presentations.
# ---------------------------------------------------------------------------


def test_right_approximation_of_gp_module_is_identity_like(gp_dual):
    alg, gp = gp_dual
    for m in gp.modules:
        ap = right_gp_approximation(m, gp)
        assert ap.source.dim == m.dim
        assert is_isomorphic(ap.source, m) is not None


def test_right_approximation_of_simple_is_cover(gp_a2):
    alg, gp = gp_a2
    s1 = simple_module(alg, "e1")
    ap = right_gp_approximation(s1, gp)
    assert ap.is_surjective()
    assert ap.source.dim == 2  # the length-two projective


def test_right_approximation_demands_completeness(gp_a2):
    alg, gp = gp_a2
    partial = GpClassification(
        algebra=alg,
        dim_bound=gp.dim_bound,
        modules=gp.modules,
        complete=False,
        report=gp.report,
        notes=(),
    )
    with pytest.raises(ValidationError):
        right_gp_approximation(simple_module(alg, "e1"), partial)


def test_proper_presentation_of_projective_is_trivial(gp_a2, gp_dual):
    for alg, gp in (gp_a2, gp_dual):
        reg = regular_module(alg)
        pres = proper_gp_presentation(reg, gp)
        assert pres.kind == "gorenstein_projective"
        assert pres.map.source.dim == 0
        assert pres.map.target.dim == reg.dim


def test_proper_presentation_of_simple_matches_minimal(gp_a2):
    alg, gp = gp_a2
    pres = proper_gp_presentation(simple_module(alg, "e1"), gp)
    assert pres.map.source.dim == 1
    assert pres.map.target.dim == 2


def test_proper_presentation_of_gp_simple_is_trivial(gp_dual):
    alg, gp = gp_dual
    pres = proper_gp_presentation(simple_module(alg, "ev"), gp)
    assert pres.map.source.dim == 0
    assert pres.map.target.dim == 1


def test_proper_presentations_are_relatively_exact(gp_a2, gp_dual):
    for alg, gp in (gp_a2, gp_dual):
        for m in enumerate_indecomposables(alg, 3):
            pres = proper_gp_presentation(m, gp)
            assert bool(is_g_exact((pres.map, pres.coker_map), gp))


# ---------------------------------------------------------------------------
# Relative exactness.
# ---------------------------------------------------------------------------


def test_split_sequences_are_g_exact(gp_dual):
    alg, gp = gp_dual
    k = simple_module(alg, "ev")
    reg = regular_module(alg)
    total, injections, projections = direct_sum([k, reg], algebra=alg)
    assert bool(is_g_exact((injections[0], projections[1]), gp))


def test_socle_sequence_is_not_g_exact(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    xcols = reg.radical_columns()
    _, inc = submodule(reg, xcols)
    _, proj = quotient_module(reg, xcols)
    res = is_g_exact((inc, proj), gp)
    assert not bool(res)
    assert res.witness["gp_dimension_vector"] == {"ev": 1}
    assert res.witness["stage"] == "end_surjectivity"


def test_ordinary_exactness_failure_raises_distinct_error(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    ident = ModuleMap(reg, reg, Matrix.identity(alg.field, reg.dim))
    with pytest.raises(ValidationError, match="ordinary"):
        is_g_exact((ident, ident), gp)


def test_g_exact_over_hereditary_equals_exact(gp_a2):
    alg, gp = gp_a2
    s1 = simple_module(alg, "e1")
    pres = proper_gp_presentation(s1, gp)
    assert bool(is_g_exact((pres.map, pres.coker_map), gp))


# ---------------------------------------------------------------------------
# Relative derived functors.
# ---------------------------------------------------------------------------


def test_gext_of_gp_module_vanishes(gp_dual):
    alg, gp = gp_dual
    k = simple_module(alg, "ev")
    assert gext_dim(k, k, 1, gp) == 0
    assert gext_dim(regular_module(alg), k, 1, gp) == 0


def test_gext_equals_ext_over_hereditary(gp_a2):
    alg, gp = gp_a2
    pool = enumerate_indecomposables(alg, 3)
    for m in pool:
        for n in pool:
            for i in (1, 2, 3):
                assert gext_dim(m, n, i, gp) == ext_dim(m, n, i)


def test_gext_degree_zero_is_hom(gp_a2):
    alg, gp = gp_a2
    s1 = simple_module(alg, "e1")
    assert gext_dim(s1, s1, 0, gp) == hom_dim(s1, s1)


# ---------------------------------------------------------------------------
# Relative generation and membership.
# ---------------------------------------------------------------------------


def test_gen_g_oracles(gp_dual):
    alg, gp = gp_dual
    k = simple_module(alg, "ev")
    reg = regular_module(alg)
    both = direct_sum([reg, k], algebra=alg)[0]
    assert gen_g_contains(k, k, gp)
    assert not gen_g_contains(reg, k, gp)
    assert gen_g_contains(both, k, gp)
    assert gen_g_contains(reg, reg, gp)


def test_gen_g_over_self_injective_is_summand(gp_dual):
    """Relative epis split over a self-injective algebra, so relative
    generation collapses to being a direct summand of a finite sum."""
    from silting_forge.modules import decompose

    alg, gp = gp_dual
    pool = enumerate_indecomposables(alg, 4)
    sums = [direct_sum(parts, algebra=alg)[0] for parts in [[p] for p in pool] + [[a, b] for a in pool for b in pool]]
    for t in sums:
        t_classes = [p for p, _, _ in decompose(t)]
        for m in pool:
            summand = any(is_isomorphic(m, p) is not None for p in t_classes)
            assert gen_g_contains(t, m, gp) == summand


def test_d_theta_oracles(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    k = simple_module(alg, "ev")
    # Zero-source presentation: everything belongs.
    auto = proper_gp_presentation(reg, gp)
    assert d_theta_contains(auto, k) and d_theta_contains(auto, reg)
    # Multiplication by the radical generator: nothing nonzero belongs.
    xmap = ModuleMap(reg, reg, reg.action["x"])
    coker, cmap = map_spaces(xmap)["cokernel"]
    theta = Presentation(
        kind="gorenstein_projective", map=xmap, cokernel=coker, coker_map=cmap, certificates={}
    )
    assert not d_theta_contains(theta, k)
    assert not d_theta_contains(theta, reg)
    assert d_theta_contains(theta, zero_module(alg))


def test_d_theta_rejects_projective_kind(gp_a2):
    alg, gp = gp_a2
    from silting_forge.modules import minimal_projective_presentation

    sigma = minimal_projective_presentation(simple_module(alg, "e1"))
    with pytest.raises(ValidationError):
        d_theta_contains(sigma, simple_module(alg, "e1"))


def test_gen_g_implies_d_theta_on_probes(gp_a2, gp_dual):
    for alg, gp in (gp_a2, gp_dual):
        pool = enumerate_indecomposables(alg, 3)
        for t in pool:
            theta = proper_gp_presentation(t, gp)
            if not d_theta_contains(theta, t):
                continue
            for m in pool:
                if gen_g_contains(t, m, gp):
                    assert d_theta_contains(theta, m)


# ---------------------------------------------------------------------------
# Certified relative checks.
# ---------------------------------------------------------------------------


def test_check_add_generator_over_self_injective(gp_dual):
    alg, gp = gp_dual
    t = direct_sum([regular_module(alg), simple_module(alg, "ev")], algebra=alg)[0]
    cert = gorenstein_silting_check(t, "AUTO", gp)
    assert cert.verdict == "gorenstein_silting"
    assert cert.mismatch is None
    assert all(bool(a) for a in cert.approximations)


def test_check_regular_over_self_injective_fails(gp_dual):
    alg, gp = gp_dual
    cert = gorenstein_silting_check(regular_module(alg), "AUTO", gp)
    assert cert.verdict == "not"
    assert cert.mismatch is not None
    assert cert.mismatch["dimension_vector"] == {"ev": 1}
    assert cert.mismatch["in_d_theta"] and not cert.mismatch["in_gen_g"]


def test_check_regular_over_hereditary(gp_a2):
    alg, gp = gp_a2
    cert = gorenstein_silting_check(regular_module(alg), "AUTO", gp)
    assert cert.verdict == "gorenstein_silting"


def test_check_partial_only_without_separating_probes(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    cert = gorenstein_silting_check(reg, "AUTO", gp, probe=[reg])
    assert cert.verdict == "partial_only"
    assert cert.mismatch is None
    assert not all(bool(a) for a in cert.approximations)


def test_check_carries_coproduct_note(gp_dual):
    alg, gp = gp_dual
    t = direct_sum([regular_module(alg), simple_module(alg, "ev")], algebra=alg)[0]
    cert = gorenstein_silting_check(t, "AUTO", gp)
    assert any("coproduct closure" in n for n in cert.notes)
    cert.to_json()


# ---------------------------------------------------------------------------
# Left approximation sequences.
# ---------------------------------------------------------------------------


def test_sequence_for_module_already_in_add(gp_dual):
    alg, gp = gp_dual
    t = direct_sum([regular_module(alg), simple_module(alg, "ev")], algebra=alg)[0]
    theta = proper_gp_presentation(t, gp)
    for g in gp.modules:
        seq = left_approximation_sequence(g, t, theta, gp)
        assert seq.found


def test_sequence_canonical_example(gp_a2):
    alg, gp = gp_a2
    projs = {lbl: p for p, lbl in indecomposable_projectives(alg)}
    t = direct_sum([simple_module(alg, "e1"), projs["e1"]], algebra=alg)[0]
    theta = proper_gp_presentation(t, gp)
    seq = left_approximation_sequence(projs["e2"], t, theta, gp)
    assert seq.found
    assert seq.detail["middle_dim"] == 2
    assert seq.detail["end_dim"] == 1
    assert bool(is_g_exact((seq.phi, seq.psi), gp))


def test_sequence_none_is_a_value(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    k = simple_module(alg, "ev")
    theta = proper_gp_presentation(reg, gp)
    seq = left_approximation_sequence(k, reg, theta, gp)
    assert not seq.found
    assert seq.search_bound >= 1
    assert seq.to_json()["found"] is False


# ---------------------------------------------------------------------------
# Existential presentation search.
# ---------------------------------------------------------------------------


def test_find_presentation_negative_and_positive(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    assert find_gorenstein_silting_presentation(reg, gp) is None
    t = direct_sum([reg, simple_module(alg, "ev")], algebra=alg)[0]
    found = find_gorenstein_silting_presentation(t, gp)
    assert found is not None
    theta, cert = found
    assert cert.verdict == "gorenstein_silting"


def test_find_presentation_zero_module(gp_dual):
    """The zero module is certified through a pure complement presentation."""
    alg, gp = gp_dual
    z = zero_module(alg)
    found = find_gorenstein_silting_presentation(z, gp)
    assert found is not None
    theta, cert = found
    assert cert.verdict == "gorenstein_silting"
    assert theta.map.source.dim > 0


def test_zero_target_presentation_class(gp_dual):
    alg, gp = gp_dual
    reg = regular_module(alg)
    k = simple_module(alg, "ev")
    theta = zero_target_presentation(reg, alg)
    # Class = modules receiving no maps from the regular module = zero only.
    assert not d_theta_contains(theta, k)
    assert d_theta_contains(theta, zero_module(alg))
