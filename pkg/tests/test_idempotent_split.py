from fractions import Fraction

import pytest

from cellalg import (
    GF,
    ExactMatrix,
    IdempotentDecomposition,
    blocks,
    blocks_via_localization,
    build_bubble,
    build_matrix_algebra,
    build_quiver_example,
    build_tl,
    cell_module,
    check_assumptions,
    check_gram_direct_sum,
    check_radical_decomposition,
    check_semisimple_equivalence,
    check_simple_dim_sum,
    colour_of,
    extend_hom,
    gram_block,
    gram_matrix,
    hom_space,
    is_semisimple,
    lambda_zero,
    localize,
    restrict_hom,
    simple_module,
    v_module,
    validate_cell_datum,
)
from cellalg.diagram_algebras import quiver_element
from cellalg.errors import AssumptionViolation, DomainError, UnsupportedOperation
from cellalg.idempotent_split import (
    check_cell_module_splitting,
    check_hom_transport,
    check_hom_vanishing,
    check_local_cellularity,
    decompose,
)

from oracles import bubble_form, rank


def decompositions():
    yield "quiver", build_quiver_example()[1]
    yield "M3", build_matrix_algebra(3)[1]
    for deltas in ([0, 1], [3, 5], [1, 1], [0, 0]):
        yield f"bubble22{tuple(deltas)}", build_bubble(2, 2, deltas)[1]
    for deltas in ([1, 3], [2, Fraction(1, 2)], [0, 1]):
        yield f"bubble32{tuple(deltas)}", build_bubble(3, 2, deltas)[1]
    yield "bubble23(0,1,2)", build_bubble(2, 3, [0, 1, 2])[1]
    tl = build_tl(4, 1)
    yield "TL4(1) trivial", IdempotentDecomposition(tl, {0: tl.unit})


DECS = dict(decompositions())


# -- assumptions and colours -------------------------------------------------


def test_quiver_family_is_admissible():
    d, dec = build_quiver_example()
    rep = check_assumptions(d, dec.idempotents)
    assert rep.ok, rep.violations


def test_non_star_fixed_family_fails_a4():
    d, _ = build_quiver_example()
    e1, e2, a12 = (quiver_element(d, x) for x in ("e1", "e2", "a12"))
    es = {1: e1 + a12, 2: e2 - a12}
    # still orthogonal idempotents summing to 1
    assert es[1] * es[1] == es[1] and es[1] * es[2] == d.zero()
    rep = check_assumptions(d, es)
    assert not rep.ok
    assert any("A4" in v for v in rep.violations)
    with pytest.raises(AssumptionViolation):
        decompose(d, es, verify=True)


def test_other_assumption_failures():
    d, dec = build_quiver_example()
    e1, e2 = dec.idempotents[1], dec.idempotents[2]
    assert any("A1" in v for v in check_assumptions(d, {}).violations)
    assert any("sum to the unit" in v for v in check_assumptions(d, {1: e1}).violations)
    assert not check_assumptions(d, {1: e1, 2: e2, 3: d.zero()}).ok
    assert not check_assumptions(d, {1: e1 + e2, 2: e2}).ok


def test_colour_of_examples():
    _, dec = build_quiver_example()
    assert colour_of(dec, "l1", 1) == 1
    assert colour_of(dec, "l1", 2) == 2
    _, dec = build_matrix_algebra(2)
    assert [colour_of(dec, 2, k) for k in (1, 2)] == [1, 2]


@pytest.mark.parametrize("name", sorted(DECS))
def test_colour_classes(name):
    dec = DECS[name]
    d = dec.parent
    for lam in d.labels:
        parts = [dec.T(lam, i) for i in dec.colours]
        assert sorted(t for p in parts for t in p) == sorted(d.t_sets[lam])
        for i in dec.colours:
            e = dec.idempotents[i]
            for t in dec.T(lam, i):
                for s in d.t_sets[lam]:
                    # e_i fixes c[t,s] from the left and c[s,t] from the right
                    assert e * d.c(lam, t, s) == d.c(lam, t, s)
                    assert d.c(lam, s, t) * e == d.c(lam, s, t)
    assert all(dec.lambda_sets[i] for i in dec.colours)


# -- localization ---------------------------------------------------------------


def test_localize_examples():
    _, dec = build_quiver_example()
    loc = localize(dec, 1)
    d = dec.parent
    assert list(loc.datum.labels) == ["l0", "l1"]
    got = sorted(d.basis[g] for g in loc.embedding)
    want = sorted(d.basis[d.idx(*t)] for t in [("l1", 1, 1), ("l0", 1, 1)])
    assert got == want
    assert d.basis_element(loc.embedding[0]) in (quiver_element(d, "a12a21"), quiver_element(d, "e1"))
    _, mdec = build_matrix_algebra(3)
    for k in (1, 2, 3):
        assert localize(mdec, k).datum.dim == 1
    _, bdec = build_bubble(2, 2, [Fraction(2), Fraction(7)])
    assert localize(bdec, (0, 0)).datum.dim == 2


@pytest.mark.parametrize("name", sorted(DECS))
def test_local_data_are_cellular(name):
    rep = check_local_cellularity(DECS[name], samples=500)
    assert rep.ok, rep.violations


@pytest.mark.parametrize("name", sorted(DECS))
def test_local_unit_and_structure_constants(name):
    dec = DECS[name]
    d = dec.parent
    for i in dec.colours:
        loc = localize(dec, i)
        ld = loc.datum
        unit = {loc.embedding[k]: c for k, c in ld.unit.coeffs.items()}
        assert unit == dec.idempotents[i].coeffs
        for a in range(ld.dim):
            for b in range(ld.dim):
                lhs = {loc.embedding[k]: c for k, c in ld.product(a, b)}
                assert lhs == dict(d.product(loc.embedding[a], loc.embedding[b]))


def test_v_module_examples():
    _, dec = build_quiver_example()
    assert v_module(dec, "l1", 1).dim == 1 and dec.T("l1", 1) == [1]
    assert v_module(dec, "l1", 2).dim == 1 and dec.T("l1", 2) == [2]
    assert v_module(dec, "l2", 1).dim == 0
    for name, dec in DECS.items():
        for lam in dec.parent.labels:
            total = sum(v_module(dec, lam, i).dim for i in dec.colours)
            assert total == len(dec.parent.t_sets[lam])


def test_gram_block_examples():
    _, bdec = build_bubble(2, 2, [Fraction(2), Fraction(7)])
    assert gram_block(bdec, (0, 0), (0, 0)).tolist() == [[2]]
    assert gram_block(bdec, (0, 0), (1, 1)).tolist() == [[7]]
    _, dec = build_quiver_example()
    assert gram_block(dec, "l1", 1).tolist() == [[1]]
    assert gram_block(dec, "l1", 2).tolist() == [[0]]
    with pytest.raises(DomainError):
        gram_block(dec, "l2", 1)
    _, mdec = build_matrix_algebra(3)
    assert all(gram_block(mdec, 3, k).tolist() == [[1]] for k in (1, 2, 3))


@pytest.mark.parametrize("n,deltas", [(2, (0, 1)), (2, (3, 5)), (3, (1, 3)), (3, (2, Fraction(1, 2)))])
def test_bubble_gram_matches_coloured_strand_walk(n, deltas):
    d, _ = build_bubble(n, 2, list(deltas))
    for lam in d.labels:
        ts = d.t_sets[lam]
        want = [[bubble_form(s, t, deltas) for t in ts] for s in ts]
        assert gram_matrix(d, lam).matrix.tolist() == want


# -- decomposition theorems ----------------------------------------------------


def test_gram_direct_sum_examples():
    _, bdec = build_bubble(2, 2, [0, 1])
    rep = check_gram_direct_sum(bdec, (0, 0))
    assert rep.ok and gram_matrix(bdec.parent, (0, 0)).matrix.tolist() == [[0, 0], [0, 1]]
    _, dec = build_quiver_example()
    assert check_gram_direct_sum(dec, "l1").ok
    assert check_gram_direct_sum(dec, "l0").ok and dec.i_sets["l0"] == [1]


@pytest.mark.parametrize("name", sorted(DECS))
def test_per_cell_theorems(name):
    dec = DECS[name]
    d = dec.parent
    lz = lambda_zero(d)
    for lam in d.labels:
        for check in (check_gram_direct_sum, check_radical_decomposition, check_cell_module_splitting):
            rep = check(dec, lam)
            assert rep.ok, rep.violations
        if lam in lz:
            rep = check_simple_dim_sum(dec, lam)
            assert rep.ok, rep.violations
            # independent count of the local ranks
            local = sum(
                rank(gram_block(dec, lam, i).tolist()) for i in dec.i_sets[lam]
            )
            assert local == gram_matrix(d, lam).rank
            L = simple_module(d, lam)
            for i in dec.colours:
                r = gram_block(dec, lam, i).rank() if i in dec.i_sets[lam] else 0
                assert L.matrix(dec.idempotents[i]).rank() == r
        else:
            with pytest.raises(DomainError):
                check_simple_dim_sum(dec, lam)


def test_radical_decomposition_examples():
    _, dec = build_quiver_example()
    rep = check_radical_decomposition(dec, "l1")
    assert rep.data["radical_dim"] == 1
    assert rep.data["local_radical_dims"] == {"1": 0, "2": 1}
    _, bdec = build_bubble(2, 2, [0, 1])
    rep = check_radical_decomposition(bdec, (0, 0))
    assert rep.data["radical_dim"] == 1 and sorted(rep.data["local_radical_dims"].values()) == [0, 1]


def test_simple_dim_sum_examples():
    _, dec = build_quiver_example()
    assert check_simple_dim_sum(dec, "l1").data["local_ranks"] == {"1": 1, "2": 0}
    _, mdec = build_matrix_algebra(3)
    assert check_simple_dim_sum(mdec, 3).data["simple_dim"] == 3
    _, bdec = build_bubble(2, 2, [3, 5])
    assert check_simple_dim_sum(bdec, (0, 0)).data["simple_dim"] == 2


@pytest.mark.parametrize("name", sorted(DECS))
def test_semisimple_equivalence(name):
    rep = check_semisimple_equivalence(DECS[name])
    assert rep.ok, rep.violations


def test_semisimple_equivalence_examples():
    assert check_semisimple_equivalence(build_matrix_algebra(4)[1]).data["parent_semisimple"]
    rep = check_semisimple_equivalence(build_quiver_example()[1])
    assert rep.data["parent_semisimple"] is False
    assert rep.data["local_semisimple"] == {"1": False, "2": False}
    _, dec = build_quiver_example()
    # e1 A e1 = span{e1, a12a21} with a nilpotent ideal spanned by a12a21
    loc = localize(dec, 1).datum
    assert loc.jacobson_radical().dim == 1
    rep = check_semisimple_equivalence(build_bubble(3, 2, [1, 3])[1])
    assert rep.ok and rep.data["parent_semisimple"] is False


# -- homomorphisms ---------------------------------------------------------------


def test_restrict_and_extend_quiver_radical_embedding():
    d, dec = build_quiver_example()
    h = hom_space(cell_module(d, "l2"), cell_module(d, "l1"))
    assert h.dim == 1
    theta = h.basis[0]
    r2 = restrict_hom(dec, theta, "l2", "l1", 2)
    assert r2.report.ok and not r2.matrix.is_zero()
    r1 = restrict_hom(dec, theta, "l2", "l1", 1)
    assert r1.report.ok and r1.matrix.is_zero()
    ext = extend_hom(dec, r2.matrix, "l2", "l1", 2)
    assert ext.report.ok and ext.matrix == theta
    zero = ExactMatrix.zeros(theta.rows, theta.cols)
    for i in (1, 2):
        assert restrict_hom(dec, zero, "l2", "l1", i).matrix.is_zero()
    tau = ExactMatrix.zeros(1, 1)
    assert extend_hom(dec, tau, "l2", "l1", 2).matrix.is_zero()


def test_local_isomorphism_extends_to_global_map():
    d, dec = build_quiver_example()
    loc = hom_space(v_module(dec, "l2", 2), v_module(dec, "l1", 2))
    assert loc.dim == 1 and loc.basis[0].rank() == 1
    ext = extend_hom(dec, loc.basis[0], "l2", "l1", 2)
    assert ext.report.ok


def test_zero_extension_need_not_intertwine():
    # on M2 the identity of V(2,1) extends by zero to E_11, which is not A-linear
    d, dec = build_matrix_algebra(2)
    ext = extend_hom(dec, ExactMatrix.identity(1), 2, 2, 1)
    assert ext.matrix.tolist() == [[1, 0], [0, 0]]
    assert not ext.report.ok
    rep = check_hom_transport(dec, 2, 2)
    assert rep.ok and rep.data["non_intertwining_extensions"] == 2 and rep.warnings


@pytest.mark.parametrize("name", ["quiver", "M3", "bubble22(0, 1)", "bubble32(1, 3)"])
def test_hom_transport_identities(name):
    dec = DECS[name]
    labels = dec.parent.labels
    for lam in labels:
        for mu in labels:
            rep = check_hom_transport(dec, lam, mu)
            assert rep.ok, rep.violations


def test_hom_vanishing_on_quiver():
    _, dec = build_quiver_example()
    labels = dec.parent.labels
    converse_fails = []
    for lam in labels:
        for mu in labels:
            rep = check_hom_vanishing(dec, lam, mu)
            # a nonzero global map always restricts to a nonzero local one
            assert rep.ok, rep.violations
            if not rep.data["equivalence_holds"]:
                converse_fails.append((lam, mu))
                assert rep.data["global_dim"] == 0 and rep.warnings
    # brute force: V(l0,1) ~ V(l1,1) and V(l1,2) ~ V(l2,2) locally, yet no global map
    assert converse_fails == [("l0", "l1"), ("l1", "l2")]


# -- blocks ------------------------------------------------------------------------


def test_blocks_via_localization_examples():
    res = blocks_via_localization(build_quiver_example()[1])
    assert res.advisory and res.warnings
    _, bdec = build_bubble(2, 2, [3, 5])
    res = blocks_via_localization(bdec)
    assert not res.advisory
    assert res.partition.cell_blocks == [[lam] for lam in bdec.parent.labels]
    assert res.partition == blocks(bdec.parent)
    _, bdec = build_bubble(3, 2, [1, 3])
    res = blocks_via_localization(bdec)
    assert not res.advisory
    assert res.partition == blocks(bdec.parent)
    assert [(3, 0), (1, 0)] in res.partition.cell_blocks


@pytest.mark.parametrize("name", sorted(DECS))
def test_localized_blocks_agree_when_all_cells_have_nonzero_form(name):
    dec = DECS[name]
    res = blocks_via_localization(dec)
    if len(lambda_zero(dec.parent)) == len(dec.parent.labels):
        assert not res.advisory
        assert res.partition == blocks(dec.parent)
    else:
        assert res.advisory


def test_localized_blocks_need_char_zero():
    _, dec = build_bubble(2, 2, [1, 2], field=GF(5))
    with pytest.raises(UnsupportedOperation):
        blocks_via_localization(dec)
    # Gram-level theorems still hold over GF(5)
    for lam in dec.parent.labels:
        assert check_gram_direct_sum(dec, lam).ok
    assert check_semisimple_equivalence(dec).ok


def test_localized_datum_validates_standalone():
    _, dec = build_bubble(3, 2, [1, 3])
    for i in dec.colours:
        assert validate_cell_datum(localize(dec, i).datum, samples=300).ok
    assert is_semisimple(localize(dec, (1, 1, 1)).datum)
