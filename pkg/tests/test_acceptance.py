"""Acceptance criteria 1-8.

Each ``test_criterion_N`` prints ``PASS criterion N`` or ``FAIL criterion N``
(see conftest.py for the summary block).  Arithmetic is exact, so every
comparison is an equality; runtime bounds are asserted where stated.
"""

import random
import time
from fractions import Fraction
from itertools import product

from cellalg import (
    blocks,
    blocks_via_localization,
    build_bubble,
    build_matrix_algebra,
    build_multicolour_partition,
    build_quiver_example,
    build_tl,
    cell_module,
    check_gram_direct_sum,
    check_localization_iso,
    check_radical_decomposition,
    check_semisimple_equivalence,
    check_simple_dim_sum,
    decomposition_matrix,
    gram_matrix,
    is_semisimple,
    jacobson_radical,
    lambda_zero,
    localize,
    loewy_series,
    oracle_semisimple_partition,
    validate_cell_datum,
)
from cellalg.cellular_core import gram_entry, hom_space
from cellalg.diagram_algebras import check_bubble_localization, check_partition_idempotents
from cellalg.idempotent_split import check_hom_transport, extend_hom, restrict_hom, v_module

from oracles import det, multicolour_partition_dim, tl_gram

TL_DELTAS = [0, 1, -1, 2, 3, Fraction(1, 2)]
BUBBLE_DELTAS = [(3, 5), (1, 3), (0, 1)]


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_1():
    with Clock() as clk:
        d, dec = build_quiver_example()
        assert lambda_zero(d) == ["l1", "l2"]
        assert gram_matrix(d, "l0").matrix.tolist() == [[0]]
        assert gram_matrix(d, "l1").matrix.tolist() == [[1, 0], [0, 0]]
        assert gram_matrix(d, "l2").matrix.tolist() == [[1]]
        # Delta(l0) is simple although l0 has a zero form
        assert cell_module(d, "l0").dim == 1
        rad = gram_matrix(d, "l1").radical
        assert rad.dim == 1
        h = hom_space(d, cell_module(d, "l2"), cell_module(d, "l1"))
        assert h.dim == 1
        theta = h.basis[0]
        image = [theta[r, 0] for r in range(theta.rows)]
        assert any(image) and image in rad
        # the radical sits in colour 2, where it is V(l2, 2) = Delta(l2)
        assert dec.T("l1", 2) == [2] and rad.basis[0][d.t_pos["l1"][2]] != 0
        assert restrict_hom(dec, theta, "l2", "l1", 2).matrix.rank() == 1
        b = blocks(d)
        assert ["l1", "l2"] in b.blocks
        assert dec.lambda_sets == {1: ["l0", "l1"], 2: ["l1", "l2"]}
    assert clk.elapsed < 1.0


def test_criterion_2():
    with Clock() as clk:
        for n in range(1, 6):
            d, dec = build_matrix_algebra(n)
            ss = is_semisimple(d)
            assert ss and all(v == 1 for v in ss.determinants.values())
            assert jacobson_radical(d).dim == 0
            for i in dec.colours:
                loc = localize(dec, i).datum
                assert loc.dim == 1 and loc.unit == loc.basis_element(0)
            rep = check_semisimple_equivalence(dec)
            assert rep.ok and rep.data["parent_semisimple"]
    assert clk.elapsed < 5.0


def test_criterion_3():
    with Clock() as clk:
        for n in range(7):
            for delta in TL_DELTAS:
                d = build_tl(n, delta)
                assert bool(is_semisimple(d)) == (jacobson_radical(d).dim == 0), (n, delta)
        for delta in TL_DELTAS + [Fraction(-7, 3), 10]:
            g = gram_matrix(build_tl(3, delta), 1)
            assert g.det == Fraction(delta) ** 2 - 1 == det(tl_gram(3, 1, delta)[1])
        assert not is_semisimple(build_tl(3, 1))
        assert is_semisimple(build_tl(3, 3))
    assert clk.elapsed < 30.0


def bubble_instances():
    for n in range(1, 5):
        for deltas in BUBBLE_DELTAS:
            yield n, deltas, build_bubble(n, 2, list(deltas))


def test_criterion_4():
    with Clock() as clk:
        for n, deltas, (d, dec) in bubble_instances():
            lz = lambda_zero(d)
            for lam in d.labels:
                assert check_gram_direct_sum(dec, lam).ok, (n, deltas, lam)
                assert check_radical_decomposition(dec, lam).ok, (n, deltas, lam)
                if lam in lz:
                    assert check_simple_dim_sum(dec, lam).ok, (n, deltas, lam)
            rep = check_semisimple_equivalence(dec)
            assert rep.ok, (n, deltas)
            for colouring in product(range(2), repeat=n):
                loc = check_bubble_localization(n, 2, list(deltas), colouring)
                assert loc.ok and loc.data["local_dim"] == loc.data["tensor_dim"], (n, deltas, colouring)
            if deltas == (3, 5):
                assert rep.data["parent_semisimple"]
    assert clk.elapsed < 60.0


def test_criterion_5():
    with Clock() as clk:
        compared = 0
        for n, deltas, (d, dec) in bubble_instances():
            res = blocks_via_localization(dec)
            if len(lambda_zero(d)) == len(d.labels):
                assert not res.advisory
                assert res.partition == blocks(d), (n, deltas)
                compared += 1
            else:
                assert res.advisory
        assert compared > 0
        _, dec = build_bubble(3, 2, [1, 3])
        merged = blocks_via_localization(dec).partition.block_of((3, 0))
        assert (1, 0) in merged
    assert clk.elapsed < 60.0


def test_criterion_6():
    with Clock() as clk:
        alg, es = build_multicolour_partition(2, 2, [5, 7])
        assert alg.dim == 94 == multicolour_partition_dim(2, 2)
        assert len(es) == 4
        assert check_partition_idempotents(alg, es).ok
        for a, b in product(es, repeat=2):
            assert es[a] * es[b] == (es[a] if a == b else alg.zero())
        for colouring in product(range(2), repeat=2):
            assert check_localization_iso(2, 2, [5, 7], colouring).ok
        v = oracle_semisimple_partition(2, 2, [5, 7])
        assert v.semisimple and v.sufficient_condition and v.consistent
        assert not oracle_semisimple_partition(1, 1, [0]).semisimple
        # the "only if" direction is not asserted: P_{1,1}(1) is recorded, not judged
        assert oracle_semisimple_partition(1, 1, [1]).consistent
    assert clk.elapsed < 120.0


def cellular_instances():
    yield build_quiver_example()
    for n in range(1, 6):
        yield build_matrix_algebra(n)
    for n in range(7):
        for delta in TL_DELTAS:
            yield build_tl(n, delta), None
    for _, _, pair in bubble_instances():
        yield pair


def test_criterion_7():
    rng = random.Random(7)
    count = 0
    for d, dec in cellular_instances():
        count += 1
        rep = validate_cell_datum(d, samples=1500)
        assert rep.ok, (d.name, rep.violations)
        assert d.dim == sum(len(ts) ** 2 for ts in d.t_sets.values())
        for lam in d.labels:
            ts = d.t_sets[lam]
            g = gram_matrix(d, lam).matrix
            assert g == g.transpose()
            for _ in range(50):
                s, t, u, b = (rng.choice(ts) for _ in range(4))
                assert gram_entry(d, lam, s, t, u, b) == g[d.t_pos[lam][s], d.t_pos[lam][t]]
            m = cell_module(d, lam)
            for _ in range(100):
                a = d.basis_element(rng.randrange(d.dim))
                c = d.basis_element(rng.randrange(d.dim))
                assert m.matrix(a * c) == m.matrix(a) @ m.matrix(c)
        if dec is None:
            continue
        for lam in d.labels:
            for mu in d.labels:
                for i in dec.colours:
                    if lam not in dec.lambda_sets[i] or mu not in dec.lambda_sets[i]:
                        continue
                    local = hom_space(
                        localize(dec, i).datum, v_module(dec, lam, i), v_module(dec, mu, i)
                    )
                    for tau in local.basis:
                        ext = extend_hom(dec, tau, lam, mu, i).matrix
                        assert restrict_hom(dec, ext, lam, mu, i).matrix == tau
        if d.dim <= 120:
            for lam in d.labels:
                for mu in d.labels:
                    assert check_hom_transport(dec, lam, mu).ok
    assert count == 1 + 5 + 7 * len(TL_DELTAS) + 4 * len(BUBBLE_DELTAS)


def test_criterion_8():
    reported = {}
    for d, _ in cellular_instances():
        if d.dim > 120:
            continue
        D = decomposition_matrix(d)
        for mu in D.cols:
            assert D.entry(mu, mu) == 1
        total = {}
        for layer in loewy_series(d, d.regular_module()):
            for mu, k in layer.items():
                total[mu] = total.get(mu, 0) + k
        for mu in D.cols:
            want = sum(len(d.t_sets[lam]) * D.entry(lam, mu) for lam in D.rows)
            assert total.get(mu, 0) == want, (d.name, mu)
        tri = D.triangularity
        assert {"nonzero_implies_lam_le_mu", "nonzero_implies_lam_ge_mu"} <= set(tri)
        reported[d.name] = (tri["nonzero_implies_lam_le_mu"], tri["nonzero_implies_lam_ge_mu"])
    # the quiver's linkage goes downward in the declared order
    assert reported["quiver"] == (False, True)
