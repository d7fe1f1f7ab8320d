import json

import pytest

from bruhat01.coincidence import (
    BASE_A, BASE_C, BASE_D, BLOCK_TABLES, CounterexampleCertificate, NoEmbedding,
    complete_embedding, count_embeddings, counterexample, orders_coincide,
    theorem_predicts_coincidence, transport_dual, verify_certificate, verify_theorem,
)
from bruhat01.enumeration import ClassSpec
from bruhat01.matrix import BinaryMatrix, InterchangePos, block_assemble, complement_rotate
from bruhat01.orders import (
    BudgetExhausted, ClassPoset, CoverWitness, bruhat_leq, secondary_leq,
)

M = BinaryMatrix.from_strings
ACD = (BASE_A, BASE_C, BASE_D)

# How complement_rotate acts on the two orders, observed on small classes.
# Recorded behaviour, not a theorem this package relies on.
OBSERVED_DUALITY = {"bruhat": "anti-isomorphism", "secondary": "anti-isomorphism"}


def _classify_map(src: ClassPoset, dst: ClassPoset, kind: str) -> str:
    image = [dst.index[complement_rotate(x)] for x in src.members]
    rel_src = src.relation(kind)
    rel_dst = dst.relation(kind)
    forward = {(image[a], image[c]) for a, c in rel_src}
    if forward == rel_dst:
        return "isomorphism"
    if {(c, a) for a, c in forward} == rel_dst:
        return "anti-isomorphism"
    return "neither"


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(n + 1)] + [(5, 1)])
def test_complement_rotate_behaviour_on_orders(n, k):
    src = ClassPoset.from_spec(ClassSpec.square(n, k))
    dst = ClassPoset.from_spec(ClassSpec.square(n, n - k))
    for kind in ("bruhat", "secondary"):
        observed = _classify_map(src, dst, kind)
        if len(src) == 1:
            assert observed == "isomorphism"
        else:
            assert observed == OBSERVED_DUALITY[kind]


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (4, 0), (3, 1), (5, 1)])
def test_orders_coincide_small(n, k):
    res = orders_coincide(ClassSpec.square(n, k))
    assert res.status == "coincide" and res.witness is None


def test_orders_coincide_finds_witness_on_acd_class():
    res = orders_coincide(ClassSpec((1, 3, 3, 1), (3, 1, 1, 3)))
    assert res.status == "differ"
    X, Y = res.witness
    assert bruhat_leq(X, Y) and not secondary_leq(X, Y, prune=False)


def test_orders_coincide_too_large():
    res = orders_coincide(ClassSpec.square(6, 3))
    assert res.status == "too_large" and res.size == 297200


def test_base_matrices_share_margins():
    for V in ACD:
        assert V.row_sums == (1, 3, 3, 1) and V.col_sums == (3, 1, 1, 3)


@pytest.mark.parametrize("n", [8, 9, 10])
def test_block_tables_complete_into_class(n):
    for V in ACD:
        assert ClassSpec.square(n, 4).contains(block_assemble(V, *BLOCK_TABLES[n]))


@pytest.mark.parametrize("n", [8, 9, 10])
def test_explicit_table_certificates(n):
    cert = counterexample(n, 4)
    assert cert.narrative == "explicit-table"
    assert cert.blocks == BLOCK_TABLES[n]
    assert verify_certificate(cert).passed


def test_embedding_search_six_three():
    G1, G2, G3 = complete_embedding(ACD, 6, 3)
    assert G2 == M(["0110", "0110"])
    assert G1 == M(["11", "00", "00", "11"])
    assert G3 == M(["01", "10"])
    assert count_embeddings(ACD, 6, 3) >= 1
    for V in ACD:
        assert ClassSpec.square(6, 3).contains(block_assemble(V, G1, G2, G3))


def test_embedding_search_eight_four_finds_some_solution():
    blocks = complete_embedding(ACD, 8, 4)
    for V in ACD:
        assert ClassSpec.square(8, 4).contains(block_assemble(V, *blocks))
    cert = counterexample(8, 4, route="embedding-search")
    assert verify_certificate(cert).passed


def test_embedding_search_five_three_has_no_solution():
    assert count_embeddings(ACD, 5, 3) == 0
    with pytest.raises(NoEmbedding):
        complete_embedding(ACD, 5, 3)


def test_six_three_certificate_restricts_to_base_block():
    cert = counterexample(6, 3)
    top = lambda X: BinaryMatrix(tuple(r[:4] for r in X.rows[:4]), 4)
    assert (top(cert.X), top(cert.Y), top(cert.Z)) == (BASE_A, BASE_D, BASE_C)


@pytest.mark.parametrize("n,k", [(6, 3), (7, 3), (7, 4), (8, 4), (8, 5), (9, 6)])
def test_certificate_pairs_are_secondary_incomparable_by_search(n, k):
    cert = counterexample(n, k)
    assert bruhat_leq(cert.X, cert.Y)
    try:
        assert not secondary_leq(cert.X, cert.Y, budget=200_000)
    except BudgetExhausted:
        pytest.skip("search budget too small to decide")
    assert not secondary_leq(cert.Y, cert.X, budget=200_000)


@pytest.mark.parametrize("k", range(5, 11))
def test_general_block_picture_margins(k):
    for n in (2 * k, 2 * k + 1, 2 * k + 2):
        cert = counterexample(n, k, route="general-Vn")
        spec = ClassSpec.square(n, k)
        assert all(spec.contains(x) for x in (cert.X, cert.Y, cert.Z))
        assert verify_certificate(cert).passed


@pytest.mark.parametrize("n0,k", [(6, 3), (7, 4)])
def test_padding_preserves_certificates(n0, k):
    for n in range(max(n0 + 3, 2 * k + 3), n0 + 7):
        cert = counterexample(n, k, route="padding")
        assert verify_certificate(cert).passed


def test_duality_route():
    cert = counterexample(7, 4)
    assert cert.narrative == "duality"
    assert verify_certificate(cert).passed
    base = counterexample(7, 3)
    moved = transport_dual(base)
    assert moved.spec == ClassSpec.square(7, 4)


def test_raw_complement_images_never_form_a_certificate():
    # the complement-rotation image of X <_B Y <_B Z has its common cover at the bottom
    base = counterexample(6, 3)
    X, Y, Z = (complement_rotate(x) for x in (base.X, base.Y, base.Z))
    assert bruhat_leq(Z, Y) and bruhat_leq(Y, X)


def test_counterexample_rejects_coincidence_range():
    for n, k in ((5, 2), (6, 2), (6, 4), (10, 8)):
        with pytest.raises(ValueError):
            counterexample(n, k)
    with pytest.raises(ValueError):
        counterexample(9, 4, route="general-Vn")
    with pytest.raises(ValueError):
        counterexample(9, 4, route="nope")


def test_verify_certificate_rejects_equal_pair():
    cert = counterexample(8, 4)
    bad = CounterexampleCertificate(cert.spec, cert.X, cert.X, cert.Z, cert.cover_XZ,
                                    cert.cover_XZ, "tampered")
    assert not verify_certificate(bad).passed


def test_verify_certificate_rejects_tampering():
    cert = counterexample(8, 4)
    w = cert.cover_YZ
    lying = CoverWitness(w.upper, w.pos, w.lower, (True, False, True, True))
    bad = CounterexampleCertificate(cert.spec, cert.X, cert.Y, cert.Z, cert.cover_XZ, lying, "x")
    report = verify_certificate(bad)
    assert not report.passed
    moved = CoverWitness(w.upper, InterchangePos(1, 2, 1, 2), w.lower, w.conditions)
    bad = CounterexampleCertificate(cert.spec, cert.X, cert.Y, cert.Z, cert.cover_XZ, moved, "x")
    assert not verify_certificate(bad).passed
    other = CounterexampleCertificate(ClassSpec.square(8, 3), cert.X, cert.Y, cert.Z,
                                      cert.cover_XZ, cert.cover_YZ, "x")
    assert not verify_certificate(other).passed


def test_verify_certificate_rejects_non_cover():
    # Z covers X only through an intermediate matrix: the lemma conditions fail
    Z = M(["001", "010", "100"])
    X = M(["100", "010", "001"])
    Y = M(["010", "100", "001"])
    from bruhat01.orders import secondary_cover_check
    w = secondary_cover_check(Z, InterchangePos(1, 3, 1, 3))
    cert = CounterexampleCertificate(ClassSpec.square(3, 1), X, Y, Z, w, w, "x")
    assert not verify_certificate(cert).passed


@pytest.mark.parametrize("n,k", [(8, 4), (6, 3), (12, 5), (7, 4)])
def test_certificate_json_round_trip(n, k):
    cert = counterexample(n, k)
    text = json.dumps(cert.to_json())
    back = CounterexampleCertificate.from_json(text)
    assert back == cert
    assert json.loads(text)["cover_XZ"]["pos"] == list(cert.cover_XZ.pos.as_tuple())


def test_theorem_prediction():
    assert all(theorem_predicts_coincidence(n, k) for n in range(6) for k in range(n + 1))
    assert not theorem_predicts_coincidence(6, 3)
    assert theorem_predicts_coincidence(9, 7)
    assert not theorem_predicts_coincidence(9, 6)


def test_verify_theorem_small():
    rows = verify_theorem(5)
    assert len(rows) == sum(n + 1 for n in range(1, 6))
    assert all(r.method == "exhaustive" and r.observed == "coincide" for r in rows)


def test_verify_theorem_marks_unchecked_cells():
    rows = {(r.n, r.k): r for r in verify_theorem(6)}
    assert rows[6, 3].method == "certificate" and rows[6, 3].observed == "differ"
    assert rows[6, 2].method == "asserted-by-theorem" and rows[6, 2].observed == "not-checked"
    assert rows[6, 1].method == "exhaustive"
    with pytest.raises(ValueError):
        verify_theorem(0)
