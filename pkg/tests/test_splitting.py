import random

import pytest

from repcount import (
    INFINITE,
    AdaptedSplitting,
    DocumentError,
    FreeHom,
    InvalidSplittingError,
    Word,
    abelianize,
    assembled_word_map,
    det,
    format_splitting_document,
    glue_matrix,
    homology_of_M,
    mayer_vietoris_matrix,
    pair_cohomology,
    parse_splitting_document,
    parse_word,
    stabilize,
    unitary,
    validate,
    validation_warnings,
)
from support import (
    DET6_DOCUMENT,
    TRIVIAL_DOCUMENT,
    det6_splitting,
    random_t0_splitting,
    trivial_splitting,
)


class TestValidate:
    def test_trivial_valid(self):
        s = trivial_splitting()
        assert validate(s) == []
        assert s.T == 0

    def test_g1_exceeds_h1(self):
        s = AdaptedSplitting(
            h1=1, h2=1, u=1, g1=2,
            k_map=FreeHom(1, 1, (Word(((1, 1),)),)),
            l_map=FreeHom(1, 1, (Word(((1, 1),)),)),
        )
        assert any("S1 generators exceed H1 rank" in v for v in validate(s))

    def test_spec_arithmetic_instance(self):
        # (2 + 2 - 3) - 1 == 0
        s = AdaptedSplitting(
            h1=2, h2=2, u=3, g1=1,
            k_map=FreeHom(3, 2, tuple(parse_word(w) for w in ("g1", "g2", "g1 g2"))),
            l_map=FreeHom(3, 2, tuple(parse_word(w) for w in ("g1", "g2", "g2 g1"))),
        )
        assert validate(s) == []
        assert s.T == 0

    def test_rank_mismatch_reported(self):
        s = AdaptedSplitting(
            h1=2, h2=1, u=2, g1=1,
            k_map=FreeHom(2, 1, (Word(((1, 1),)), Word())),   # target rank 1 != h1
            l_map=FreeHom(2, 1, (Word(((1, 1),)), Word())),
        )
        assert any("k_map target rank" in v for v in validate(s))

    def test_negative_t(self):
        s = AdaptedSplitting(
            h1=1, h2=1, u=3, g1=1,
            k_map=FreeHom(3, 1, (Word(),) * 3),
            l_map=FreeHom(3, 1, (Word(),) * 3),
        )
        assert any("negative codimension" in v for v in validate(s))

    def test_odd_positive_t_is_warning_not_violation(self):
        s = AdaptedSplitting(
            h1=2, h2=1, u=1, g1=1,
            k_map=FreeHom(1, 2, (Word(((1, 1),)),)),
            l_map=FreeHom(1, 1, (Word(((1, 1),)),)),
        )
        assert s.T == 1
        assert validate(s) == []
        assert validation_warnings(s) == ["odd positive codimension T=1"]

    def test_u_hat_genus_defaults_to_u(self):
        s = trivial_splitting()
        assert s.u_hat_genus == s.u


class TestGlueMatrix:
    def test_identity_gluing_h1_equals_g1(self):
        s = trivial_splitting()
        assert glue_matrix(s).data == ((-1,),)

    def test_hand_computed_example(self):
        s = AdaptedSplitting(
            h1=2, h2=1, u=2, g1=1,
            k_map=FreeHom(2, 2, (parse_word("g2"), parse_word("g2^3"))),
            l_map=FreeHom(2, 1, (parse_word("g1"), parse_word("g1^2"))),
        )
        m = glue_matrix(s)
        assert m.data == ((1, -1), (3, -2))
        assert det(m) == 1

    def test_k_image_in_surface_generators_zeroes_block(self):
        s = AdaptedSplitting(
            h1=2, h2=1, u=2, g1=1,
            k_map=FreeHom(2, 2, (parse_word("g1"), parse_word("g1^2"))),
            l_map=FreeHom(2, 1, (parse_word("g1"), parse_word("g1"))),
        )
        m = glue_matrix(s)
        assert all(m[i, 0] == 0 for i in range(2))
        assert det(m) == 0

    def test_shape(self):
        rng = random.Random(1)
        for _ in range(20):
            s = random_t0_splitting(rng)
            m = glue_matrix(s)
            assert (m.rows, m.cols) == (s.u, (s.h1 - s.g1) + s.h2)

    def test_invalid_rejected(self):
        s = AdaptedSplitting(
            h1=1, h2=1, u=1, g1=2,
            k_map=FreeHom(1, 1, (Word(((1, 1),)),)),
            l_map=FreeHom(1, 1, (Word(((1, 1),)),)),
        )
        with pytest.raises(InvalidSplittingError):
            glue_matrix(s)


class TestHomology:
    def test_trivial_cylinder_like(self):
        betti1, order = homology_of_M(trivial_splitting())
        assert betti1 == 1  # == g1
        assert order == 1

    def test_torsion_instance(self):
        # (b - c) with invariant factors (1, 2): H^2 of order 2
        s = AdaptedSplitting(
            h1=1, h2=1, u=2, g1=0,
            k_map=FreeHom(2, 1, (parse_word("g1^2"), Word())),
            l_map=FreeHom(2, 1, (Word(), parse_word("g1^-1"))),
        )
        assert validate(s) == [] and s.T == 0
        betti1, order = homology_of_M(s)
        assert order == 2
        assert betti1 == 0

    def test_rank_deficient_gives_infinite(self):
        s = AdaptedSplitting(
            h1=1, h2=1, u=1, g1=1,
            k_map=FreeHom(1, 1, (Word(),)),
            l_map=FreeHom(1, 1, (Word(),)),
        )
        _, order = homology_of_M(s)
        assert order is INFINITE


class TestPairCohomology:
    def test_identity_glued(self):
        rep = pair_cohomology(trivial_splitting())
        assert rep.order_H2_pair == 1
        assert rep.restriction_iso is True

    def test_det6_instance_both_pipelines(self):
        s = det6_splitting()
        rep = pair_cohomology(s)
        assert rep.order_H2_pair == 6
        assert rep.order_H2_pair == abs(det(glue_matrix(s)))

    def test_rank_deficient(self):
        s = AdaptedSplitting(
            h1=1, h2=1, u=1, g1=1,
            k_map=FreeHom(1, 1, (Word(),)),
            l_map=FreeHom(1, 1, (Word(),)),
        )
        rep = pair_cohomology(s)
        assert rep.restriction_iso is False
        assert rep.order_H2_pair is INFINITE

    def test_det_equals_pair_order_identity(self):
        # det(glue) == |H^2(pair)| as two fully independent code paths
        rng = random.Random(2)
        for _ in range(120):
            s = random_t0_splitting(rng)
            d = abs(det(glue_matrix(s)))
            rep = pair_cohomology(s)
            if rep.order_H2_pair is INFINITE:
                assert d == 0
            else:
                assert d == rep.order_H2_pair


class TestStabilize:
    def test_t_unchanged(self):
        s = trivial_splitting()
        assert stabilize(s).T == s.T

    def test_counts(self):
        s = det6_splitting()
        st = stabilize(s)
        assert (st.h1, st.h2, st.u) == (s.h1 + 1, s.h2, s.u + 1)
        assert st.u_hat_genus == s.u_hat_genus + 1
        assert st.k_map.images[-1] == Word(((s.h1 + 1, 1),))
        assert st.l_map.images[-1] == Word()

    def test_det_preserved_on_random_instances(self):
        rng = random.Random(3)
        for _ in range(50):
            s = random_t0_splitting(rng)
            assert abs(det(glue_matrix(stabilize(s)))) == abs(det(glue_matrix(s)))

    def test_double_stabilization(self):
        s = trivial_splitting()
        ss = stabilize(stabilize(s))
        assert validate(ss) == []
        assert ss.u == s.u + 2

    def test_homology_invariance(self):
        rng = random.Random(4)
        for _ in range(30):
            s = random_t0_splitting(rng)
            assert pair_cohomology(stabilize(s)) == pair_cohomology(s)
            assert homology_of_M(stabilize(s)) == homology_of_M(s)

    def test_validity_preserved(self):
        rng = random.Random(5)
        for _ in range(30):
            s = random_t0_splitting(rng)
            assert validate(stabilize(s)) == []


class TestAssembledWordMap:
    def test_abelianization_matches_glue_transpose(self):
        rng = random.Random(6)
        for _ in range(60):
            s = random_t0_splitting(rng)
            f = assembled_word_map(s)
            assert abelianize(f) == glue_matrix(s).transpose()

    def test_mv_matrix_shape(self):
        s = det6_splitting()
        assert (mayer_vietoris_matrix(s).rows,
                mayer_vietoris_matrix(s).cols) == (s.u, s.h1 + s.h2)


class TestDocumentFormat:
    def test_parse_det6(self):
        s, kind = parse_splitting_document(DET6_DOCUMENT)
        assert s == det6_splitting()
        assert kind == unitary(2)

    def test_roundtrip(self):
        rng = random.Random(7)
        for _ in range(20):
            s = random_t0_splitting(rng)
            text = format_splitting_document(s, unitary(2))
            s2, kind = parse_splitting_document(text)
            assert s2 == s and kind == unitary(2)

    def test_comments_and_blank_lines(self):
        text = "# header\n\n" + TRIVIAL_DOCUMENT + "\n# trailing\n"
        s, _ = parse_splitting_document(text)
        assert s == trivial_splitting()

    @pytest.mark.parametrize("mutation,message", [
        (lambda t: t.replace("group = U", "group = SO"), "group"),
        (lambda t: t.replace("n = 2", "n = x"), "integer"),
        (lambda t: t.replace("k_map = g1\n", ""), "missing required"),
        (lambda t: t + "bogus = 1\n", "unknown field"),
        (lambda t: t + "h1 = 9\n", "duplicate"),
        (lambda t: t.replace("k_map = g1", "k_map = g1 ; g1"), "expected u="),
        (lambda t: t.replace("k_map = g1", "k_map = q1"), "bad word token"),
    ])
    def test_parse_errors(self, mutation, message):
        with pytest.raises(DocumentError, match=message):
            parse_splitting_document(mutation(TRIVIAL_DOCUMENT))

    def test_su_document(self):
        text = TRIVIAL_DOCUMENT.replace("group = U", "group = SU").replace("n = 2", "n = 3")
        _, kind = parse_splitting_document(text)
        assert kind.label == "SU(3)"

    def test_su1_rejected(self):
        text = TRIVIAL_DOCUMENT.replace("group = U", "group = SU").replace("n = 2", "n = 1")
        with pytest.raises(DocumentError):
            parse_splitting_document(text)

    def test_optional_fields(self):
        text = TRIVIAL_DOCUMENT + "u_hat_genus = 5\norientation_reversed = true\n"
        s, _ = parse_splitting_document(text)
        assert s.u_hat_genus == 5
        assert s.orientation_reversed is True
