"""Sign vector operations, axioms, topes/cocircuits, rank, uniformity."""

import random

import pytest

from omcube.errors import DimensionError, ParseError, PreconditionError
from omcube.signvec import (
    SignSystem,
    SignVector,
    axiom_report,
    compose,
    is_uom_by_cocircuits,
    minor,
    rank_of,
    separator,
    simplify,
    topes_and_cocircuits,
    upset_closure,
)

SV = SignVector.from_string


def system(*rows):
    return SignSystem(len(rows[0]), [SV(r) for r in rows])


def full_system(m):
    vecs = []
    for code in range(3 ** m):
        plus = minus = 0
        c = code
        for i in range(m):
            c, d = divmod(c, 3)
            if d == 1:
                plus |= 1 << i
            elif d == 2:
                minus |= 1 << i
        vecs.append(SignVector(m, plus, minus))
    return SignSystem(m, vecs)


def random_vector(rng, m):
    plus = minus = 0
    for i in range(m):
        r = rng.random()
        if r < 1 / 3:
            plus |= 1 << i
        elif r < 2 / 3:
            minus |= 1 << i
    return SignVector(m, plus, minus)


class TestCompose:
    def test_definition(self):
        assert compose(SV("+0-"), SV("0++")) == SV("++-")

    def test_idempotent_and_identity(self):
        rng = random.Random(0)
        for _ in range(100):
            x = random_vector(rng, 6)
            y = random_vector(rng, 6)
            z = random_vector(rng, 6)
            assert compose(x, x) == x
            assert compose(SignVector.zero(6), y) == y
            assert compose(compose(x, y), z) == compose(x, compose(y, z))
            assert compose(x, y).support == x.support | y.support

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            compose(SV("+-"), SV("+-0"))


class TestSeparator:
    def test_examples(self):
        assert separator(SV("+-"), SV("--")) == 0b01
        assert separator(SV("+-0"), SV("-++")) == 0b011
        x = SV("+0-")
        assert separator(x, x) == 0

    def test_symmetry_and_compose_identity(self):
        rng = random.Random(1)
        for _ in range(100):
            x = random_vector(rng, 6)
            y = random_vector(rng, 6)
            assert separator(x, y) == separator(y, x)
            assert separator(compose(x, y), compose(y, x)) == separator(x, y)


class TestMinor:
    def test_delete_dedups(self):
        out = minor(system("+-0", "++0"), delete=[2])
        assert out == system("+0")

    def test_contract_keeps_zero_support(self):
        out = minor(system("0+-", "++-"), contract=[1])
        assert out == system("+-")

    def test_identity(self):
        s = system("+-0", "0+-")
        assert minor(s) == s

    def test_overlap_rejected(self):
        with pytest.raises(PreconditionError):
            minor(system("+-0"), delete=[1], contract=[1])

    def test_composition_of_minors(self):
        rng = random.Random(4)
        for _ in range(30):
            vecs = [random_vector(rng, 6) for _ in range(8)]
            s = SignSystem(6, vecs)
            one = minor(minor(s, delete=[2], contract=[5]), delete=[1], contract=[3])
            # after removing 2 and 5, old elements 1,3,4,6 -> 1,2,3,4
            two = minor(s, delete=[1, 2], contract=[4, 5])
            assert one == two


class TestUpsetClosure:
    def test_zero_gives_everything(self):
        assert upset_closure(system("00")) == full_system(2)

    def test_tope_is_maximal(self):
        assert upset_closure(system("++")) == system("++")

    def test_partial(self):
        assert upset_closure(system("+0")) == system("+0", "++", "+-")


class TestAxiomReport:
    def test_full_rank_one_system_is_om(self):
        rep = axiom_report(full_system(1))
        assert rep.C and rep.SE and rep.Sym and rep.FS
        assert rep.is_OM and rep.is_COM and rep.is_AMP

    def test_two_opposite_topes_fail_se(self):
        rep = axiom_report(system("+", "-"))
        assert rep.Sym and not rep.SE and not rep.is_OM

    def test_generated_uniform_om(self):
        from omcube.corpus import gen_uniform_om

        sys_, _ = gen_uniform_om(3, 2, seed=5)
        rep = axiom_report(sys_)
        assert rep.is_OM and rep.simple
        assert not rep.is_AMP  # 13 covectors, 6 topes: not ideal-closed

    def test_fs_implies_c(self):
        # random subsystems: whenever SE and FS hold, C holds too
        rng = random.Random(9)
        hits = 0
        for _ in range(300):
            vecs = {random_vector(rng, 3) for _ in range(rng.randint(1, 9))}
            rep = axiom_report(SignSystem(3, vecs))
            if rep.SE and rep.FS:
                hits += 1
                assert rep.C
        assert hits > 3

    def test_om_iff_com_with_zero(self):
        rng = random.Random(10)
        for _ in range(200):
            vecs = {random_vector(rng, 3) for _ in range(rng.randint(1, 10))}
            rep = axiom_report(SignSystem(3, vecs))  # internal cross-check asserts
            assert rep.is_OM == (rep.is_COM and SignVector.zero(3) in vecs)

    def test_ic_matches_upset(self):
        rng = random.Random(12)
        for _ in range(100):
            vecs = {random_vector(rng, 4) for _ in range(rng.randint(1, 8))}
            s = SignSystem(4, vecs)
            assert axiom_report(s).IC == (upset_closure(s) == s)


class TestTopesAndCocircuits:
    def test_full_system_q2(self):
        topes, cocircuits = topes_and_cocircuits(full_system(2))
        assert topes.vertices == {0, 1, 2, 3}
        assert {str(c) for c in cocircuits} == {"+0", "-0", "0+", "0-"}

    def test_rank2_uniform_on_3(self):
        from omcube.corpus import gen_uniform_om

        sys_, fam = gen_uniform_om(3, 2, seed=5)
        topes, cocircuits = topes_and_cocircuits(sys_)
        # 3 generic central lines cut the plane into 2*3 = 6 regions / 6 rays
        assert len(topes) == 6 and len(cocircuits) == 6
        assert topes == fam

    def test_rank3_uniform_on_4_has_14_topes(self):
        from omcube.corpus import gen_uniform_om

        sys_, _ = gen_uniform_om(4, 3, seed=1)
        topes, _ = topes_and_cocircuits(sys_)
        # 4 generic central planes cut R^3 into 2*(1+3+3) = 14 regions
        assert len(topes) == 14

    def test_non_simple_rejected_with_element(self):
        with pytest.raises(PreconditionError, match="element"):
            topes_and_cocircuits(system("++", "--"))


class TestRank:
    def test_q2(self):
        assert rank_of(full_system(2)) == 2

    def test_single_element(self):
        assert rank_of(system("+", "-", "0")) == 1

    def test_rank2_uniform(self):
        from omcube.corpus import gen_uniform_om

        sys_, _ = gen_uniform_om(3, 2, seed=5)
        assert rank_of(sys_) == 2

    def test_non_om_rejected(self):
        with pytest.raises(PreconditionError):
            rank_of(system("+", "-"))


class TestUniformityByCocircuits:
    def test_full_system(self):
        assert is_uom_by_cocircuits(full_system(2))

    def test_generated_uniform(self):
        from omcube.corpus import gen_uniform_om

        sys_, _ = gen_uniform_om(4, 3, seed=1)
        assert is_uom_by_cocircuits(sys_)

    def test_concurrent_planes_not_uniform(self):
        from omcube.corpus import Arrangement, covectors_of_arrangement

        arr = Arrangement(3, ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (0, 0, 1)))
        sys_ = covectors_of_arrangement(arr)
        assert not is_uom_by_cocircuits(sys_)


class TestSimplify:
    def test_deletes_indistinguishable_pair(self):
        # elements 1 and 2 always carry equal signs; 3 is genuinely distinct
        s = system("++0", "--0", "++-", "--+", "+++", "---", "000", "00+", "00-")
        out, removed = simplify(s)
        assert removed == (2,)
        assert out.m == 2

    def test_simple_input_untouched(self):
        s = full_system(2)
        out, removed = simplify(s)
        assert out == s and removed == ()


class TestTextFormat:
    def test_roundtrip_with_comments(self):
        text = "# a comment\n+0-\n-0+  # trailing\n\n"
        s = SignSystem.from_text(text)
        assert len(s) == 2
        assert SignSystem.from_text(s.to_text()) == s

    def test_bad_character_position(self):
        with pytest.raises(ParseError) as exc:
            SignSystem.from_text("+0-\n+x-\n")
        assert exc.value.line == 2 and exc.value.column == 2

    def test_ragged_rows(self):
        with pytest.raises(ParseError):
            SignSystem.from_text("+0-\n+-\n")

    def test_empty(self):
        with pytest.raises(ParseError):
            SignSystem.from_text("# nothing\n")
